// Copyright 2026 The hhlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HHLAB_QLSP_QLSP_H
#define HHLAB_QLSP_QLSP_H

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "hhlab/types.h"

namespace hhlab::qlsp {

struct EigenPair {
    double eigenvalue;
    Vector eigenvector;
    /// beta = <u|b>.
    Complex projection;
};

/// Eigenpairs sorted by ascending eigenvalue, plus the condition number.
struct Spectrum {
    std::vector<EigenPair> pairs;
    double condition_number;
};

/// Hermitian linear system A x = b with a cached eigendecomposition.
///
/// The stored matrix is the input divided by max|lambda| whenever that exceeds
/// one; scale() reports the factor that was applied.
class Qlsp {
   public:
    /// Throws InvalidProblem (shape, Hermiticity, zero b) or SingularProblem.
    /// b is normalized. prior_scale multiplies into scale() for matrices that
    /// were already rescaled elsewhere.
    static Qlsp from_hermitian(const Matrix &a, const Vector &b, double prior_scale = 1.0);

    const Matrix &matrix() const {
        return a_;
    }
    const Vector &b() const {
        return b_;
    }
    size_t dimension() const {
        return static_cast<size_t>(a_.rows());
    }
    size_t num_qubits() const;
    const Spectrum &spectrum() const {
        return spectrum_;
    }
    double condition_number() const {
        return spectrum_.condition_number;
    }
    double scale() const {
        return scale_;
    }
    double max_abs_eigenvalue() const;
    double min_abs_eigenvalue() const;
    bool has_negative_eigenvalues() const;

   private:
    Qlsp(Matrix a, Vector b, Spectrum spectrum, double scale);

    Matrix a_;
    Vector b_;
    Spectrum spectrum_;
    double scale_;
};

/// Throws SingularProblem if min|lambda| < 1e-12.
Spectrum eigendecompose(const Matrix &a, const Vector &b);

struct ClassicalSolution {
    Vector state;
    /// ||A^-1 b||.
    double raw_norm;
};
ClassicalSolution classical_solution(const Qlsp &problem);

/// [[0, A], [A^dag, 0]] with b padded by zeros; the result is scaled to unit
/// spectral norm by Qlsp::from_hermitian.
Qlsp hermitian_dilation(const Matrix &a, const Vector &b);

/// exp(i A t0 power / big_t) from the cached eigendecomposition.
Matrix evolution_unitary(const Qlsp &problem, double t0, uint64_t power, uint64_t big_t);

/// A = [[0.5, lambda - 0.5], [lambda - 0.5, 0.5]], b = (1, 0).
Qlsp generate_n2(double lambda);

/// Random real orthonormal eigenbasis from the seed; b is the equal
/// superposition of the two selected eigenvectors.
Qlsp generate_n4(const std::array<double, 4> &eigenvalues, std::pair<size_t, size_t> pair, uint64_t seed);

/// Unitary whose first column is the given unit vector.
Matrix state_preparation_matrix(const Vector &v);

}  // namespace hhlab::qlsp

#endif
