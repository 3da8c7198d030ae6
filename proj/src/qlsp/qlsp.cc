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

#include "hhlab/qlsp/qlsp.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "hhlab/errors.h"

namespace hhlab::qlsp {

Qlsp::Qlsp(Matrix a, Vector b, Spectrum spectrum, double scale)
    : a_(std::move(a)), b_(std::move(b)), spectrum_(std::move(spectrum)), scale_(scale) {
}

Qlsp Qlsp::from_hermitian(const Matrix &a, const Vector &b, double prior_scale) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw InvalidProblem("matrix must be square and nonempty");
    }
    if (!std::has_single_bit(static_cast<size_t>(a.rows()))) {
        throw InvalidProblem("dimension " + std::to_string(a.rows()) + " is not a power of two");
    }
    if (b.size() != a.rows()) {
        throw InvalidProblem("vector b has the wrong length");
    }
    if (!a.allFinite() || !b.allFinite()) {
        throw InvalidProblem("problem has non-finite entries");
    }
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw InvalidProblem("matrix is not Hermitian within 1e-10");
    }
    double bn = b.norm();
    if (bn == 0) {
        throw InvalidProblem("vector b is zero");
    }
    if (!(prior_scale > 0)) {
        throw InvalidProblem("scale must be positive");
    }
    Matrix am = (a + a.adjoint()) / 2.0;
    Vector bu = b / bn;
    Spectrum s = eigendecompose(am, bu);
    double top = 0;
    for (const auto &p : s.pairs) {
        top = std::max(top, std::abs(p.eigenvalue));
    }
    double scale = prior_scale;
    if (top > 1) {
        am /= top;
        scale /= top;
        for (auto &p : s.pairs) {
            p.eigenvalue /= top;
        }
    }
    return Qlsp(std::move(am), std::move(bu), std::move(s), scale);
}

size_t Qlsp::num_qubits() const {
    return static_cast<size_t>(std::countr_zero(dimension()));
}

double Qlsp::max_abs_eigenvalue() const {
    double m = 0;
    for (const auto &p : spectrum_.pairs) {
        m = std::max(m, std::abs(p.eigenvalue));
    }
    return m;
}

double Qlsp::min_abs_eigenvalue() const {
    double m = INFINITY;
    for (const auto &p : spectrum_.pairs) {
        m = std::min(m, std::abs(p.eigenvalue));
    }
    return m;
}

bool Qlsp::has_negative_eigenvalues() const {
    return std::any_of(spectrum_.pairs.begin(), spectrum_.pairs.end(), [](const EigenPair &p) {
        return p.eigenvalue < 0;
    });
}

Spectrum eigendecompose(const Matrix &a, const Vector &b) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success) {
        throw InvalidProblem("eigendecomposition failed");
    }
    Spectrum s;
    double lo = INFINITY, hi = 0;
    for (Eigen::Index j = 0; j < a.rows(); j++) {
        double lam = solver.eigenvalues()(j);
        Vector u = solver.eigenvectors().col(j);
        lo = std::min(lo, std::abs(lam));
        hi = std::max(hi, std::abs(lam));
        s.pairs.push_back({lam, u, u.dot(b)});
    }
    if (lo < 1e-12) {
        throw SingularProblem("matrix is numerically singular (min |lambda| = " + std::to_string(lo) + ")");
    }
    s.condition_number = hi / lo;
    return s;
}

ClassicalSolution classical_solution(const Qlsp &problem) {
    Vector x = Vector::Zero(static_cast<Eigen::Index>(problem.dimension()));
    for (const auto &p : problem.spectrum().pairs) {
        x += (p.projection / p.eigenvalue) * p.eigenvector;
    }
    double n = x.norm();
    if (!(n > 0)) {
        throw SingularProblem("solution vector vanished");
    }
    return {x / n, n};
}

Qlsp hermitian_dilation(const Matrix &a, const Vector &b) {
    if (a.rows() != a.cols() || b.size() != a.rows()) {
        throw InvalidProblem("dilation needs a square matrix and a matching vector");
    }
    if (b.norm() == 0) {
        throw InvalidProblem("vector b is zero");
    }
    auto n = a.rows();
    Matrix d = Matrix::Zero(2 * n, 2 * n);
    d.topRightCorner(n, n) = a;
    d.bottomLeftCorner(n, n) = a.adjoint();
    Vector b2 = Vector::Zero(2 * n);
    b2.head(n) = b;
    return Qlsp::from_hermitian(d, b2);
}

Matrix evolution_unitary(const Qlsp &problem, double t0, uint64_t power, uint64_t big_t) {
    if (big_t == 0) {
        throw InvalidArgument("T must be positive");
    }
    auto n = static_cast<Eigen::Index>(problem.dimension());
    Matrix u = Matrix::Zero(n, n);
    double scale = t0 * static_cast<double>(power) / static_cast<double>(big_t);
    for (const auto &p : problem.spectrum().pairs) {
        u += std::polar(1.0, p.eigenvalue * scale) * (p.eigenvector * p.eigenvector.adjoint());
    }
    return u;
}

Qlsp generate_n2(double lambda) {
    if (!(lambda > 0 && lambda < 0.5)) {
        throw InvalidArgument("lambda must lie in (0, 0.5), got " + std::to_string(lambda));
    }
    Matrix a(2, 2);
    a << 0.5, lambda - 0.5, lambda - 0.5, 0.5;
    Vector b(2);
    b << 1, 0;
    return Qlsp::from_hermitian(a, b);
}

Qlsp generate_n4(const std::array<double, 4> &eigenvalues, std::pair<size_t, size_t> pair, uint64_t seed) {
    if (pair.first == pair.second || pair.first >= 4 || pair.second >= 4) {
        throw InvalidArgument("eigenvector pair must be two distinct indices below 4");
    }
    for (size_t i = 0; i < 4; i++) {
        if (eigenvalues[i] == 0 || std::abs(eigenvalues[i]) > 1 || !std::isfinite(eigenvalues[i])) {
            throw InvalidArgument("eigenvalues must be nonzero with magnitude at most 1");
        }
        for (size_t j = 0; j < i; j++) {
            if (eigenvalues[i] == eigenvalues[j]) {
                throw InvalidArgument("eigenvalues must be distinct");
            }
        }
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd g(4, 4);
    for (Eigen::Index c = 0; c < 4; c++) {
        for (Eigen::Index r = 0; r < 4; r++) {
            g(r, c) = normal(rng);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::VectorXd lam(4);
    lam << eigenvalues[0], eigenvalues[1], eigenvalues[2], eigenvalues[3];
    Eigen::MatrixXd a = q * lam.asDiagonal() * q.transpose();
    Eigen::VectorXd b = (q.col(static_cast<Eigen::Index>(pair.first)) + q.col(static_cast<Eigen::Index>(pair.second))) /
                        std::sqrt(2.0);
    return Qlsp::from_hermitian(a.cast<Complex>(), b.cast<Complex>());
}

Matrix state_preparation_matrix(const Vector &v) {
    auto n = v.size();
    if (n == 0 || std::abs(v.norm() - 1) > 1e-10) {
        throw InvalidArgument("state preparation needs a unit vector");
    }
    Matrix m = Matrix::Identity(n, n);
    m.col(0) = v;
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    // q.col(0) equals v up to a unit phase; make it exact.
    Complex r = q.col(0).dot(v);
    q.col(0) *= r / std::abs(r);
    return q;
}

}  // namespace hhlab::qlsp
