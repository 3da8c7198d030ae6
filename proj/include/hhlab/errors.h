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

#ifndef HHLAB_ERRORS_H
#define HHLAB_ERRORS_H

#include <stdexcept>
#include <string>

namespace hhlab {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input that violates a documented precondition. The CLI maps these to exit code 2.
struct InvalidArgument : Error {
    using Error::Error;
};

struct InvalidCircuit : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct InvalidGate : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct InvalidProblem : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct ParseError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct ZeroProbabilityBranch : Error {
    using Error::Error;
};
struct SingularProblem : Error {
    using Error::Error;
};
struct EmptyEstimate : Error {
    using Error::Error;
};
struct AliasingDetected : Error {
    using Error::Error;
};
struct EmptyPlan : Error {
    using Error::Error;
};
struct DegenerateRun : Error {
    using Error::Error;
};
struct InsufficientShots : Error {
    using Error::Error;
};
struct CapacityError : Error {
    using Error::Error;
};

}  // namespace hhlab

#endif
