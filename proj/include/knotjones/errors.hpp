// Copyright 2026 The knotjones developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace knotjones {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad inputs (malformed files, out-of-range arguments). CLI exit code 2.
struct ValidationError : Error {
  using Error::Error;
};

// Failures of the numerics themselves (singular matrices, fits that do
// not converge). CLI exit code 3.
struct NumericError : Error {
  using Error::Error;
};

struct MalformedRecord : ValidationError {
  using ValidationError::ValidationError;
};
struct BadEdgeMultiplicity : ValidationError {
  using ValidationError::ValidationError;
};
struct MultiComponent : ValidationError {
  using ValidationError::ValidationError;
};
struct NonPlanarCode : ValidationError {
  using ValidationError::ValidationError;
};
struct EdgesNotCoFacial : ValidationError {
  using ValidationError::ValidationError;
};
struct TooManyCrossings : ValidationError {
  using ValidationError::ValidationError;
};
struct TooLarge : ValidationError {
  using ValidationError::ValidationError;
};
struct ZeroT : ValidationError {
  using ValidationError::ValidationError;
};
struct NotDiagonal : ValidationError {
  using ValidationError::ValidationError;
};
struct EvenFactor : ValidationError {
  using ValidationError::ValidationError;
};
struct MissingPart : ValidationError {
  using ValidationError::ValidationError;
};

struct SingularPrefactor : NumericError {
  using NumericError::NumericError;
};
struct SingularConfusion : NumericError {
  using NumericError::NumericError;
};
struct NonConvergent : NumericError {
  using NumericError::NumericError;
};

}  // namespace knotjones
