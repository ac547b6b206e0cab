// Copyright 2026 The qfgr Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfgr {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that do not fit together (non-square matrices, N mismatch).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Out-of-range physical or numerical parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input violating a documented precondition (e.g. a generator that is not
// trace preserving handed to the CP check).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Non-finite values appeared while stepping. `last_valid_index` is the last
// snapshot that was still finite.
class PropagationError : public Error {
 public:
  PropagationError(const std::string& what, std::size_t last_valid_index)
      : Error(what), last_valid_index_(last_valid_index) {}

  std::size_t last_valid_index() const noexcept { return last_valid_index_; }

 private:
  std::size_t last_valid_index_;
};

class NoSteadyStateError : public Error {
 public:
  using Error::Error;
};

// Semiclassical integration produced negative occupations; the grid is too
// coarse for the rates.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfgr
