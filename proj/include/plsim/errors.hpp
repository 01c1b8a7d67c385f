// Copyright 2026 The plsim Authors
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

#ifndef PLSIM_ERRORS_HPP
#define PLSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plsim {

/// Bad parameters, malformed input files, mismatched dimensions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A non-finite amplitude showed up during integration; usually dt is too large.
class NumericalInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense path refused because the problem exceeds the configured size cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace plsim

#endif  // PLSIM_ERRORS_HPP
