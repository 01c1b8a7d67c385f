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

#ifndef PLSIM_FORMAT_HPP
#define PLSIM_FORMAT_HPP

#include <complex>
#include <string>
#include <string_view>

namespace plsim {

/// Shortest representation that parses back to the same double; "nan"/"inf"/"-inf" otherwise.
std::string format_double(double x);

/// "re+imj" or "re-imj", each part in shortest round-trip form.
std::string format_complex(std::complex<double> z);

/// Accepts "re+imj", "re-imj", "imj" and plain reals. Throws InvalidInput.
std::complex<double> parse_complex(std::string_view token);

double parse_double(std::string_view token);

}  // namespace plsim

#endif  // PLSIM_FORMAT_HPP
