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

#include "plsim/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "plsim/errors.hpp"

namespace plsim {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw InvalidInput("cannot format double");
  return std::string(buf.data(), ptr);
}

std::string format_complex(std::complex<double> z) {
  std::string out = format_double(z.real());
  const double im = z.imag();
  if (std::signbit(im) && !std::isnan(im)) {
    out += format_double(im);
  } else {
    out += '+';
    out += format_double(im);
  }
  out += 'j';
  return out;
}

double parse_double(std::string_view token) {
  while (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token == "nan" || token == "-nan") return std::nan("");
  if (token == "inf") return HUGE_VAL;
  if (token == "-inf") return -HUGE_VAL;
  double value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    throw InvalidInput("cannot parse number '" + std::string(token) + "'");
  return value;
}

std::complex<double> parse_complex(std::string_view token) {
  if (token.empty()) throw InvalidInput("empty complex token");
  if (token.back() != 'j' && token.back() != 'i') return {parse_double(token), 0.0};
  token.remove_suffix(1);
  // Split at the last sign that is not leading and does not belong to an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = token.size(); k-- > 1;) {
    const char ch = token[k];
    if ((ch == '+' || ch == '-') && token[k - 1] != 'e' && token[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_double(token)};
  return {parse_double(token.substr(0, split)), parse_double(token.substr(split))};
}

}  // namespace plsim
