// Copyright 2026 The flexsync Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flexsync/rational.hpp"

#include <charconv>
#include <limits>

#include "flexsync/errors.hpp"

namespace flexsync {
namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ConfigError("malformed number: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ConfigError("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_integer(text.substr(0, slash), whole);
    const std::int64_t den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) {
      throw ConfigError("zero denominator: '" + std::string(whole) + "'");
    }
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) || frac_part.size() > 17) {
      throw ConfigError("malformed number: '" + std::string(whole) + "'");
    }
    for (char ch : frac_part) {
      if (ch < '0' || ch > '9') {
        throw ConfigError("malformed number: '" + std::string(whole) + "'");
      }
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const std::int64_t ip =
        int_part.empty() ? 0 : parse_integer(int_part, whole);
    if (ip < 0) throw ConfigError("malformed number: '" + std::string(whole) + "'");
    const std::int64_t fp =
        frac_part.empty() ? 0 : parse_integer(frac_part, whole);
    if (ip > (std::numeric_limits<std::int64_t>::max() - fp) / scale) {
      throw ConfigError("number out of range: '" + std::string(whole) + "'");
    }
    Rational value(ip * scale + fp, scale);
    return negative ? -value : value;
  }

  return Rational(parse_integer(text, whole));
}

std::string to_string(const Rational& value) {
  return std::to_string(value.numerator()) + "/" +
         std::to_string(value.denominator());
}

std::int64_t floor_int(const Rational& value) {
  const std::int64_t n = value.numerator();
  const std::int64_t d = value.denominator();  // always positive
  std::int64_t q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

std::int64_t ceil_int(const Rational& value) { return -floor_int(-value); }

}  // namespace flexsync
