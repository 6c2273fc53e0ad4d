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

#ifndef FLEXSYNC_RATIONAL_HPP_
#define FLEXSYNC_RATIONAL_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace flexsync {

// Exact rational arithmetic for all real-time quantities. Time is measured in
// multiples of the reference clock period, which is normalized to 1.
using Rational = boost::rational<std::int64_t>;
using TimeRat = Rational;

// Parses "3", "-1/200", "0.005" or "1.25" into an exact rational.
// Throws ConfigError on malformed input.
Rational parse_rational(std::string_view text);

// "num/den" (always with the slash, so dumps are uniform).
std::string to_string(const Rational& value);

// Largest integer not greater than value.
std::int64_t floor_int(const Rational& value);

// Smallest integer not less than value.
std::int64_t ceil_int(const Rational& value);

}  // namespace flexsync

#endif  // FLEXSYNC_RATIONAL_HPP_
