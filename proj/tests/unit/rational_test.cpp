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

#include <gtest/gtest.h>

#include "flexsync/errors.hpp"

namespace flexsync {
namespace {

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-1/200"), Rational(-1, 200));
  EXPECT_EQ(parse_rational("0.005"), Rational(1, 200));
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
}

TEST(ParseRational, Rejects) {
  for (const char* bad : {"", "x", "1/0", "1/", "/2", "1.2.3", "1e3", "--1"}) {
    EXPECT_THROW(parse_rational(bad), ConfigError) << bad;
  }
}

TEST(RationalFormat, RoundTrip) {
  EXPECT_EQ(to_string(Rational(1, 2)), "1/2");
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  for (const Rational& r : {Rational(-7, 3), Rational(199, 2), Rational(0)}) {
    EXPECT_EQ(parse_rational(to_string(r)), r);
  }
}

TEST(RationalFloor, NegativeValues) {
  EXPECT_EQ(floor_int(Rational(7, 2)), 3);
  EXPECT_EQ(floor_int(Rational(-7, 2)), -4);
  EXPECT_EQ(floor_int(Rational(-4)), -4);
  EXPECT_EQ(ceil_int(Rational(7, 2)), 4);
  EXPECT_EQ(ceil_int(Rational(-7, 2)), -3);
}

}  // namespace
}  // namespace flexsync
