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

#include "flexsync/timebase.hpp"

#include <gtest/gtest.h>

#include <random>

#include "flexsync/errors.hpp"

namespace flexsync {
namespace {

ClockSpec clk(Rational ratio, Rational phase = 0) { return {ratio, phase}; }

TEST(DriftHorizon, KnownValues) {
  EXPECT_EQ(drift_horizon(Rational(1, 15)), Rational(7));
  EXPECT_EQ(drift_horizon(parse_rational("0.005")), Rational(199, 2));
  // pi >= 80 exactly when delta <= 1/161
  EXPECT_EQ(drift_horizon(Rational(1, 161)), Rational(80));
  EXPECT_LT(drift_horizon(Rational(1, 160)), Rational(80));
}

TEST(DriftHorizon, RejectsOutOfRange) {
  EXPECT_THROW(drift_horizon(Rational(0)), DomainError);
  EXPECT_THROW(drift_horizon(Rational(1)), DomainError);
  EXPECT_THROW(drift_horizon(Rational(-1, 10)), DomainError);
}

TEST(TimingParams, Validate) {
  TimingParams tp;
  EXPECT_NO_THROW(tp.validate());
  tp.delta = 0;
  EXPECT_NO_THROW(tp.validate());
  tp.delta = 1;
  EXPECT_THROW(tp.validate(), DomainError);
  tp = {};
  tp.t_pmin = tp.t_pmax;
  EXPECT_THROW(tp.validate(), DomainError);
  tp = {};
  tp.t_pmax = Rational(4, 5);
  EXPECT_THROW(tp.validate(), DomainError);
  tp = {};
  tp.t_s = -1;
  EXPECT_THROW(tp.validate(), DomainError);
}

TEST(EdgeTime, Affine) {
  EXPECT_EQ(edge_time(clk(1, Rational(1, 4)), 3), Rational(13, 4));
  EXPECT_EQ(edge_time(clk(Rational(201, 200)), 200), Rational(201));
  EXPECT_EQ(edge_time(clk(1, Rational(1, 2)), 0), Rational(1, 2));
}

TEST(JitterBound, Inclusive) {
  const Rational d(1, 200);
  EXPECT_TRUE(jitter_bounded(clk(1 - d), d));
  EXPECT_TRUE(jitter_bounded(clk(1 + d), d));
  EXPECT_FALSE(jitter_bounded(clk(1 + 2 * d), d));
}

TEST(DriftBound, Boundary) {
  const Rational pi = drift_horizon(Rational(1, 200));
  // (1 - d) / (1 + d) is exactly pi / (pi + 1)
  EXPECT_TRUE(drift_bound_holds(clk(Rational(199, 200)),
                                clk(Rational(201, 200)), pi));
  EXPECT_FALSE(drift_bound_holds(clk(Rational(1, 2)), clk(1), pi));
  EXPECT_TRUE(drift_bound_holds(clk(1), clk(1), pi));
}

TEST(AffectedCycle, AlignedClocks) {
  const TimingParams tp;
  const ClockSpec s = clk(1), r = clk(1);
  // sender edge 3 is visible from 3.05; receiver sampling points at x.1
  EXPECT_TRUE(is_affected_cycle(3, 3, s, r, tp));
  EXPECT_FALSE(is_affected_cycle(2, 3, s, r, tp));
  EXPECT_FALSE(is_affected_cycle(4, 3, s, r, tp));
  EXPECT_EQ(first_affected_cycle(3, s, r, tp), 3);
}

TEST(AffectedCycle, HalfPhase) {
  EXPECT_EQ(first_affected_cycle(3, clk(1), clk(1, Rational(1, 2)), {}), 3);
  EXPECT_EQ(first_affected_cycle(3, clk(1, Rational(9, 10)), clk(1), {}), 4);
}

TEST(AffectedCycle, NegativeThrows) {
  EXPECT_THROW(first_affected_cycle(0, clk(1), clk(1, 5), {}), DomainError);
}

// Exactly one receiver cycle is affected, and it is the closed form.
TEST(AffectedCycle, UniqueRandomized) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-5, 5), ph(0, 999);
  const TimingParams tp;
  for (int trial = 0; trial < 500; ++trial) {
    const ClockSpec s = clk(1 + Rational(num(rng), 1000), Rational(ph(rng), 1000));
    const ClockSpec r = clk(1 + Rational(num(rng), 1000), Rational(ph(rng), 1000));
    const Cycle c = 1 + trial % 50;
    const Cycle xi = first_affected_cycle(c, s, r, tp);
    int hits = 0;
    for (Cycle x = 0; x < c + 10; ++x) hits += is_affected_cycle(x, c, s, r, tp);
    EXPECT_EQ(hits, 1);
    EXPECT_TRUE(is_affected_cycle(xi, c, s, r, tp));
  }
}

TEST(MarkCandidates, Window) {
  const Rational pi(199, 2);
  EXPECT_EQ(mark_candidates(10, 8, pi), (std::vector<Cycle>{17, 18, 19}));
  EXPECT_EQ(mark_candidates(0, 1, pi), (std::vector<Cycle>{0, 1, 2}));
  EXPECT_EQ(mark_candidates(5, 80, Rational(80)),
            (std::vector<Cycle>{84, 85, 86}));
  EXPECT_THROW(mark_candidates(0, 0, pi), DomainError);
  EXPECT_THROW(mark_candidates(0, 8, Rational(7)), DomainError);
}

TEST(Metastability, Factor) {
  const TimingParams tp;
  EXPECT_EQ(metastability_factor(3, 3, clk(1), clk(1), tp), 1);
  EXPECT_EQ(metastability_factor(3, 3, clk(1), clk(1, Rational(1, 2)), tp), 0);
  EXPECT_EQ(metastability_factor(4, 3, clk(1), clk(1), tp), 0);
  EXPECT_EQ(metastability_factor(3, 3, clk(1), clk(1, Rational(3, 10)), tp), 1);
}

// A late receiver edge (at or after the affected one) can only be
// metastable if it is the affected one. Earlier edges trivially satisfy the
// inequality, so the factor is only meaningful at the mark itself.
TEST(Metastability, OnlyAtMark) {
  const TimingParams tp;
  const Rational d(1, 200);
  int metastable_marks = 0;
  for (const Rational& rs : {1 - d, Rational(1), 1 + d}) {
    for (const Rational& rr : {1 - d, Rational(1), 1 + d}) {
      for (int p = 0; p < 64; ++p) {
        const ClockSpec s = clk(rs), r = clk(rr, Rational(p, 64) * rr);
        for (Cycle c = 1; c < 120; c += 7) {
          const Cycle xi = first_affected_cycle(c, s, r, tp);
          metastable_marks += metastability_factor(xi, c, s, r, tp);
          for (Cycle x = xi + 1; x < xi + 4; ++x) {
            EXPECT_EQ(metastability_factor(x, c, s, r, tp), 0);
          }
        }
      }
    }
  }
  EXPECT_GT(metastable_marks, 0);
  EXPECT_EQ(metastability_factor(0, 3, clk(1), clk(1), tp), 1);
  EXPECT_FALSE(is_affected_cycle(0, 3, clk(1), clk(1), tp));
}

}  // namespace
}  // namespace flexsync
