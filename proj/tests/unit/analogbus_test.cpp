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

#include "flexsync/analogbus.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "flexsync/errors.hpp"

namespace flexsync {
namespace {

using V = SignalValue;

Rational r(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

Signal step_signal(V before, V after, const TimeRat& at, const TimeRat& from,
                   const TimeRat& to) {
  Signal s = Signal::constant(before, from, at);
  s.extend(after, to);
  return s;
}

TEST(Signal, HalfOpenSpans) {
  const Signal s = step_signal(V::One, V::Zero, 2, 0, 4);
  EXPECT_EQ(s.at(0), V::Omega);
  EXPECT_EQ(s.at(r(1, 100)), V::One);
  EXPECT_EQ(s.at(2), V::One);
  EXPECT_EQ(s.at(r(201, 100)), V::Zero);
  EXPECT_EQ(s.at(4), V::Zero);
  EXPECT_EQ(s.at(r(401, 100)), V::Omega);
}

TEST(Signal, ExtendMergesAndChecksOrder) {
  Signal s = Signal::constant(V::One, 0, 1);
  s.extend(V::One, 2);
  EXPECT_EQ(s.breakpoints().size(), 1u);
  EXPECT_THROW(s.extend(V::Zero, 2), DomainError);
  EXPECT_THROW(Signal({{1, V::One}, {1, V::Zero}}, 3), DomainError);
}

TEST(StableDefined, Cases) {
  const Signal s = step_signal(V::One, V::Zero, 2, 0, 4);
  EXPECT_TRUE(is_stable_defined(r(1, 2), 2, s));
  EXPECT_FALSE(is_stable_defined(1, 3, s));
  EXPECT_FALSE(is_stable_defined(0, 1, s));  // s(0) is Omega
  EXPECT_TRUE(is_stable_defined(3, 3, s));
  EXPECT_FALSE(is_stable_defined(3, 5, s));
  EXPECT_THROW(is_stable_defined(2, 1, s), DomainError);

  Signal w = Signal::constant(V::One, 0, 1);
  w.extend(V::Omega, 2);
  w.extend(V::One, 3);
  EXPECT_FALSE(is_stable_defined(r(1, 2), r(5, 2), w));
  EXPECT_FALSE(is_stable_defined(r(3, 2), r(3, 2), w));
}

TEST(Signal, Dump) {
  Signal s = Signal::constant(V::One, 0, r(1, 2));
  s.extend(V::Omega, 1);
  std::ostringstream out;
  dump_signal(s, out);
  EXPECT_EQ(out.str(), "0/1 1\n1/2 X\n1/1 X\n");
}

TEST(Oracle, ConsumesAndExhausts) {
  ResolutionOracle o({true, false});
  EXPECT_TRUE(o.next());
  EXPECT_FALSE(o.next());
  EXPECT_EQ(o.consumed(), 2u);
  EXPECT_THROW(o.next(), ConfigError);
}

TEST(SignalToBit, DefinedValuesIgnoreOracle) {
  const Signal s = step_signal(V::One, V::Zero, 2, 0, 4);
  ResolutionOracle o;
  EXPECT_TRUE(signal_to_bit(s, 1, o));
  EXPECT_FALSE(signal_to_bit(s, 3, o));
  EXPECT_THROW(signal_to_bit(s, 5, o), ConfigError);
  ResolutionOracle one({true});
  EXPECT_TRUE(signal_to_bit(s, 5, one));
  EXPECT_EQ(one.consumed(), 1u);
}

TEST(SafeSamplingWindow, DefaultTiming) {
  const TimeInterval w = safe_sampling_window(0, 7, {1, 0}, {});
  EXPECT_EQ(w.lo, r(35, 100));
  EXPECT_EQ(w.hi, r(805, 100));
  EXPECT_EQ(w.length(), r(77, 10));
  EXPECT_FALSE(w.contains(r(35, 100)));
  EXPECT_TRUE(w.contains(r(805, 100)));
  EXPECT_THROW(safe_sampling_window(0, 0, {1, 0}, {}), DomainError);
}

TEST(BitsToSignal, SingleBit) {
  const Signal s = bits_to_signal({true}, {1, 0}, {});
  ASSERT_EQ(s.breakpoints().size(), 1u);
  EXPECT_EQ(s.breakpoints()[0].start, r(1, 10));
  EXPECT_EQ(s.end(), r(11, 10));
  EXPECT_EQ(s.at(1), V::One);
  EXPECT_THROW(bits_to_signal({}, {1, 0}, {}), DomainError);
}

// Every bit is stable across the setup/hold window of the edge sampling it.
TEST(BitsToSignal, StableAroundSamplingEdges) {
  std::mt19937_64 rng(3);
  const TimingParams tp;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<bool> bits(1 + trial % 17);
    for (auto&& b : bits) b = (rng() & 1) != 0;
    const ClockSpec clk{1 + r(static_cast<int>(rng() % 11) - 5, 1000),
                        r(rng() % 100, 100)};
    const Signal s = bits_to_signal(bits, clk, tp);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      const TimeRat e = edge_time(clk, static_cast<Cycle>(i) + 1);
      ASSERT_TRUE(is_stable_defined(e - tp.t_s * clk.ratio,
                                    e + tp.t_h * clk.ratio, s));
      EXPECT_EQ(s.at(e), from_bit(bits[i]));
    }
  }
}

class RegisterTest : public ::testing::Test {
 protected:
  AnalogRegConfig config() const {
    AnalogRegConfig cfg;
    cfg.clock = {1, 0};
    cfg.ce = Signal::constant(V::One, -1, 100);
    // input falls to 0 at 1/2 and rises inside cycle 3's setup window
    cfg.input = Signal::constant(V::One, -1, r(1, 2));
    cfg.input.extend(V::Zero, r(295, 100));
    cfg.input.extend(V::One, 100);
    return cfg;
  }
};

TEST_F(RegisterTest, Branches) {
  ResolutionOracle oracle({false});
  AnalogRegister reg(config(), oracle);
  EXPECT_EQ(reg.branch(0), RegisterBranch::Initial);
  EXPECT_EQ(reg.branch(1), RegisterBranch::Update);
  EXPECT_EQ(reg.branch(3), RegisterBranch::Metastable);
  EXPECT_EQ(reg.branch(4), RegisterBranch::Update);
  EXPECT_EQ(oracle.consumed(), 1u);
  EXPECT_EQ(reg.end_value(0), V::One);
  EXPECT_EQ(reg.end_value(1), V::Zero);
  EXPECT_EQ(reg.end_value(3), V::Zero);  // resolved old
  EXPECT_EQ(reg.end_value(4), V::One);
}

TEST_F(RegisterTest, UpdateShape) {
  ResolutionOracle oracle({false});
  AnalogRegister reg(config(), oracle);
  const Signal s = reg.cycle_signal(1);
  EXPECT_EQ(s.at(r(104, 100)), V::One);
  EXPECT_EQ(s.at(r(106, 100)), V::Omega);
  EXPECT_EQ(s.at(r(135, 100)), V::Omega);
  EXPECT_EQ(s.at(r(136, 100)), V::Zero);
  EXPECT_EQ(s.at(2), V::Zero);
}

TEST_F(RegisterTest, MetastableResolvesLate) {
  ResolutionOracle oracle({true});
  AnalogRegister reg(config(), oracle);
  const Signal s = reg.cycle_signal(3);
  EXPECT_EQ(s.at(r(305, 100)), V::Zero);
  EXPECT_EQ(s.at(r(390, 100)), V::Omega);
  EXPECT_EQ(s.at(r(391, 100)), V::One);
  EXPECT_EQ(reg.end_value(3), V::One);
}

TEST_F(RegisterTest, HoldKeepsValue) {
  AnalogRegConfig cfg = config();
  cfg.ce = Signal::constant(V::One, -1, r(3, 2));
  cfg.ce.extend(V::Zero, 100);
  ResolutionOracle oracle;
  AnalogRegister reg(cfg, oracle);
  EXPECT_EQ(reg.branch(2), RegisterBranch::Hold);
  EXPECT_EQ(reg.end_value(2), V::Zero);
  EXPECT_EQ(oracle.consumed(), 0u);
  EXPECT_TRUE(is_stable_defined(r(201, 100), 3, reg.cycle_signal(2)));
  // hold needs a stable input too, ce low does not mask the edge at 2.95
  EXPECT_THROW(reg.branch(3), ConfigError);
}

TEST_F(RegisterTest, InitialMustBeDefined) {
  AnalogRegConfig cfg = config();
  cfg.out0 = V::Omega;
  ResolutionOracle oracle;
  EXPECT_THROW(AnalogRegister(cfg, oracle), DomainError);
}

// Randomized: the cycle-end value is never Omega, an update carries the
// sampled input after t_pmax, and two runs with the same oracle agree.
TEST(Register, RandomizedInvariants) {
  std::mt19937_64 rng(11);
  const TimingParams tp;
  for (int trial = 0; trial < 100; ++trial) {
    AnalogRegConfig cfg;
    cfg.clock = {1 + r(static_cast<int>(rng() % 11) - 5, 1000),
                 r(rng() % 100, 100)};
    cfg.tp = tp;
    cfg.ce = Signal::constant(V::One, -1, 50);
    cfg.input = Signal(-1);
    for (int i = 0; i < 40; ++i) {
      cfg.input.extend((rng() & 1) ? V::One : V::Zero,
                       r(static_cast<std::int64_t>(i * 100 + rng() % 100), 100));
    }
    cfg.input.extend(V::One, 50);
    std::vector<bool> bits(64);
    for (auto&& b : bits) b = (rng() & 1) != 0;
    ResolutionOracle o1(bits), o2(bits);
    AnalogRegister a(cfg, o1), b(cfg, o2);
    for (Cycle c = 0; c < 30; ++c) {
      ASSERT_NE(a.end_value(c), V::Omega);
      if (a.branch(c) == RegisterBranch::Update) {
        const TimeRat e = edge_time(cfg.clock, c);
        const TimeRat lo = e + tp.t_pmax * cfg.clock.ratio;
        const TimeRat hi = edge_time(cfg.clock, c + 1);
        const Signal s = a.cycle_signal(c);
        ASSERT_TRUE(is_stable_defined(lo + r(1, 1000), hi, s));
        EXPECT_EQ(s.at(hi), cfg.input.at(e));
      }
    }
    EXPECT_EQ(a.output_signal(0, 29), b.output_signal(0, 29));
  }
}

}  // namespace
}  // namespace flexsync
