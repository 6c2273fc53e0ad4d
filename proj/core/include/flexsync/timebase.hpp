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

#ifndef FLEXSYNC_TIMEBASE_HPP_
#define FLEXSYNC_TIMEBASE_HPP_

#include <cstdint>
#include <vector>

#include "flexsync/rational.hpp"

namespace flexsync {

using Cycle = std::int64_t;

// A clock with constant period `ratio` (in reference periods) whose edge 0
// occurs at `phase`.
struct ClockSpec {
  Rational ratio{1};
  Rational phase{0};

  friend bool operator==(const ClockSpec&, const ClockSpec&) = default;
};

// Register timing, each expressed as a fraction of a clock period. Setup and
// hold times scale with the receiving clock, propagation delays with the
// sending clock. `delta` bounds how far any clock period may deviate from
// the reference period.
struct TimingParams {
  Rational t_s{1, 10};
  Rational t_h{1, 10};
  Rational t_pmin{1, 20};
  Rational t_pmax{7, 20};
  Rational delta{1, 200};

  // Throws DomainError unless all parameters are non-negative,
  // t_pmin < t_pmax, t_s + t_h + t_pmax < 1 and 0 <= delta < 1. delta == 0
  // describes ideal clocks.
  void validate() const;

  friend bool operator==(const TimingParams&, const TimingParams&) = default;
};

// Whether the clock period lies within [1 - delta, 1 + delta].
bool jitter_bounded(const ClockSpec& clock, const Rational& delta);

// Number of cycles over which two jitter-bounded clocks differ by at most one
// tick: (1 - delta) / (2 delta). Throws DomainError unless 0 < delta < 1.
Rational drift_horizon(const Rational& delta);

// Real time of rising edge `c`: phase + c * ratio.
TimeRat edge_time(const ClockSpec& clock, Cycle c);

// pi / (pi + 1) <= min(ratio_i, ratio_j) / max(ratio_i, ratio_j).
bool drift_bound_holds(const ClockSpec& clock_i, const ClockSpec& clock_j,
                       const Rational& pi);

// Whether receiver edge `xi` is the first one influenced by the bit the
// sender launches at its edge `c`: e_r(xi) + t_h falls in the left-open,
// right-closed span of one receiver period that starts at e_s(c) + t_pmin.
bool is_affected_cycle(Cycle xi, Cycle c, const ClockSpec& sender,
                       const ClockSpec& receiver, const TimingParams& tp);

// The unique receiver edge affected by sender edge `c` (the "mark").
// Throws DomainError if that edge would precede receiver edge 0.
Cycle first_affected_cycle(Cycle c, const ClockSpec& sender,
                           const ClockSpec& receiver, const TimingParams& tp);

// Receiver cycles that may be affected by sender cycle c + alpha when `xi` is
// affected by c: {xi + alpha - 1, xi + alpha, xi + alpha + 1}, clipped at
// zero, ascending. Throws DomainError unless 0 < alpha <= pi.
std::vector<Cycle> mark_candidates(Cycle xi, Cycle alpha, const Rational& pi);

// 1 if receiver edge `xi` (minus setup) comes no later than the end of the
// sender's propagation window after edge `c`, i.e. sampling at xi may hit an
// undefined value; 0 otherwise.
int metastability_factor(Cycle xi, Cycle c, const ClockSpec& sender,
                         const ClockSpec& receiver, const TimingParams& tp);

}  // namespace flexsync

#endif  // FLEXSYNC_TIMEBASE_HPP_
