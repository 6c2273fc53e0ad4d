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

#include <algorithm>

#include "flexsync/errors.hpp"

namespace flexsync {

void TimingParams::validate() const {
  if (t_s < 0 || t_h < 0 || t_pmin < 0 || t_pmax < 0) {
    throw DomainError("timing parameters must be non-negative");
  }
  if (!(t_pmin < t_pmax)) throw DomainError("t_pmin must be below t_pmax");
  if (!(t_s + t_h + t_pmax < 1)) {
    throw DomainError("t_s + t_h + t_pmax must be below one period");
  }
  if (delta < 0 || !(delta < 1)) throw DomainError("delta must lie in [0, 1)");
}

bool jitter_bounded(const ClockSpec& clock, const Rational& delta) {
  return 1 - delta <= clock.ratio && clock.ratio <= 1 + delta;
}

Rational drift_horizon(const Rational& delta) {
  if (!(delta > 0) || !(delta < 1)) {
    throw DomainError("drift horizon needs 0 < delta < 1, got " +
                      to_string(delta));
  }
  return (1 - delta) / (2 * delta);
}

TimeRat edge_time(const ClockSpec& clock, Cycle c) {
  return clock.phase + clock.ratio * c;
}

bool drift_bound_holds(const ClockSpec& clock_i, const ClockSpec& clock_j,
                       const Rational& pi) {
  const Rational lo = std::min(clock_i.ratio, clock_j.ratio);
  const Rational hi = std::max(clock_i.ratio, clock_j.ratio);
  return pi / (pi + 1) <= lo / hi;
}

bool is_affected_cycle(Cycle xi, Cycle c, const ClockSpec& sender,
                       const ClockSpec& receiver, const TimingParams& tp) {
  const TimeRat lo = edge_time(sender, c) + tp.t_pmin * sender.ratio;
  const TimeRat t = edge_time(receiver, xi) + tp.t_h * receiver.ratio;
  return lo < t && t <= lo + receiver.ratio;
}

Cycle first_affected_cycle(Cycle c, const ClockSpec& sender,
                           const ClockSpec& receiver, const TimingParams& tp) {
  // lo < phase + (xi + t_h) ratio <= lo + ratio  <=>  xi = floor(x) + 1
  const TimeRat lo = edge_time(sender, c) + tp.t_pmin * sender.ratio;
  const Rational x = (lo - receiver.phase) / receiver.ratio - tp.t_h;
  const Cycle xi = floor_int(x) + 1;
  if (xi < 0) {
    throw DomainError("sender cycle " + std::to_string(c) +
                      " affects no receiver cycle");
  }
  return xi;
}

std::vector<Cycle> mark_candidates(Cycle xi, Cycle alpha, const Rational& pi) {
  if (alpha <= 0 || Rational(alpha) > pi) {
    throw DomainError("alpha must lie in ]0, pi], got " +
                      std::to_string(alpha));
  }
  std::vector<Cycle> out;
  for (Cycle chi = -1; chi <= 1; ++chi) {
    const Cycle m = std::max<Cycle>(0, xi + alpha + chi);
    if (out.empty() || out.back() != m) out.push_back(m);
  }
  return out;
}

int metastability_factor(Cycle xi, Cycle c, const ClockSpec& sender,
                         const ClockSpec& receiver, const TimingParams& tp) {
  return edge_time(receiver, xi) - tp.t_s * receiver.ratio <=
                 edge_time(sender, c) + tp.t_pmax * sender.ratio
             ? 1
             : 0;
}

}  // namespace flexsync
