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

#ifndef FLEXSYNC_ANALOGBUS_HPP_
#define FLEXSYNC_ANALOGBUS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "flexsync/rational.hpp"
#include "flexsync/timebase.hpp"

namespace flexsync {

// Three-valued logic level on a wire. Omega stands for any voltage that is
// neither a clean low nor a clean high (including oscillation).
enum class SignalValue : std::uint8_t { Zero, One, Omega };

inline SignalValue from_bit(bool bit) {
  return bit ? SignalValue::One : SignalValue::Zero;
}
// '0', '1' or 'X'.
char to_char(SignalValue value);

// Piecewise-constant function of time. Breakpoint i holds its value on
// ]start_i, start_{i+1}], the last one on ]start_last, end]. The signal is
// Omega at and before the first start and after `end`.
class Signal {
 public:
  struct Breakpoint {
    TimeRat start;
    SignalValue value;

    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
  };

  Signal() = default;
  // An empty signal whose first span will start after `origin`.
  explicit Signal(TimeRat origin);
  // Throws DomainError unless starts are strictly increasing and end > last.
  Signal(std::vector<Breakpoint> breakpoints, TimeRat end);

  static Signal constant(SignalValue value, const TimeRat& from,
                         const TimeRat& to);

  // Appends the span ]end(), until] carrying `value`. Adjacent spans with
  // equal values are merged. Throws DomainError if until <= end().
  void extend(SignalValue value, const TimeRat& until);

  SignalValue at(const TimeRat& t) const;

  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  const TimeRat& end() const { return end_; }
  bool empty() const { return breakpoints_.empty(); }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  // Index of the span containing t, or -1 when t is outside all spans.
  std::ptrdiff_t span_index(const TimeRat& t) const;

  std::vector<Breakpoint> breakpoints_;
  TimeRat end_{0};

  friend bool is_stable_defined(const TimeRat&, const TimeRat&,
                                const Signal&);
};

// True iff s holds one defined bit over the whole closed interval [t1, t2].
// Throws DomainError if t1 > t2.
bool is_stable_defined(const TimeRat& t1, const TimeRat& t2, const Signal& s);

// Writes one "num/den V" line per breakpoint and a final "num/den X" line at
// the end of the signal.
void dump_signal(const Signal& s, std::ostream& out);
// Same format, limited to the spans that overlap ]from, to].
void dump_signal_window(const Signal& s, const TimeRat& from,
                        const TimeRat& to, std::ostream& out);

// Finite stream of adversary bits, consumed one per nondeterministic event.
class ResolutionOracle {
 public:
  ResolutionOracle() = default;
  explicit ResolutionOracle(std::vector<bool> bits) : bits_(std::move(bits)) {}

  // Throws ConfigError when the stream is exhausted.
  bool next();

  std::size_t consumed() const { return consumed_; }
  std::size_t remaining() const { return bits_.size() - consumed_; }
  const std::vector<bool>& bits() const { return bits_; }

 private:
  std::vector<bool> bits_;
  std::size_t consumed_ = 0;
};

struct AnalogRegConfig {
  ClockSpec clock;
  Signal ce;
  Signal input;
  SignalValue out0 = SignalValue::One;
  TimingParams tp;
};

enum class RegisterBranch : std::uint8_t { Initial, Update, Hold, Metastable };

// Analog model of a clocked register with clock enable. All timing
// parameters are scaled by the register's own clock period.
//
// Cycle c covers ]e(c), e(c+1)]. Cycle 0 outputs out0. Afterwards, when both
// ce and input are stable and defined over e(c) + [-t_s : t_h]:
//   ce high: previous value on ]0 : t_pmin], Omega on ]t_pmin : t_pmax],
//            input(e(c)) on ]t_pmax : tau];
//   ce low:  previous value over the whole cycle.
// Otherwise the register goes metastable: previous value on ]0 : t_pmin],
// Omega up to tau - t_s, then a bit drawn from the oracle until e(c+1).
// Cycles are evaluated in order and their end values memoized, so the oracle
// is consumed exactly once per metastable cycle. The oracle is borrowed and
// must outlive the register; the sampler reading the output may share it.
class AnalogRegister {
 public:
  // Throws DomainError if out0 is Omega.
  AnalogRegister(AnalogRegConfig config, ResolutionOracle& oracle);

  // Output over ]e(c), e(c+1)].
  Signal cycle_signal(Cycle c);
  // Output at e(c+1), always Zero or One.
  SignalValue end_value(Cycle c);
  RegisterBranch branch(Cycle c);

  // Concatenated output over ]e(first), e(last+1)].
  Signal output_signal(Cycle first, Cycle last);

  const AnalogRegConfig& config() const { return config_; }
  const ResolutionOracle& oracle() const { return *oracle_; }

 private:
  struct CycleRecord {
    RegisterBranch branch;
    SignalValue previous;
    SignalValue next;  // value loaded (update) or resolved (metastable)
  };

  void evaluate_through(Cycle c);
  Signal render(Cycle c, const CycleRecord& record) const;

  AnalogRegConfig config_;
  ResolutionOracle* oracle_;
  std::vector<CycleRecord> records_;
};

// Convenience wrapper: a fresh register evaluated up to cycle c.
Signal analog_register_signal(const AnalogRegConfig& config, Cycle c,
                              ResolutionOracle& oracle);

// Left-open, right-closed span of real time.
struct TimeInterval {
  TimeRat lo;
  TimeRat hi;

  bool contains(const TimeRat& t) const { return lo < t && t <= hi; }
  // Whether the closed interval [a, b] lies inside.
  bool contains_closed(const TimeRat& a, const TimeRat& b) const {
    return lo < a && b <= hi;
  }
  TimeRat length() const { return hi - lo; }
};

// ]e(c) + t_pmax : e(c+k+1) + t_pmin], the span over which a register that
// loads at edge c and then holds for k cycles drives a defined value.
// Throws DomainError if k < 1.
TimeInterval safe_sampling_window(Cycle c, Cycle k, const ClockSpec& clock,
                                  const TimingParams& tp);

// A signal carrying bits[i] on ]e(i) + t_h : e(i+1) + t_h], so that bits[i]
// is stable around edge i+1. Throws DomainError on an empty list.
Signal bits_to_signal(const std::vector<bool>& bits, const ClockSpec& clock,
                      const TimingParams& tp);

// s(t) when defined, otherwise a bit from the oracle.
bool signal_to_bit(const Signal& s, const TimeRat& t, ResolutionOracle& oracle);

}  // namespace flexsync

#endif  // FLEXSYNC_ANALOGBUS_HPP_
