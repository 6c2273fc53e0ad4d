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

#include <algorithm>
#include <ostream>

#include "flexsync/errors.hpp"

namespace flexsync {

char to_char(SignalValue value) {
  switch (value) {
    case SignalValue::Zero:
      return '0';
    case SignalValue::One:
      return '1';
    case SignalValue::Omega:
      break;
  }
  return 'X';
}

Signal::Signal(TimeRat origin) : end_(std::move(origin)) {}

Signal::Signal(std::vector<Breakpoint> breakpoints, TimeRat end)
    : breakpoints_(std::move(breakpoints)), end_(std::move(end)) {
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i - 1].start < breakpoints_[i].start)) {
      throw DomainError("signal breakpoints must be strictly increasing");
    }
  }
  if (!breakpoints_.empty() && !(breakpoints_.back().start < end_)) {
    throw DomainError("signal end must follow the last breakpoint");
  }
}

Signal Signal::constant(SignalValue value, const TimeRat& from,
                        const TimeRat& to) {
  Signal s(from);
  s.extend(value, to);
  return s;
}

void Signal::extend(SignalValue value, const TimeRat& until) {
  if (!(end_ < until)) {
    throw DomainError("signal extension must move forward in time");
  }
  if (breakpoints_.empty() || breakpoints_.back().value != value) {
    breakpoints_.push_back({end_, value});
  }
  end_ = until;
}

std::ptrdiff_t Signal::span_index(const TimeRat& t) const {
  if (breakpoints_.empty() || t <= breakpoints_.front().start || t > end_) {
    return -1;
  }
  // First breakpoint starting at or after t; the span before it holds t.
  auto it = std::lower_bound(
      breakpoints_.begin(), breakpoints_.end(), t,
      [](const Breakpoint& b, const TimeRat& x) { return b.start < x; });
  return (it - breakpoints_.begin()) - 1;
}

SignalValue Signal::at(const TimeRat& t) const {
  const std::ptrdiff_t i = span_index(t);
  return i < 0 ? SignalValue::Omega : breakpoints_[i].value;
}

bool is_stable_defined(const TimeRat& t1, const TimeRat& t2, const Signal& s) {
  if (t2 < t1) throw DomainError("is_stable_defined needs t1 <= t2");
  std::ptrdiff_t i = s.span_index(t1);
  if (i < 0) return false;
  const auto& bps = s.breakpoints_;
  const SignalValue value = bps[i].value;
  if (value == SignalValue::Omega) return false;
  for (;;) {
    const bool last = static_cast<std::size_t>(i + 1) == bps.size();
    const TimeRat& span_end = last ? s.end_ : bps[i + 1].start;
    if (t2 <= span_end) return true;
    if (last) return false;
    ++i;
    if (bps[i].value != value) return false;
  }
}

namespace {

void dump_line(std::ostream& out, const TimeRat& t, char v) {
  out << t.numerator() << '/' << t.denominator() << ' ' << v << '\n';
}

}  // namespace

void dump_signal(const Signal& s, std::ostream& out) {
  for (const auto& b : s.breakpoints()) dump_line(out, b.start, to_char(b.value));
  dump_line(out, s.end(), 'X');
}

void dump_signal_window(const Signal& s, const TimeRat& from,
                        const TimeRat& to, std::ostream& out) {
  const auto& bps = s.breakpoints();
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const TimeRat& span_end = i + 1 < bps.size() ? bps[i + 1].start : s.end();
    if (span_end <= from || bps[i].start >= to) continue;
    dump_line(out, bps[i].start, to_char(bps[i].value));
  }
  if (s.end() > from && s.end() <= to) dump_line(out, s.end(), 'X');
}

bool ResolutionOracle::next() {
  if (consumed_ >= bits_.size()) {
    throw ConfigError("resolution stream exhausted after " +
                      std::to_string(consumed_) + " bits");
  }
  return bits_[consumed_++];
}

AnalogRegister::AnalogRegister(AnalogRegConfig config,
                               ResolutionOracle& oracle)
    : config_(std::move(config)), oracle_(&oracle) {
  if (config_.out0 == SignalValue::Omega) {
    throw DomainError("initial register output must be 0 or 1");
  }
}

void AnalogRegister::evaluate_through(Cycle c) {
  if (c < 0) throw DomainError("negative cycle");
  const ClockSpec& clk = config_.clock;
  const TimingParams& tp = config_.tp;
  while (static_cast<Cycle>(records_.size()) <= c) {
    const Cycle cur = static_cast<Cycle>(records_.size());
    if (cur == 0) {
      records_.push_back({RegisterBranch::Initial, config_.out0, config_.out0});
      continue;
    }
    const SignalValue prev = records_.back().next;
    const TimeRat e = edge_time(clk, cur);
    const TimeRat lo = e - tp.t_s * clk.ratio;
    const TimeRat hi = e + tp.t_h * clk.ratio;
    if (is_stable_defined(lo, hi, config_.ce) &&
        is_stable_defined(lo, hi, config_.input)) {
      if (config_.ce.at(e) == SignalValue::One) {
        records_.push_back({RegisterBranch::Update, prev, config_.input.at(e)});
      } else {
        records_.push_back({RegisterBranch::Hold, prev, prev});
      }
    } else {
      records_.push_back(
          {RegisterBranch::Metastable, prev, from_bit(oracle_->next())});
    }
  }
}

Signal AnalogRegister::render(Cycle c, const CycleRecord& record) const {
  const ClockSpec& clk = config_.clock;
  const TimingParams& tp = config_.tp;
  const TimeRat e = edge_time(clk, c);
  const TimeRat e_next = edge_time(clk, c + 1);
  Signal s(e);
  auto append = [&s](SignalValue v, const TimeRat& until) {
    if (s.end() < until) s.extend(v, until);
  };
  switch (record.branch) {
    case RegisterBranch::Initial:
    case RegisterBranch::Hold:
      append(record.previous, e_next);
      break;
    case RegisterBranch::Update:
      append(record.previous, e + tp.t_pmin * clk.ratio);
      append(SignalValue::Omega, e + tp.t_pmax * clk.ratio);
      append(record.next, e_next);
      break;
    case RegisterBranch::Metastable:
      append(record.previous, e + tp.t_pmin * clk.ratio);
      append(SignalValue::Omega, e_next - tp.t_s * clk.ratio);
      append(record.next, e_next);
      break;
  }
  return s;
}

Signal AnalogRegister::cycle_signal(Cycle c) {
  evaluate_through(c);
  return render(c, records_[c]);
}

SignalValue AnalogRegister::end_value(Cycle c) {
  evaluate_through(c);
  return records_[c].next;
}

RegisterBranch AnalogRegister::branch(Cycle c) {
  evaluate_through(c);
  return records_[c].branch;
}

Signal AnalogRegister::output_signal(Cycle first, Cycle last) {
  if (last < first) throw DomainError("output_signal needs first <= last");
  evaluate_through(last);
  Signal out(edge_time(config_.clock, first));
  for (Cycle c = first; c <= last; ++c) {
    const Signal piece = render(c, records_[c]);
    const auto& bps = piece.breakpoints();
    for (std::size_t i = 0; i < bps.size(); ++i) {
      out.extend(bps[i].value,
                 i + 1 < bps.size() ? bps[i + 1].start : piece.end());
    }
  }
  return out;
}

Signal analog_register_signal(const AnalogRegConfig& config, Cycle c,
                              ResolutionOracle& oracle) {
  AnalogRegister reg(config, oracle);
  return reg.cycle_signal(c);
}

TimeInterval safe_sampling_window(Cycle c, Cycle k, const ClockSpec& clock,
                                  const TimingParams& tp) {
  if (k < 1) throw DomainError("safe sampling window needs k >= 1");
  return {edge_time(clock, c) + tp.t_pmax * clock.ratio,
          edge_time(clock, c + k + 1) + tp.t_pmin * clock.ratio};
}

Signal bits_to_signal(const std::vector<bool>& bits, const ClockSpec& clock,
                      const TimingParams& tp) {
  if (bits.empty()) throw DomainError("bits_to_signal needs a non-empty list");
  const TimeRat hold = tp.t_h * clock.ratio;
  Signal s(edge_time(clock, 0) + hold);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    s.extend(from_bit(bits[i]),
             edge_time(clock, static_cast<Cycle>(i) + 1) + hold);
  }
  return s;
}

bool signal_to_bit(const Signal& s, const TimeRat& t,
                   ResolutionOracle& oracle) {
  switch (s.at(t)) {
    case SignalValue::Zero:
      return false;
    case SignalValue::One:
      return true;
    case SignalValue::Omega:
      break;
  }
  return oracle.next();
}

}  // namespace flexsync
