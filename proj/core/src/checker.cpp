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

#include "flexsync/checker.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "flexsync/errors.hpp"

namespace flexsync {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t stream_count(std::size_t length) {
  return length >= 64 ? kSaturated : std::uint64_t{1} << length;
}

// Cycle offset of sender cycle c + alpha marks; unbounded for ideal clocks.
Rational effective_horizon(const TimingParams& tp) {
  return tp.delta > 0 ? drift_horizon(tp.delta) : Rational(1'000'000'000);
}

void check_clock(const ClockSpec& clock, const Rational& delta,
                 const char* who) {
  if (!(clock.ratio > 0)) {
    throw DomainError(std::string(who) + " clock ratio must be positive");
  }
  if (!jitter_bounded(clock, delta)) {
    throw DomainError(std::string(who) + " clock ratio " +
                      to_string(clock.ratio) + " exceeds the jitter bound");
  }
  if (clock.phase < 0 || !(clock.phase < clock.ratio)) {
    throw DomainError(std::string(who) + " clock phase must lie in [0, ratio)");
  }
}

struct Bus {
  Signal signal;
  Cycle horizon = 0;
};

Bus build_bus(const SimConfig& config, const ClockPair& clocks) {
  const Frame frame = encode_frame(config.message);
  const DriveLists drive = drive_lists(frame, config.start_cycle);
  AnalogRegConfig sender;
  sender.clock = clocks.sender;
  sender.ce = bits_to_signal(drive.ce_s, clocks.sender, config.tp);
  sender.input = bits_to_signal(drive.in_s, clocks.sender, config.tp);
  sender.out0 = SignalValue::One;
  sender.tp = config.tp;
  ResolutionOracle unused;
  AnalogRegister reg(std::move(sender), unused);
  Bus bus;
  bus.signal = reg.output_signal(0, static_cast<Cycle>(drive.in_s.size()));
  bus.horizon = transmission_horizon(config, clocks);
  const TimeRat last_hold = edge_time(clocks.receiver, bus.horizon + 1) +
                            config.tp.t_h * clocks.receiver.ratio;
  if (bus.signal.end() < last_hold) {
    throw std::logic_error("bus signal ends before the receiver horizon");
  }
  return bus;
}

std::vector<std::int8_t> schedule_from_bus(const SimConfig& config,
                                           const ClockPair& clocks,
                                           const Bus& bus) {
  std::vector<std::int8_t> sched(static_cast<std::size_t>(bus.horizon) + 1);
  sched[0] = 1;  // register reset value
  const ClockSpec& rc = clocks.receiver;
  for (Cycle xi = 1; xi <= bus.horizon; ++xi) {
    const TimeRat e = edge_time(rc, xi);
    const TimeRat lo = e - config.tp.t_s * rc.ratio;
    const TimeRat hi = e + config.tp.t_h * rc.ratio;
    if (is_stable_defined(lo, hi, bus.signal)) {
      sched[xi] = bus.signal.at(e) == SignalValue::One ? 1 : 0;
    } else {
      sched[xi] = -1;
    }
  }
  return sched;
}

struct RunOutcome {
  std::vector<std::uint8_t> received;
  std::vector<Cycle> completions;
};

struct Issue {
  std::string reason;
  Cycle focus = 0;
};

int completion_base(const ReceiverParams& params) {
  return 69 + params.difference();
}

std::optional<Issue> evaluate_run(const SimConfig& config,
                                  const ClockPair& clocks,
                                  const std::vector<std::int8_t>& schedule,
                                  const RunOutcome& run,
                                  std::vector<ByteReport>* reports,
                                  std::set<int>* offsets) {
  const Rational pi = effective_horizon(config.tp);
  const Cycle c = config.start_cycle;
  const int lo_off = min_completion_offset(config.params);
  const int hi_off = max_completion_offset(config.params);
  const Cycle last = static_cast<Cycle>(schedule.size()) - 1;
  for (std::size_t i = 0; i < config.message.size(); ++i) {
    const std::string tag = "byte " + std::to_string(i) + ": ";
    const Cycle bss0 = c + 16 + 80 * static_cast<Cycle>(i);
    const Cycle bss1 = bss0 + 8;
    const Cycle nu = first_affected_cycle(bss0, clocks.sender, clocks.receiver,
                                          config.tp);
    const Cycle predicted = first_affected_cycle(bss1, clocks.sender,
                                                 clocks.receiver, config.tp);
    Cycle mu = nu + 1;
    while (mu <= last && schedule[mu] == 1) ++mu;
    if (mu > last) return Issue{tag + "BSS1 never reaches the receiver", nu};
    if (mu != predicted) {
      return Issue{tag + "BSS1 seen at cycle " + std::to_string(mu) +
                       ", mark is " + std::to_string(predicted),
                   mu};
    }
    if (i >= run.received.size() || i >= run.completions.size()) {
      return Issue{tag + "never written", mu};
    }
    ByteReport rep;
    rep.index = i;
    rep.sent = config.message[i];
    rep.received = run.received[i];
    rep.nu = nu;
    rep.bss1_mark = mu;
    rep.offset = static_cast<int>(run.completions[i] - nu);
    rep.chi = static_cast<int>(mu - nu - 8);
    rep.beta = rep.offset - completion_base(config.params) -
               static_cast<int>(mu - nu);
    if (reports) reports->push_back(rep);
    if (offsets) offsets->insert(rep.offset);
    if (rep.received != rep.sent) {
      return Issue{tag + "received " + to_hex(rep.received) + ", sent " +
                       to_hex(rep.sent),
                   mu};
    }
    if (rep.offset < lo_off || rep.offset > hi_off) {
      return Issue{tag + "completed at nu+" + std::to_string(rep.offset) +
                       ", outside [" + std::to_string(lo_off) + ", " +
                       std::to_string(hi_off) + "]",
                   mu};
    }
    // Candidates are only predicted when eight cycles fit the drift horizon.
    const auto cands = Rational(8) <= pi ? mark_candidates(nu, 8, pi)
                                         : std::vector<Cycle>{mu};
    if (std::find(cands.begin(), cands.end(), mu) == cands.end()) {
      return Issue{tag + "BSS1 mark " + std::to_string(mu) +
                       " is not a candidate of nu=" + std::to_string(nu),
                   mu};
    }
    if (rep.beta < 0 || rep.beta > 1) {
      return Issue{tag + "completion nu+" + std::to_string(rep.offset) +
                       " not explained by BSS1 mark at nu+" +
                       std::to_string(mu - nu),
                   mu};
    }
    if (rep.beta == 1 && metastability_factor(mu, bss1, clocks.sender,
                                              clocks.receiver,
                                              config.tp) == 0) {
      return Issue{tag + "late completion without a metastable BSS1 mark", mu};
    }
  }
  if (run.received.size() > config.message.size()) {
    return Issue{"spurious byte " + to_hex(run.received.back()) + " written",
                 run.completions.empty() ? 0 : run.completions.back()};
  }
  return std::nullopt;
}

RunOutcome outcome_of(const TransmissionResult& result) {
  RunOutcome run;
  run.received = result.final_state.received;
  for (const auto& row : result.transcript.rows) {
    if (row.out.rb_we) run.completions.push_back(row.cycle);
  }
  return run;
}

// Drives the digital receiver from a schedule, taking stream bits at the
// metastable cycles.
RunOutcome run_schedule(const SimConfig& config,
                        const std::vector<std::int8_t>& schedule,
                        const std::vector<bool>& stream) {
  ReceiverState st = receiver_idle_state(config.params);
  RunOutcome run;
  std::size_t used = 0;
  for (std::size_t xi = 0; xi < schedule.size(); ++xi) {
    bool inp = schedule[xi] == 1;
    if (schedule[xi] < 0) {
      if (used >= stream.size()) {
        throw ConfigError("resolution stream exhausted after " +
                          std::to_string(used) + " bits");
      }
      inp = stream[used++];
    }
    auto [next, out] = receiver_step(st, inp, config.params);
    if (out.rb_we) run.completions.push_back(static_cast<Cycle>(xi));
    st = std::move(next);
  }
  run.received = std::move(st.received);
  return run;
}

Counterexample make_counterexample(const SimConfig& config,
                                   const ClockPair& clocks,
                                   std::vector<bool> choices) {
  choices.resize(
      std::max(choices.size(), resolution_stream_length(config.message.size())),
      false);
  AdversaryChoice adv{clocks.sender, clocks.receiver, std::move(choices)};
  const TransmissionResult result = run_transmission(config, adv);
  const Bus bus{result.transcript.bus,
                static_cast<Cycle>(result.transcript.rows.size()) - 1};
  const auto schedule = schedule_from_bus(config, clocks, bus);
  const auto issue =
      evaluate_run(config, clocks, schedule, outcome_of(result), nullptr,
                   nullptr);
  if (!issue) {
    throw std::logic_error("counterexample replay does not reproduce the failure");
  }
  Counterexample cx;
  cx.reason = issue->reason;
  std::ostringstream trace;
  write_trace_csv(trace, result.transcript.rows);
  cx.trace_csv = trace.str();
  std::ostringstream dump;
  const Cycle from = std::max<Cycle>(0, issue->focus - 16);
  dump_signal_window(result.transcript.bus, edge_time(clocks.receiver, from),
                     edge_time(clocks.receiver, issue->focus + 16), dump);
  cx.signal_dump = dump.str();
  cx.adversary = std::move(adv);
  return cx;
}

struct FrontierNode {
  ReceiverState state;
  std::vector<Cycle> completions;
  std::vector<bool> choices;
};

bool same_key(const FrontierNode& a, const FrontierNode& b) {
  return a.state == b.state && a.completions == b.completions;
}

bool key_less(const FrontierNode& a, const FrontierNode& b) {
  return std::tie(a.state, a.completions, a.choices) <
         std::tie(b.state, b.completions, b.choices);
}

// All resolution streams for one clock pair at once. Paths that reach the
// same receiver state with the same write history are merged, keeping the
// lexicographically smallest choice prefix so the reported counterexample is
// the first failing stream in enumeration order.
using FrontierObserver =
    std::function<void(Cycle, const std::vector<FrontierNode>&)>;

std::vector<FrontierNode> explore(const SimConfig& config,
                                  const std::vector<std::int8_t>& schedule,
                                  const FrontierObserver& observe = {}) {
  std::vector<FrontierNode> nodes{
      {receiver_idle_state(config.params), {}, {}}};
  std::vector<FrontierNode> next;
  for (std::size_t xi = 0; xi < schedule.size(); ++xi) {
    if (observe) observe(static_cast<Cycle>(xi), nodes);
    next.clear();
    for (const auto& node : nodes) {
      for (int b = 0; b < 2; ++b) {
        if (schedule[xi] >= 0 && schedule[xi] != b) continue;
        auto [st, out] = receiver_step(node.state, b == 1, config.params);
        FrontierNode child{std::move(st), node.completions, node.choices};
        if (out.rb_we) child.completions.push_back(static_cast<Cycle>(xi));
        if (schedule[xi] < 0) child.choices.push_back(b == 1);
        next.push_back(std::move(child));
      }
    }
    std::sort(next.begin(), next.end(), key_less);
    next.erase(std::unique(next.begin(), next.end(), same_key), next.end());
    nodes.swap(next);
  }
  return nodes;
}

}  // namespace

void SimConfig::validate() const {
  tp.validate();
  params.validate();
  if (message.empty()) throw DomainError("message must not be empty");
  if (start_cycle <= 0) throw DomainError("start cycle must be positive");
  if (n < 0 || k < n + 1) throw DomainError("need 0 <= n and n + 1 <= k");
  if (tp.delta > 0 && Rational(k) > drift_horizon(tp.delta)) {
    throw DomainError("k = " + std::to_string(k) +
                      " exceeds the drift horizon " +
                      to_string(drift_horizon(tp.delta)));
  }
}

void GridSpec::validate() const {
  if (ratio_points < 1 || phase_points < 1) {
    throw DomainError("grid densities must be at least 1");
  }
}

std::vector<Rational> ratio_grid(const Rational& delta, int points) {
  if (points < 1) throw DomainError("grid densities must be at least 1");
  if (points == 1 || delta == Rational(0)) return {Rational(1)};
  std::vector<Rational> out;
  for (int i = 0; i < points; ++i) {
    out.push_back(1 - delta + 2 * delta * Rational(i, points - 1));
  }
  return out;
}

std::vector<Rational> phase_grid(const Rational& ratio, int points) {
  if (points < 1) throw DomainError("grid densities must be at least 1");
  std::vector<Rational> out;
  for (int j = 0; j < points; ++j) out.push_back(ratio * Rational(j, points));
  return out;
}

std::vector<ClockPair> clock_grid(const Rational& delta, const GridSpec& grid) {
  grid.validate();
  const auto ratios = ratio_grid(delta, grid.ratio_points);
  std::vector<ClockPair> out;
  for (const auto& rs : ratios) {
    for (const auto& rr : ratios) {
      for (const auto& ph : phase_grid(rr, grid.phase_points)) {
        out.push_back({ClockSpec{rs, 0}, ClockSpec{rr, ph}});
      }
    }
  }
  return out;
}

std::size_t resolution_stream_length(std::size_t byte_count) {
  return frame_length(byte_count);
}

AdversaryEnumerator::AdversaryEnumerator(const SimConfig& config,
                                         const GridSpec& grid) {
  config.validate();
  clocks_ = clock_grid(config.tp.delta, grid);
  stream_length_ = resolution_stream_length(config.message.size());
  if (stream_length_ > 62) {
    throw DomainError("resolution streams of " +
                      std::to_string(stream_length_) +
                      " bits are too long to enumerate explicitly");
  }
}

std::uint64_t AdversaryEnumerator::size() const {
  return clocks_.size() * stream_count(stream_length_);
}

bool AdversaryEnumerator::next(AdversaryChoice& out) {
  if (clock_index_ >= clocks_.size()) return false;
  out.sender = clocks_[clock_index_].sender;
  out.receiver = clocks_[clock_index_].receiver;
  out.resolution.assign(stream_length_, false);
  for (std::size_t i = 0; i < stream_length_; ++i) {
    out.resolution[i] = ((stream_index_ >> (stream_length_ - 1 - i)) & 1) != 0;
  }
  if (++stream_index_ == stream_count(stream_length_)) {
    stream_index_ = 0;
    ++clock_index_;
  }
  return true;
}

std::vector<std::vector<bool>> low_weight_streams(std::size_t length,
                                                  int max_ones) {
  std::vector<std::vector<bool>> out;
  for (int w = 0; w <= max_ones && static_cast<std::size_t>(w) <= length; ++w) {
    std::vector<bool> mask(length, false);
    std::fill(mask.end() - w, mask.end(), true);
    // next_permutation walks the weight class in ascending order.
    do {
      out.push_back(mask);
    } while (std::next_permutation(mask.begin(), mask.end()));
  }
  return out;
}

std::vector<std::vector<bool>> random_streams(std::size_t length,
                                              std::size_t count,
                                              std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::vector<bool>> out(count, std::vector<bool>(length));
  for (auto& stream : out) {
    for (std::size_t i = 0; i < length; ++i) stream[i] = (gen() >> 63) != 0;
  }
  return out;
}

Cycle transmission_horizon(const SimConfig& config, const ClockPair& clocks) {
  const Cycle after_frame =
      config.start_cycle +
      kCopiesPerBit * static_cast<Cycle>(frame_length(config.message.size()));
  return first_affected_cycle(after_frame, clocks.sender, clocks.receiver,
                              config.tp) +
         kCopiesPerBit;
}

TransmissionResult run_transmission(const SimConfig& config,
                                    const AdversaryChoice& adversary) {
  config.validate();
  check_clock(adversary.sender, config.tp.delta, "sender");
  check_clock(adversary.receiver, config.tp.delta, "receiver");
  const ClockPair clocks{adversary.sender, adversary.receiver};
  Bus bus = build_bus(config, clocks);
  const ClockSpec& rc = adversary.receiver;

  ResolutionOracle oracle(adversary.resolution);
  AnalogRegConfig rcfg;
  rcfg.clock = rc;
  rcfg.ce = Signal::constant(SignalValue::One, edge_time(rc, 0) - 1,
                             edge_time(rc, bus.horizon + 2));
  rcfg.input = bus.signal;
  rcfg.out0 = SignalValue::One;
  rcfg.tp = config.tp;
  AnalogRegister reg(std::move(rcfg), oracle);

  TransmissionResult result;
  ReceiverState state = receiver_idle_state(config.params);
  result.transcript.rows.reserve(static_cast<std::size_t>(bus.horizon) + 1);
  for (Cycle xi = 0; xi <= bus.horizon; ++xi) {
    const bool inp =
        signal_to_bit(reg.cycle_signal(xi), edge_time(rc, xi + 1), oracle);
    auto [next, out] = receiver_step(state, inp, config.params);
    result.transcript.rows.push_back({xi, inp, std::move(state), out});
    state = std::move(next);
  }
  result.transcript.bus = std::move(bus.signal);
  result.transcript.resolutions_used = oracle.consumed();
  result.final_state = std::move(state);
  return result;
}

std::vector<std::int8_t> input_schedule(const SimConfig& config,
                                        const ClockPair& clocks) {
  config.validate();
  check_clock(clocks.sender, config.tp.delta, "sender");
  check_clock(clocks.receiver, config.tp.delta, "receiver");
  return schedule_from_bus(config, clocks, build_bus(config, clocks));
}

int min_completion_offset(const ReceiverParams& params) {
  return 76 + params.difference();
}

int max_completion_offset(const ReceiverParams& params) {
  return 79 + params.difference();
}

Verdict check_adversary(const SimConfig& config,
                        const AdversaryChoice& adversary) {
  const TransmissionResult result = run_transmission(config, adversary);
  const ClockPair clocks{adversary.sender, adversary.receiver};
  const Bus bus{result.transcript.bus,
                static_cast<Cycle>(result.transcript.rows.size()) - 1};
  const auto schedule = schedule_from_bus(config, clocks, bus);
  Verdict v;
  v.adversaries_checked = 1;
  const auto issue = evaluate_run(config, clocks, schedule, outcome_of(result),
                                  &v.per_byte, &v.offsets_seen);
  if (issue) {
    v.pass = false;
    Counterexample cx;
    cx.adversary = adversary;
    cx.reason = issue->reason;
    std::ostringstream trace;
    write_trace_csv(trace, result.transcript.rows);
    cx.trace_csv = trace.str();
    std::ostringstream dump;
    dump_signal_window(
        result.transcript.bus,
        edge_time(clocks.receiver, std::max<Cycle>(0, issue->focus - 16)),
        edge_time(clocks.receiver, issue->focus + 16), dump);
    cx.signal_dump = dump.str();
    v.counterexample = std::move(cx);
  }
  return v;
}

Verdict verify_theorem(const SimConfig& config, const GridSpec& grid,
                       const VerifyOptions& options) {
  config.validate();
  return verify_clocks(config, clock_grid(config.tp.delta, grid), options);
}

Verdict verify_clocks(const SimConfig& config,
                      const std::vector<ClockPair>& clocks,
                      const VerifyOptions& options) {
  config.validate();
  const std::size_t length = resolution_stream_length(config.message.size());

  std::vector<std::vector<bool>> streams;
  if (options.streams == VerifyOptions::Streams::Sampled) {
    streams = low_weight_streams(length, options.max_ones);
    auto extra = random_streams(length, options.random_count, options.seed);
    streams.insert(streams.end(), std::make_move_iterator(extra.begin()),
                   std::make_move_iterator(extra.end()));
  }

  Verdict verdict;
  for (const auto& pair : clocks) {
    const auto schedule = input_schedule(config, pair);
    std::optional<std::vector<bool>> failing;
    if (options.streams == VerifyOptions::Streams::Exhaustive) {
      for (const auto& leaf : explore(config, schedule)) {
        const RunOutcome run{leaf.state.received, leaf.completions};
        if (evaluate_run(config, pair, schedule, run, nullptr,
                         &verdict.offsets_seen)) {
          if (!failing || leaf.choices < *failing) failing = leaf.choices;
        }
      }
      verdict.adversaries_checked =
          saturating_add(verdict.adversaries_checked, stream_count(length));
    } else {
      for (const auto& stream : streams) {
        const RunOutcome run = run_schedule(config, schedule, stream);
        ++verdict.adversaries_checked;
        if (evaluate_run(config, pair, schedule, run, nullptr,
                         &verdict.offsets_seen)) {
          failing = stream;
          break;
        }
      }
    }
    if (failing) {
      verdict.pass = false;
      verdict.counterexample = make_counterexample(config, pair, *failing);
      verdict.per_byte =
          check_adversary(config, *verdict.counterexample->adversary).per_byte;
      return verdict;
    }
  }
  if (jitter_bounded(config.sender_clock, config.tp.delta) &&
      jitter_bounded(config.receiver_clock, config.tp.delta)) {
    const AdversaryChoice nominal{config.sender_clock, config.receiver_clock,
                                  std::vector<bool>(length, false)};
    verdict.per_byte = check_adversary(config, nominal).per_byte;
  }
  return verdict;
}

SweepRow sweep_pair(const SimConfig& config, const ReceiverParams& pair,
                    const GridSpec& grid, const VerifyOptions& options) {
  SimConfig cfg = config;
  cfg.params = pair;
  SweepRow row;
  row.params = pair;
  row.diff = pair.difference();
  row.verdict = verify_theorem(cfg, grid, options);
  return row;
}

std::vector<SweepRow> sweep_strobe_reset(
    const SimConfig& config, const std::vector<ReceiverParams>& pairs,
    const GridSpec& grid, const VerifyOptions& options) {
  std::vector<SweepRow> rows;
  for (const auto& p : pairs) rows.push_back(sweep_pair(config, p, grid, options));
  return rows;
}

Verdict check_voted_bit(int first_good) {
  constexpr int kCycles = 11;
  constexpr int kStable = 7;
  if (first_good < 0 || first_good >= kCycles) {
    throw DomainError("first good cycle must lie in [0, 10]");
  }
  const ReceiverParams params;
  Verdict verdict;
  for (int b = 0; b < 2; ++b) {
    for (int init = 0; init < 128; ++init) {
      for (int tail = 0; tail < 16; ++tail) {
        ReceiverState st;
        st.rR = (init & 1) != 0;
        st.rRH = (init & 2) != 0;
        for (int i = 0; i < 4; ++i) st.sh4[i] = ((init >> (2 + i)) & 1) != 0;
        st.v_prev = (init & 64) != 0;
        std::vector<TraceRow> rows;
        int bad = -1;
        for (int t = 0; t < kCycles; ++t) {
          const bool inp =
              t < kStable ? b == 1 : ((tail >> (t - kStable)) & 1) != 0;
          auto [next, out] = receiver_step(st, inp, params);
          rows.push_back({t, inp, st, out});
          if (bad < 0 && t >= first_good && out.v != (b == 1)) bad = t;
          st = std::move(next);
        }
        ++verdict.adversaries_checked;
        if (bad >= 0 && verdict.pass) {
          verdict.pass = false;
          Counterexample cx;
          cx.reason = "b=" + std::to_string(b) + " init=" +
                      std::to_string(init) + ": v differs at cycle " +
                      std::to_string(bad);
          std::ostringstream trace;
          write_trace_csv(trace, rows);
          cx.trace_csv = trace.str();
          verdict.counterexample = std::move(cx);
        }
      }
    }
  }
  return verdict;
}

std::vector<BssStart> bss_listed_starts() {
  using Z = AutomatonState;
  return {{Z::Bss0, 2}, {Z::Bss0, 3}, {Z::Fss, 1}, {Z::Fss, 2},
          {Z::B7, 1},   {Z::B7, 2},   {Z::B7, 3},  {Z::B7, 4}};
}

namespace {

// Runs every history and free-bit combination for one (start, shift) pair.
BssCase traverse_case(const ReceiverParams& params, const BssStart& start,
                      int shift, Verdict& verdict) {
  constexpr int kSteps = 24;
  if (start.cnt > 7) throw DomainError("start counter must lie in [0, 7]");
  if (shift < 0) throw DomainError("mark shift must be non-negative");
  const std::uint8_t target_cnt =
      static_cast<std::uint8_t>((params.strobe_value + 1) % 8);
  const int mark = 7 + shift;
  BssCase bc;
  bc.start = start;
  bc.shift = shift;
  // history bits 0..6 are inputs t-7 .. t-1
  for (int hist = 0; hist < 128; ++hist) {
    for (int free_bits = 0; free_bits < 4; ++free_bits) {
      auto h = [hist](int i) { return ((hist >> i) & 1) != 0; };
      ReceiverState st;
      st.rR = h(6);
      st.rRH = h(5);
      st.sh4 = {h(4), h(3), h(2), h(1)};
      st.v_prev = majority5_mux({h(4), h(3), h(2), h(1), h(0)});
      st.cnt = start.cnt;
      st.z = start.z;
      std::vector<TraceRow> rows;
      int arrival = -1;
      for (int tau = 0; tau <= kSteps; ++tau) {
        if (tau > 0 && arrival < 0 && st.z == AutomatonState::B0 &&
            st.cnt == target_cnt) {
          arrival = tau;
        }
        bool inp = false;
        if (tau == 0) {
          inp = (free_bits & 1) != 0;
        } else if (tau < mark) {
          inp = true;
        } else if (tau == mark) {
          inp = (free_bits & 2) != 0;
        }
        auto [next, out] = receiver_step(st, inp, params);
        rows.push_back({tau, inp, st, out});
        st = std::move(next);
      }
      ++verdict.adversaries_checked;
      bc.arrivals.insert(arrival);
      if (arrival == 15 + shift || arrival == 16 + shift) continue;
      bc.pass = false;
      if (!verdict.pass) continue;
      verdict.pass = false;
      Counterexample cx;
      cx.reason = "start " + std::string(to_string(start.z)) +
                  " cnt=" + std::to_string(start.cnt) +
                  " shift=" + std::to_string(shift) +
                  " history=" + std::to_string(hist) + ": " +
                  (arrival < 0 ? std::string("B0 not reached")
                               : "B0 reached at step " + std::to_string(arrival));
      std::ostringstream trace;
      write_trace_csv(trace, rows);
      cx.trace_csv = trace.str();
      verdict.counterexample = std::move(cx);
    }
  }
  return bc;
}

}  // namespace

BssTraversalReport check_bss_traversal(const ReceiverParams& params,
                                       const std::vector<BssStart>& starts,
                                       const std::vector<int>& shifts) {
  params.validate();
  BssTraversalReport report;
  for (const auto& start : starts) {
    for (int shift : shifts) {
      report.cases.push_back(
          traverse_case(params, start, shift, report.verdict));
    }
  }
  return report;
}

BssTraversalReport check_bss_traversal(
    const ReceiverParams& params,
    const std::vector<BssObservation>& observations) {
  params.validate();
  BssTraversalReport report;
  for (const auto& obs : observations) {
    report.cases.push_back(
        traverse_case(params, obs.start, obs.shift, report.verdict));
  }
  return report;
}

std::vector<BssObservation> observe_bss_starts(const SimConfig& config,
                                               const GridSpec& grid) {
  config.validate();
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& pair : clock_grid(config.tp.delta, grid)) {
    const auto schedule = input_schedule(config, pair);
    std::vector<std::pair<Cycle, int>> marks;  // nu, shift
    for (std::size_t i = 0; i < config.message.size(); ++i) {
      const Cycle bss0 = config.start_cycle + 16 + 80 * static_cast<Cycle>(i);
      const Cycle nu =
          first_affected_cycle(bss0, pair.sender, pair.receiver, config.tp);
      const Cycle mu =
          first_affected_cycle(bss0 + 8, pair.sender, pair.receiver, config.tp);
      marks.emplace_back(nu, static_cast<int>(mu - nu - 7));
    }
    explore(config, schedule,
            [&](Cycle xi, const std::vector<FrontierNode>& nodes) {
              for (const auto& [nu, shift] : marks) {
                if (nu != xi) continue;
                for (const auto& node : nodes) {
                  seen.emplace(static_cast<int>(node.state.z),
                               node.state.cnt, shift);
                }
              }
            });
  }
  std::vector<BssObservation> out;
  for (const auto& [z, cnt, shift] : seen) {
    out.push_back({{static_cast<AutomatonState>(z),
                    static_cast<std::uint8_t>(cnt)},
                   shift});
  }
  return out;
}

PropertyReport check_drift_bound(const Rational& delta, int ratio_points) {
  const Rational pi = drift_horizon(delta);
  const auto ratios = ratio_grid(delta, ratio_points);
  PropertyReport rep;
  for (const auto& ri : ratios) {
    for (const auto& rj : ratios) {
      ++rep.cases;
      if (!drift_bound_holds(ClockSpec{ri, 0}, ClockSpec{rj, 0}, pi)) {
        if (rep.violations++ == 0) {
          rep.first_violation = "ratios " + to_string(ri) + " and " +
                                to_string(rj);
        }
        rep.pass = false;
      }
    }
  }
  return rep;
}

PropertyReport check_mark_soundness(const TimingParams& tp,
                                    const GridSpec& grid,
                                    const std::vector<Cycle>& alphas,
                                    Cycle cycles) {
  tp.validate();
  const Rational pi = drift_horizon(tp.delta);
  PropertyReport rep;
  for (const auto& pair : clock_grid(tp.delta, grid)) {
    for (Cycle c = 1; c <= cycles; ++c) {
      const Cycle xi = first_affected_cycle(c, pair.sender, pair.receiver, tp);
      for (Cycle alpha : alphas) {
        const auto cands = mark_candidates(xi, alpha, pi);
        const Cycle next =
            first_affected_cycle(c + alpha, pair.sender, pair.receiver, tp);
        ++rep.cases;
        if (std::find(cands.begin(), cands.end(), next) == cands.end()) {
          if (rep.violations++ == 0) {
            rep.first_violation =
                "c=" + std::to_string(c) + " alpha=" + std::to_string(alpha) +
                " mark=" + std::to_string(next) + " from " + std::to_string(xi);
          }
          rep.pass = false;
        }
      }
    }
  }
  return rep;
}

PropertyReport check_transfer_properties(
    const TimingParams& tp, const GridSpec& grid,
    const std::vector<std::uint8_t>& message, Cycle k, Cycle n) {
  SimConfig cfg;
  cfg.tp = tp;
  cfg.message = message;
  cfg.k = k;
  cfg.n = n;
  cfg.validate();
  const Frame frame = encode_frame(message);
  PropertyReport rep;
  auto violate = [&rep](const std::string& what) {
    if (rep.violations++ == 0) rep.first_violation = what;
    rep.pass = false;
  };

  for (const auto& pair : clock_grid(tp.delta, grid)) {
    const Bus bus = build_bus(cfg, pair);
    const ClockSpec& rc = pair.receiver;
    for (int branch = 0; branch < 2; ++branch) {
      ResolutionOracle oracle(std::vector<bool>(
          static_cast<std::size_t>(bus.horizon) + 1, branch == 1));
      AnalogRegConfig rcfg;
      rcfg.clock = rc;
      rcfg.ce = Signal::constant(SignalValue::One, edge_time(rc, 0) - 1,
                                 edge_time(rc, bus.horizon + 2));
      rcfg.input = bus.signal;
      rcfg.tp = tp;
      AnalogRegister reg(std::move(rcfg), oracle);

      for (std::size_t j = 0; j < frame.bits.size(); ++j) {
        const Cycle c = cfg.start_cycle + kCopiesPerBit * static_cast<Cycle>(j);
        const SignalValue bit = from_bit(frame.bits[j]);
        const Cycle xi = first_affected_cycle(c, pair.sender, rc, tp);
        const int beta = metastability_factor(xi, c, pair.sender, rc, tp);
        const TimeInterval ssw = safe_sampling_window(c, k, pair.sender, tp);
        const std::string where = "sender ratio " +
                                  to_string(pair.sender.ratio) +
                                  ", receiver " + to_string(rc.ratio) + " @ " +
                                  to_string(rc.phase) + ", bit " +
                                  std::to_string(j);
        auto window_inside = [&](Cycle edge) {
          const TimeRat e = edge_time(rc, edge);
          return ssw.contains_closed(e - tp.t_s * rc.ratio,
                                     e + tp.t_h * rc.ratio);
        };
        // Windows are large enough for n + 1 samples.
        for (Cycle x = 0; x <= n; ++x) {
          ++rep.cases;
          if (!window_inside(xi + beta + x)) {
            violate(where + ": sample " + std::to_string(x) +
                    " leaves the safe window");
          }
        }
        // Correct transfer for every edge inside the window.
        for (Cycle edge = std::max<Cycle>(1, xi - 1); edge <= xi + k + 2;
             ++edge) {
          if (edge > bus.horizon || !window_inside(edge)) continue;
          ++rep.cases;
          if (reg.end_value(edge) != bit) {
            violate(where + ": edge " + std::to_string(edge) +
                    " inside the window samples the wrong value");
          }
        }
        // Known inputs.
        for (Cycle x = 0; x <= n; ++x) {
          ++rep.cases;
          if (reg.end_value(xi + beta + x) != bit) {
            violate(where + ": sample " + std::to_string(x) +
                    " after the mark is wrong");
          }
        }
      }
    }
  }
  return rep;
}

void write_verdict(std::ostream& out, const Verdict& verdict) {
  out << (verdict.pass ? "PASS" : "FAIL") << '\n';
  for (const auto& b : verdict.per_byte) {
    out << "byte i=" << b.index << " sent=" << to_hex(b.sent)
        << " recv=" << to_hex(b.received) << " nu=" << b.nu
        << " done=" << b.offset << '\n';
  }
  out << "adversaries=" << verdict.adversaries_checked << '\n';
  if (!verdict.offsets_seen.empty()) {
    out << "offsets=";
    bool first = true;
    for (int o : verdict.offsets_seen) {
      out << (first ? "" : ",") << o;
      first = false;
    }
    out << '\n';
  }
  if (verdict.counterexample) {
    out << "reason=" << verdict.counterexample->reason << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "reset,strobe,diff,result,adversaries_checked\n";
  for (const auto& r : rows) {
    out << static_cast<int>(r.params.reset_value) << ','
        << static_cast<int>(r.params.strobe_value) << ',' << r.diff << ','
        << (r.verdict.pass ? "PASS" : "FAIL") << ','
        << r.verdict.adversaries_checked << '\n';
  }
}

}  // namespace flexsync
