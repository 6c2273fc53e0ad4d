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

#ifndef FLEXSYNC_CHECKER_HPP_
#define FLEXSYNC_CHECKER_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flexsync/analogbus.hpp"
#include "flexsync/receiver.hpp"
#include "flexsync/sender.hpp"
#include "flexsync/timebase.hpp"

namespace flexsync {

// One sender, one receiver, one message.
struct SimConfig {
  TimingParams tp;
  ClockSpec sender_clock;
  ClockSpec receiver_clock;
  ReceiverParams params;
  std::vector<std::uint8_t> message;
  // Sender cycle at which TSS goes out; earlier cycles idle the bus high.
  Cycle start_cycle = 16;
  // Hold length of every bit (safe sampling window) and good-sample count.
  Cycle k = 7;
  Cycle n = 6;

  // Throws DomainError on an empty message, c == 0, invalid timing or
  // counter values, or unless n + 1 <= k <= floor(pi) (pi is unbounded for
  // delta == 0).
  void validate() const;
};

// Adversary grid densities. Ratios are spread evenly over [1-delta, 1+delta]
// (a single point means the reference ratio); receiver phases are
// j * ratio / phase_points for j < phase_points. The sender phase is 0.
struct GridSpec {
  int ratio_points = 5;
  int phase_points = 16;

  void validate() const;
};

std::vector<Rational> ratio_grid(const Rational& delta, int points);
std::vector<Rational> phase_grid(const Rational& ratio, int points);

struct ClockPair {
  ClockSpec sender;
  ClockSpec receiver;

  friend bool operator==(const ClockPair&, const ClockPair&) = default;
};

// Sender ratio, then receiver ratio, then receiver phase, ascending.
std::vector<ClockPair> clock_grid(const Rational& delta, const GridSpec& grid);

// One complete assignment of the nondeterminism: both clocks and the bits
// that resolve every metastable sample.
struct AdversaryChoice {
  ClockSpec sender;
  ClockSpec receiver;
  std::vector<bool> resolution;

  friend bool operator==(const AdversaryChoice&, const AdversaryChoice&) =
      default;
};

// Frame bit boundaries of an l-byte frame, each of which may cause at most
// one metastable receiver sample.
std::size_t resolution_stream_length(std::size_t byte_count);

// Cartesian product clock_grid x {0,1}^L in lexicographic order, the
// resolution stream counting up as a binary number with its first element
// most significant.
class AdversaryEnumerator {
 public:
  // Throws DomainError if L exceeds 62 bits.
  AdversaryEnumerator(const SimConfig& config, const GridSpec& grid);

  std::uint64_t size() const;
  bool next(AdversaryChoice& out);

 private:
  std::vector<ClockPair> clocks_;
  std::size_t stream_length_;
  std::size_t clock_index_ = 0;
  std::uint64_t stream_index_ = 0;
};

// Streams of length L with at most `max_ones` ones, by weight then
// lexicographically.
std::vector<std::vector<bool>> low_weight_streams(std::size_t length,
                                                  int max_ones);
// Reproducible uniformly random streams.
std::vector<std::vector<bool>> random_streams(std::size_t length,
                                              std::size_t count,
                                              std::uint64_t seed);

// Receiver cycle horizon of a run: a few cycles past the mark of the last
// frame bit.
Cycle transmission_horizon(const SimConfig& config, const ClockPair& clocks);

struct Transcript {
  std::vector<TraceRow> rows;
  // Sender output register as seen on the bus.
  Signal bus;
  std::size_t resolutions_used = 0;
};

struct TransmissionResult {
  Transcript transcript;
  ReceiverState final_state;
};

// Drives the frame through the sender output register, the bus and the
// receiver input register (clock enable tied high), samples that register at
// the end of every receiver cycle and clocks the digital receiver with the
// result. Throws DomainError on invalid configuration or clocks outside the
// jitter bound, ConfigError when the resolution stream runs out.
TransmissionResult run_transmission(const SimConfig& config,
                                    const AdversaryChoice& adversary);

// Per receiver cycle: 0 or 1 when the input register samples a stable value,
// -1 when it goes metastable and the adversary picks the bit.
std::vector<std::int8_t> input_schedule(const SimConfig& config,
                                        const ClockPair& clocks);

struct ByteReport {
  std::size_t index = 0;
  std::uint8_t sent = 0;
  std::uint8_t received = 0;
  // Mark of BSS[0] and of BSS[1] in front of this byte.
  Cycle nu = 0;
  Cycle bss1_mark = 0;
  // Cycle of the B7 strobe relative to nu; the byte register holds the byte
  // one cycle later.
  int offset = 0;
  // offset decomposed into drift (bss1_mark - nu - 8) and a late-resolution
  // delay.
  int chi = 0;
  int beta = 0;
};

struct Counterexample {
  std::optional<AdversaryChoice> adversary;
  std::string reason;
  std::string trace_csv;
  std::string signal_dump;
};

struct Verdict {
  bool pass = true;
  std::vector<ByteReport> per_byte;
  std::optional<Counterexample> counterexample;
  std::uint64_t adversaries_checked = 0;
  std::set<int> offsets_seen;
};

// Completion offsets accepted for a strobe-reset difference d:
// [76 + d, 79 + d], i.e. 78..81 for the default d = 2.
int min_completion_offset(const ReceiverParams& params);
int max_completion_offset(const ReceiverParams& params);

struct VerifyOptions {
  enum class Streams {
    // Every resolution stream, explored as a merged state frontier.
    Exhaustive,
    // Explicit streams: all with at most `max_ones` ones plus `random_count`
    // seeded random ones, each replayed through run_transmission.
    Sampled,
  };
  Streams streams = Streams::Exhaustive;
  int max_ones = 2;
  std::size_t random_count = 1000;
  std::uint64_t seed = 1;
};

// Checks, for every clock pair on the grid and every resolution stream, that
// each byte is received intact, that its B7 strobe lands within the accepted
// offsets of its BSS[0] mark, and that the observed BSS[1] mark is one of the
// candidates predicted from BSS[0] and accounts for the offset. The first
// failing adversary in enumeration order is replayed into a counterexample.
Verdict verify_theorem(const SimConfig& config, const GridSpec& grid,
                       const VerifyOptions& options = {});

// Same check over an explicit list of clock pairs.
Verdict verify_clocks(const SimConfig& config,
                      const std::vector<ClockPair>& clocks,
                      const VerifyOptions& options = {});

// Checks a single adversary; the verdict carries its byte reports.
Verdict check_adversary(const SimConfig& config,
                        const AdversaryChoice& adversary);

struct SweepRow {
  ReceiverParams params;
  int diff = 0;
  Verdict verdict;
};

SweepRow sweep_pair(const SimConfig& config, const ReceiverParams& pair,
                    const GridSpec& grid, const VerifyOptions& options = {});

std::vector<SweepRow> sweep_strobe_reset(
    const SimConfig& config, const std::vector<ReceiverParams>& pairs,
    const GridSpec& grid, const VerifyOptions& options = {});

// Voted-bit latency: for b in {0,1}, every initial pipeline (rR, rRH, sh4,
// v_prev) and every continuation after seven cycles of b, v == b on cycles
// first_good .. 10. The property holds for first_good = 4.
Verdict check_voted_bit(int first_good = 4);

struct BssStart {
  AutomatonState z;
  std::uint8_t cnt;

  friend bool operator==(const BssStart&, const BssStart&) = default;
};

// (BSS0, {2,3}), (FSS, {1,2}), (B7, {1,2,3,4}).
std::vector<BssStart> bss_listed_starts();

struct BssCase {
  BssStart start;
  // BSS[1] mark at t + 7 + shift.
  int shift = 0;
  bool pass = true;
  std::set<int> arrivals;
};

struct BssTraversalReport {
  Verdict verdict;
  std::vector<BssCase> cases;
};

// Digital-only traversal of the byte start sequence from a BSS[0] mark at t:
// inputs t+1 .. t+6+shift are 1, input t+7+shift is free, the following ones
// are 0; input t and the seven cycles of history before t are arbitrary, and
// the pipeline registers are whatever that history leaves. From every start
// the machine must reach B0 with the counter one past the strobe value at
// step 15 + shift or 16 + shift, i.e. within 15..18 over the three shifts.
// Those step counts are the ones of a strobe-reset difference of two; other
// differences arrive earlier or later and fail.
BssTraversalReport check_bss_traversal(const ReceiverParams& params,
                                       const std::vector<BssStart>& starts,
                                       const std::vector<int>& shifts = {0, 1,
                                                                         2});

// A receiver configuration met at a BSS[0] mark during end-to-end runs,
// with the position of the following BSS[1] mark (t + 7 + shift).
struct BssObservation {
  BssStart start;
  int shift = 0;

  friend bool operator==(const BssObservation&, const BssObservation&) =
      default;
};

// Every configuration any adversary on the grid can drive the receiver into
// at the BSS[0] mark of any byte, sorted by state, counter and shift.
std::vector<BssObservation> observe_bss_starts(const SimConfig& config,
                                               const GridSpec& grid);

// The traversal check restricted to observed (start, shift) combinations.
BssTraversalReport check_bss_traversal(
    const ReceiverParams& params,
    const std::vector<BssObservation>& observations);

struct PropertyReport {
  bool pass = true;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::string first_violation;
};

// Pi/(pi+1) <= min/max ratio for every pair of grid ratios.
PropertyReport check_drift_bound(const Rational& delta, int ratio_points);

// For every clock pair, sender cycles c in [1, cycles] and each alpha: the
// mark of c + alpha is among mark_candidates(mark of c, alpha, pi).
PropertyReport check_mark_soundness(const TimingParams& tp,
                                    const GridSpec& grid,
                                    const std::vector<Cycle>& alphas,
                                    Cycle cycles);

// Analog transfer properties at every frame bit boundary of `message`:
// receiver samples that fall inside the safe sampling window return the sent
// bit, the n+1 samples starting at mark + beta lie inside the window, and
// those samples return the sent bit whichever way metastability resolves
// (all-zero and all-one resolution streams).
PropertyReport check_transfer_properties(const TimingParams& tp,
                                         const GridSpec& grid,
                                         const std::vector<std::uint8_t>& message,
                                         Cycle k, Cycle n);

// "PASS"/"FAIL", one "byte i=.. sent=.. recv=.. nu=.. done=.." line per byte,
// then adversaries, offsets and (on failure) reason lines.
void write_verdict(std::ostream& out, const Verdict& verdict);

// reset,strobe,diff,result,adversaries_checked
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace flexsync

#endif  // FLEXSYNC_CHECKER_HPP_
