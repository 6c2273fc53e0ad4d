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

#ifndef FLEXSYNC_RECEIVER_HPP_
#define FLEXSYNC_RECEIVER_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace flexsync {

// Counter compare values. The difference strobe - reset (mod 8) decides how
// many cycles after a synchronization edge the first copy is stored.
struct ReceiverParams {
  std::uint8_t reset_value = 0;
  std::uint8_t strobe_value = 2;

  // Throws DomainError unless both values are in [0, 7].
  void validate() const;
  // (strobe - reset) mod 8.
  int difference() const { return (strobe_value - reset_value + 8) % 8; }

  friend bool operator==(const ReceiverParams&, const ReceiverParams&) =
      default;
};

enum class AutomatonState : std::uint8_t {
  Idle,
  Tss,
  Fss,
  Bss0,
  Bss1,
  B0,
  B1,
  B2,
  B3,
  B4,
  B5,
  B6,
  B7,
  Fes,
};

std::string_view to_string(AutomatonState state);
// Inverse of to_string; nullopt for unknown names.
std::optional<AutomatonState> parse_automaton_state(std::string_view name);

inline AutomatonState data_state(int bit) {
  return static_cast<AutomatonState>(static_cast<int>(AutomatonState::B0) +
                                     bit);
}

struct ReceiverState {
  bool rR = false;
  bool rRH = false;
  // History of rRH, most recent first.
  std::array<bool, 4> sh4{};
  bool v_prev = false;
  std::uint8_t cnt = 0;
  AutomatonState z = AutomatonState::Idle;
  std::uint8_t byte_sh = 0;
  std::vector<std::uint8_t> received;

  friend bool operator==(const ReceiverState&, const ReceiverState&) = default;
  friend auto operator<=>(const ReceiverState&, const ReceiverState&) = default;
};

struct StepOutputs {
  bool v = false;
  bool sync = false;
  bool strobe = false;
  bool rb_we = false;

  friend bool operator==(const StepOutputs&, const StepOutputs&) = default;
};

// Five-input majority as a cascade of multiplexers: start from [b0]; each
// further bit appends a 1 on the right when set, or prepends a 0 on the left
// when clear; the vote is element 2 of the final vector.
bool majority5_mux(const std::array<bool, 5>& bits);

// Reference majority: at least three ones.
bool majority5_count(const std::array<bool, 5>& bits);

// All-zero registers, counter 0, automaton idle; or `initial` verbatim.
ReceiverState receiver_init(const ReceiverParams& params,
                            const std::optional<ReceiverState>& initial = {});

// Pipeline registers loaded with a long idle-high history.
ReceiverState receiver_idle_state(const ReceiverParams& params);

// The voted bit seen by the current state: majority of rRH and sh4.
bool voted_bit(const ReceiverState& state);

// One clock cycle of the input stage and control automaton.
//
// Combinational, from the current registers:
//   v      = majority5(rRH, sh4)
//   sync   = v != v_prev and z in {BSS1, idle}
//   strobe = cnt == strobe_value and not sync
//   rb_we  = strobe and z == B7
// Next state:
//   rR <- inp, rRH <- rR, sh4 <- rRH shifted in, v_prev <- v
//   cnt <- reset_value on sync, else cnt + 1 mod 8
//   on strobe, byte_sh shifts in v and z advances:
//     TSS -> FSS -> BSS0 -> BSS1 -> B0 -> ... -> B7 -> BSS0;
//     BSS0 strobing a 0 means the frame end sequence: BSS0 -> FES -> idle;
//     TSS strobing a 1 is a false start and returns to idle.
//   In idle a falling synchronization edge enters TSS.
//   rb_we appends the completed byte to `received`.
std::pair<ReceiverState, StepOutputs> receiver_step(const ReceiverState& state,
                                                    bool inp,
                                                    const ReceiverParams& params);

// One row of a per-cycle trace: the registers at the start of the cycle, the
// input sampled during it and the combinational outputs.
struct TraceRow {
  std::int64_t cycle = 0;
  bool inp = false;
  ReceiverState state;
  StepOutputs out;
};

// CSV columns: cycle,inp,rR,rRH,sh4,v,sync,cnt,strobe,z,byte_sh,rb_we
void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, const TraceRow& row);
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);

}  // namespace flexsync

#endif  // FLEXSYNC_RECEIVER_HPP_
