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

#include "flexsync/receiver.hpp"

#include <ostream>
#include <string>

#include "flexsync/errors.hpp"

namespace flexsync {

void ReceiverParams::validate() const {
  if (reset_value > 7 || strobe_value > 7) {
    throw DomainError("counter values must lie in [0, 7]");
  }
}

namespace {

constexpr std::string_view kStateNames[] = {
    "idle", "TSS", "FSS", "BSS0", "BSS1", "B0", "B1",
    "B2",   "B3",  "B4",  "B5",   "B6",   "B7", "FES",
};

}  // namespace

std::string_view to_string(AutomatonState state) {
  return kStateNames[static_cast<int>(state)];
}

std::optional<AutomatonState> parse_automaton_state(std::string_view name) {
  for (int i = 0; i < static_cast<int>(std::size(kStateNames)); ++i) {
    if (kStateNames[i] == name) return static_cast<AutomatonState>(i);
  }
  return std::nullopt;
}

bool majority5_mux(const std::array<bool, 5>& bits) {
  std::vector<bool> v{bits[0]};
  for (int i = 1; i < 5; ++i) {
    if (bits[i]) {
      v.push_back(true);
    } else {
      v.insert(v.begin(), false);
    }
  }
  return v[2];
}

bool majority5_count(const std::array<bool, 5>& bits) {
  int ones = 0;
  for (bool b : bits) ones += b ? 1 : 0;
  return ones >= 3;
}

ReceiverState receiver_init(const ReceiverParams& params,
                            const std::optional<ReceiverState>& initial) {
  params.validate();
  if (initial) return *initial;
  return ReceiverState{};
}

ReceiverState receiver_idle_state(const ReceiverParams& params) {
  params.validate();
  ReceiverState s;
  s.rR = true;
  s.rRH = true;
  s.sh4 = {true, true, true, true};
  s.v_prev = true;
  return s;
}

bool voted_bit(const ReceiverState& state) {
  return majority5_mux(
      {state.rRH, state.sh4[0], state.sh4[1], state.sh4[2], state.sh4[3]});
}

std::pair<ReceiverState, StepOutputs> receiver_step(
    const ReceiverState& state, bool inp, const ReceiverParams& params) {
  StepOutputs out;
  out.v = voted_bit(state);
  out.sync = out.v != state.v_prev && (state.z == AutomatonState::Bss1 ||
                                       state.z == AutomatonState::Idle);
  out.strobe = state.cnt == params.strobe_value && !out.sync;
  out.rb_we = out.strobe && state.z == AutomatonState::B7;

  ReceiverState next = state;
  next.rR = inp;
  next.rRH = state.rR;
  next.sh4 = {state.rRH, state.sh4[0], state.sh4[1], state.sh4[2]};
  next.v_prev = out.v;
  next.cnt = out.sync ? params.reset_value
                      : static_cast<std::uint8_t>((state.cnt + 1) % 8);

  if (state.z == AutomatonState::Idle) {
    if (out.sync && !out.v) next.z = AutomatonState::Tss;
  } else if (out.strobe) {
    next.byte_sh = static_cast<std::uint8_t>((state.byte_sh << 1) | out.v);
    switch (state.z) {
      case AutomatonState::Tss:
        next.z = out.v ? AutomatonState::Idle : AutomatonState::Fss;
        break;
      case AutomatonState::Fss:
        next.z = AutomatonState::Bss0;
        break;
      case AutomatonState::Bss0:
        next.z = out.v ? AutomatonState::Bss1 : AutomatonState::Fes;
        break;
      case AutomatonState::Bss1:
        next.z = AutomatonState::B0;
        break;
      case AutomatonState::B7:
        next.z = AutomatonState::Bss0;
        next.received.push_back(next.byte_sh);
        break;
      case AutomatonState::Fes:
        next.z = AutomatonState::Idle;
        break;
      default:  // B0 .. B6
        next.z = static_cast<AutomatonState>(static_cast<int>(state.z) + 1);
        break;
    }
  }
  return {std::move(next), out};
}

void write_trace_header(std::ostream& out) {
  out << "cycle,inp,rR,rRH,sh4,v,sync,cnt,strobe,z,byte_sh,rb_we\n";
}

void write_trace_row(std::ostream& out, const TraceRow& row) {
  const ReceiverState& s = row.state;
  std::string sh4;
  for (bool b : s.sh4) sh4 += b ? '1' : '0';
  std::string byte;
  for (int b = 7; b >= 0; --b) byte += ((s.byte_sh >> b) & 1) ? '1' : '0';
  out << row.cycle << ',' << row.inp << ',' << s.rR << ',' << s.rRH << ','
      << sh4 << ',' << row.out.v << ',' << row.out.sync << ','
      << static_cast<int>(s.cnt) << ',' << row.out.strobe << ','
      << to_string(s.z) << ',' << byte << ',' << row.out.rb_we << '\n';
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  write_trace_header(out);
  for (const auto& row : rows) write_trace_row(out, row);
}

}  // namespace flexsync
