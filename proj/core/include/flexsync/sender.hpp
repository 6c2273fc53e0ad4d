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

#ifndef FLEXSYNC_SENDER_HPP_
#define FLEXSYNC_SENDER_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "flexsync/timebase.hpp"

namespace flexsync {

inline constexpr int kCopiesPerBit = 8;
// Frame bits before the first byte start sequence (TSS, FSS).
inline constexpr int kHeaderBits = 2;
// Frame bits per byte: two start bits followed by eight data bits.
inline constexpr int kBitsPerByteSlot = 10;

// <TSS, FSS, BSS, m[0], ..., BSS, m[l-1], FES> with TSS = 0, FSS = 1,
// BSS = 10 and FES = 01. Data bits go out most significant bit first.
struct Frame {
  std::vector<bool> bits;
  std::size_t byte_count = 0;

  friend bool operator==(const Frame&, const Frame&) = default;
};

inline std::size_t frame_length(std::size_t byte_count) {
  return kHeaderBits + kBitsPerByteSlot * byte_count + 2;
}

// Frame-bit index of BSS[0] in front of byte i.
inline std::size_t bss0_bit_index(std::size_t byte_index) {
  return kHeaderBits + kBitsPerByteSlot * byte_index;
}

// Throws DomainError on an empty message.
Frame encode_frame(const std::vector<std::uint8_t>& message);

// Per-cycle inputs to the sender's output register. Element k is the value
// presented to the register at sender edge k + 1. Before the frame the bus
// idles high with the register disabled; each frame bit is then held for
// eight cycles with clock enable raised only on the first; a trailing idle
// period follows.
struct DriveLists {
  std::vector<bool> in_s;
  std::vector<bool> ce_s;
  Cycle start_cycle = 1;
};

// Number of idle-high cycles appended after the frame.
inline constexpr int kTrailingIdleCycles = 16;

// Throws DomainError if c == 0.
DriveLists drive_lists(const Frame& frame, Cycle c);

// Clock-enable discipline for a frame of `byte_count` bytes starting at c:
// for every frame bit j, ce_s[c - 1 + 8j] = 1 and ce_s[c - 1 + 8j + y] = 0
// for y in [1 : k]. Throws DomainError if the list is too short.
bool wf_ce(const std::vector<bool>& ce_s, std::size_t byte_count, int k,
           Cycle c);

// Byte start sequences in place: for every byte i and y in [0 : 7],
// in_s[c + 80i + 16 + y - 1] = 1 and in_s[c + 80i + 24 + y - 1] = 0.
// Throws DomainError if the list is too short.
bool wf_in(const std::vector<bool>& in_s, std::size_t byte_count, Cycle c);

// "A5" -> {0xA5}. Throws ConfigError on an empty string, an odd number of
// digits or a non-hex character.
std::vector<std::uint8_t> parse_hex(std::string_view hex);
std::string to_hex(const std::vector<std::uint8_t>& bytes);
std::string to_hex(std::uint8_t byte);

}  // namespace flexsync

#endif  // FLEXSYNC_SENDER_HPP_
