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

#include "flexsync/sender.hpp"

#include "flexsync/errors.hpp"

namespace flexsync {

Frame encode_frame(const std::vector<std::uint8_t>& message) {
  if (message.empty()) throw DomainError("message must not be empty");
  Frame f;
  f.byte_count = message.size();
  f.bits.reserve(frame_length(message.size()));
  f.bits.push_back(false);  // TSS
  f.bits.push_back(true);   // FSS
  for (std::uint8_t byte : message) {
    f.bits.push_back(true);
    f.bits.push_back(false);
    for (int b = 7; b >= 0; --b) f.bits.push_back(((byte >> b) & 1) != 0);
  }
  f.bits.push_back(false);  // FES
  f.bits.push_back(true);
  return f;
}

DriveLists drive_lists(const Frame& frame, Cycle c) {
  if (c <= 0) throw DomainError("start cycle must be positive");
  DriveLists d;
  d.start_cycle = c;
  const std::size_t total = static_cast<std::size_t>(c - 1) +
                            kCopiesPerBit * frame.bits.size() +
                            kTrailingIdleCycles;
  d.in_s.assign(total, true);
  d.ce_s.assign(total, false);
  for (std::size_t j = 0; j < frame.bits.size(); ++j) {
    const std::size_t base = static_cast<std::size_t>(c - 1) + kCopiesPerBit * j;
    d.ce_s[base] = true;
    for (int y = 0; y < kCopiesPerBit; ++y) d.in_s[base + y] = frame.bits[j];
  }
  return d;
}

bool wf_ce(const std::vector<bool>& ce_s, std::size_t byte_count, int k,
           Cycle c) {
  const std::size_t bits = frame_length(byte_count);
  if (c <= 0 || k < 0) throw DomainError("wf_ce needs c > 0 and k >= 0");
  const std::size_t last =
      static_cast<std::size_t>(c - 1) + kCopiesPerBit * (bits - 1) + k;
  if (last >= ce_s.size()) throw DomainError("ce list too short");
  for (std::size_t j = 0; j < bits; ++j) {
    const std::size_t base = static_cast<std::size_t>(c - 1) + kCopiesPerBit * j;
    if (!ce_s[base]) return false;
    for (int y = 1; y <= k; ++y) {
      if (ce_s[base + y]) return false;
    }
  }
  return true;
}

bool wf_in(const std::vector<bool>& in_s, std::size_t byte_count, Cycle c) {
  if (c <= 0) throw DomainError("wf_in needs c > 0");
  if (byte_count == 0) return true;
  const std::size_t last =
      static_cast<std::size_t>(c) + 80 * (byte_count - 1) + 24 + 7 - 1;
  if (last >= in_s.size()) throw DomainError("input list too short");
  for (std::size_t i = 0; i < byte_count; ++i) {
    for (std::size_t y = 0; y < 8; ++y) {
      const std::size_t base = static_cast<std::size_t>(c) + 80 * i + y - 1;
      if (!in_s[base + 16] || in_s[base + 24]) return false;
    }
  }
  return true;
}

std::vector<std::uint8_t> parse_hex(std::string_view hex) {
  if (hex.empty()) throw ConfigError("empty hex message");
  if (hex.size() % 2 != 0) {
    throw ConfigError("hex message needs an even number of digits");
  }
  auto nibble = [&hex](char ch) -> int {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    throw ConfigError("bad hex digit in '" + std::string(hex) + "'");
  };
  std::vector<std::uint8_t> out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(nibble(hex[i]) * 16 +
                                            nibble(hex[i + 1])));
  }
  return out;
}

std::string to_hex(std::uint8_t byte) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  return {kDigits[byte >> 4], kDigits[byte & 15]};
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  for (std::uint8_t b : bytes) out += to_hex(b);
  return out;
}

}  // namespace flexsync
