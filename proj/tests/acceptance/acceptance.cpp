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

// Acceptance report: one PASS/FAIL line per criterion.
//
// Criteria 3 and 5 contain expectations the exact model does not meet (see
// "Known deviations" in the README). Their lines still print FAIL; the exit
// status only turns non-zero when some other criterion fails, or when one
// of those two fails in a way other than the documented one.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "flexsync/checker.hpp"
#include "flexsync/receiver.hpp"

using namespace flexsync;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  // true if a failure is exactly the documented deviation
  bool known = false;
};

std::string offsets_str(const std::set<int>& offsets) {
  std::string s;
  for (int o : offsets) s += (s.empty() ? "" : ",") + std::to_string(o);
  return s;
}

Outcome criterion1() {
  for (int v = 0; v < 32; ++v) {
    const std::array<bool, 5> b = {(v & 16) != 0, (v & 8) != 0, (v & 4) != 0,
                                   (v & 2) != 0, (v & 1) != 0};
    if (majority5_mux(b) != majority5_count(b)) {
      return {false, "mismatch at input " + std::to_string(v)};
    }
  }
  return {true, "32 inputs"};
}

Outcome criterion2() {
  const Verdict v = check_voted_bit(4);
  const Verdict mutated = check_voted_bit(3);
  Outcome o;
  o.pass = v.pass && !mutated.pass;
  o.detail = "cases=" + std::to_string(v.adversaries_checked) +
             " mutated_delay3=" + (mutated.pass ? "PASS" : "FAIL");
  return o;
}

Outcome criterion3() {
  const ReceiverParams params{0, 2};
  const BssTraversalReport listed =
      check_bss_traversal(params, bss_listed_starts());
  std::set<std::pair<AutomatonState, int>> failing;
  for (const auto& c : listed.cases) {
    if (!c.pass) failing.insert({c.start.z, c.start.cnt});
  }
  SimConfig cfg;
  cfg.message = {0xA5, 0x3C, 0x0F};
  const auto observed = observe_bss_starts(cfg, {5, 16});
  const BssTraversalReport seen = check_bss_traversal(params, observed);

  std::ostringstream d;
  d << "listed cases=" << listed.verdict.adversaries_checked
    << " failing starts=";
  bool first = true;
  for (const auto& [z, cnt] : failing) {
    d << (first ? "" : ";") << to_string(z) << '/' << cnt;
    first = false;
  }
  d << " | observed starts=" << observed.size()
    << " cases=" << seen.verdict.adversaries_checked << ' '
    << (seen.verdict.pass ? "PASS" : "FAIL");
  Outcome o;
  o.pass = listed.verdict.pass;
  o.detail = d.str();
  const std::set<std::pair<AutomatonState, int>> expected = {
      {AutomatonState::Bss0, 2}, {AutomatonState::B7, 3},
      {AutomatonState::B7, 4}};
  o.known = !o.pass && failing == expected && seen.verdict.pass;
  return o;
}

Outcome criterion4() {
  SimConfig cfg;
  const GridSpec grid{5, 16};
  const std::vector<std::vector<std::uint8_t>> messages = {
      {0xA5}, {0xA5, 0x3C}, {0xA5, 0x3C, 0x0F}};
  std::ostringstream d;
  bool pass = true;
  std::set<int> all;
  for (const auto& msg : messages) {
    cfg.message = msg;
    const Verdict v = verify_theorem(cfg, grid);
    pass = pass && v.pass;
    all.insert(v.offsets_seen.begin(), v.offsets_seen.end());
    d << "l=" << msg.size() << " exhaustive " << (v.pass ? "PASS" : "FAIL")
      << " adversaries=" << v.adversaries_checked << "; ";
  }
  VerifyOptions sampled;
  sampled.streams = VerifyOptions::Streams::Sampled;
  sampled.max_ones = 2;
  sampled.random_count = 1000;
  const Verdict s = verify_theorem(cfg, grid, sampled);
  pass = pass && s.pass;
  all.insert(s.offsets_seen.begin(), s.offsets_seen.end());
  d << "l=3 sampled " << (s.pass ? "PASS" : "FAIL")
    << " runs=" << s.adversaries_checked << "; offsets=" << offsets_str(all);
  pass = pass && !all.empty() && *all.begin() >= 78 && *all.rbegin() <= 81;
  return {pass, d.str()};
}

Outcome criterion5() {
  SimConfig cfg;
  cfg.message = {0xA5};
  const std::vector<ReceiverParams> pairs = {{0, 1}, {0, 2}, {0, 3}, {2, 5},
                                             {0, 4}, {0, 0}};
  const auto rows = sweep_strobe_reset(cfg, pairs, {5, 16});
  std::ostringstream d;
  bool pass = true;
  bool only_diff4 = true;
  for (const auto& r : rows) {
    const bool want = r.diff >= 1 && r.diff <= 3;
    const bool ok = r.verdict.pass == want &&
                    (r.verdict.pass || r.verdict.counterexample.has_value());
    pass = pass && ok;
    if (!ok && r.diff != 4) only_diff4 = false;
    d << static_cast<int>(r.params.reset_value) << ':'
      << static_cast<int>(r.params.strobe_value) << '='
      << (r.verdict.pass ? "PASS" : "FAIL") << (ok ? "" : "(expected FAIL)")
      << ' ';
  }
  return {pass, d.str(), !pass && only_diff4};
}

Outcome criterion6() {
  TimingParams tp;
  const PropertyReport r =
      check_transfer_properties(tp, {5, 16}, {0xA5, 0x3C}, 7, 6);
  return {r.pass, "cases=" + std::to_string(r.cases) +
                      " violations=" + std::to_string(r.violations) +
                      (r.pass ? "" : " first=" + r.first_violation)};
}

Outcome criterion7() {
  std::ostringstream d;
  bool pass = true;
  for (const Rational& delta :
       {Rational(1, 15), Rational(1, 100), Rational(1, 200)}) {
    const PropertyReport r = check_drift_bound(delta, 5);
    pass = pass && r.pass;
    d << to_string(delta) << ':' << r.cases << (r.pass ? " ok " : " VIOLATED ");
  }
  return {pass, d.str()};
}

Outcome criterion8() {
  TimingParams tp;
  const PropertyReport r =
      check_mark_soundness(tp, {5, 16}, {8, 16, 72, 80}, 200);
  return {r.pass, "cases=" + std::to_string(r.cases) +
                      " violations=" + std::to_string(r.violations) +
                      (r.pass ? "" : " first=" + r.first_violation)};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4,
      criterion5, criterion6, criterion7, criterion8};
  int unexpected = 0;
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL")
              << " (" << t << ") " << o.detail
              << (!o.pass && o.known ? " [known deviation]" : "") << std::endl;
    if (!o.pass) {
      ++failed;
      if (!o.known) ++unexpected;
    }
  }
  std::cout << "summary: " << criteria.size() - failed << " PASS, " << failed
            << " FAIL, " << unexpected << " unexpected" << std::endl;
  return unexpected == 0 ? 0 : 1;
}
