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

#include "flexsync/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "flexsync/checker.hpp"
#include "flexsync/errors.hpp"

namespace flexsync::cli {
namespace {

struct Options {
  std::string message = "A53C0F";
  std::string delta = "1/200";
  int reset = 0;
  int strobe = 2;
  long long start_cycle = 16;

  int ratio_points = 5;
  int phase_points = 16;
  std::string streams = "exhaustive";
  int max_ones = 2;
  std::size_t random_streams = 1000;
  std::uint64_t seed = 1;

  std::string sender_ratio = "1";
  std::string receiver_ratio = "1";
  std::string receiver_phase = "0";
  std::string resolution;

  std::string pairs = "0:0,0:1,0:2,0:3,0:4,2:5";
  std::string starts = "listed";
  int first_good = 4;

  std::string trace_path;
  std::string dump_path;
  std::string verdict_path;
  std::string output_path;
  std::string trace_prefix;
};

void add_counter_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--reset", o.reset, "counter reset value")
      ->check(CLI::Range(0, 7));
  cmd->add_option("--strobe", o.strobe, "counter strobe value")
      ->check(CLI::Range(0, 7));
}

void add_sim_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--message", o.message, "message bytes in hex")->required();
  cmd->add_option("--delta", o.delta, "jitter bound, e.g. 1/200 or 0.005");
  cmd->add_option("--start-cycle", o.start_cycle, "sender cycle of TSS")
      ->check(CLI::PositiveNumber);
  add_counter_flags(cmd, o);
}

void add_grid_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--ratio-points", o.ratio_points, "clock ratios per clock")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--phase-points", o.phase_points, "receiver phases")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--streams", o.streams, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  cmd->add_option("--max-ones", o.max_ones,
                  "sampled mode: streams with at most this many ones")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--random-streams", o.random_streams,
                  "sampled mode: extra random streams");
  cmd->add_option("--seed", o.seed, "sampled mode: random seed");
}

SimConfig sim_config(const Options& o) {
  SimConfig cfg;
  cfg.message = parse_hex(o.message);
  cfg.tp.delta = parse_rational(o.delta);
  cfg.params.reset_value = static_cast<std::uint8_t>(o.reset);
  cfg.params.strobe_value = static_cast<std::uint8_t>(o.strobe);
  cfg.start_cycle = o.start_cycle;
  cfg.validate();
  return cfg;
}

GridSpec grid_spec(const Options& o) {
  GridSpec g{o.ratio_points, o.phase_points};
  g.validate();
  return g;
}

VerifyOptions verify_options(const Options& o) {
  VerifyOptions v;
  v.streams = o.streams == "sampled" ? VerifyOptions::Streams::Sampled
                                     : VerifyOptions::Streams::Exhaustive;
  v.max_ones = o.max_ones;
  v.random_count = o.random_streams;
  v.seed = o.seed;
  return v;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw ConfigError("cannot write '" + path + "'");
}

void emit_verdict(const Verdict& v, const Options& o, std::ostream& out) {
  std::ostringstream text;
  write_verdict(text, v);
  out << text.str();
  if (!o.verdict_path.empty()) write_file(o.verdict_path, text.str());
  if (v.counterexample) {
    if (!o.trace_path.empty()) {
      write_file(o.trace_path, v.counterexample->trace_csv);
    }
    if (!o.dump_path.empty()) {
      write_file(o.dump_path, v.counterexample->signal_dump);
    }
  }
}

std::vector<bool> parse_bits(const std::string& text) {
  std::vector<bool> bits;
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw ConfigError("resolution bits must be 0 or 1, got '" + text + "'");
    }
    bits.push_back(ch == '1');
  }
  return bits;
}

std::vector<ReceiverParams> parse_pairs(const std::string& text) {
  std::vector<ReceiverParams> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("pair '" + item + "' is not reset:strobe");
    }
    const Rational r = parse_rational(item.substr(0, colon));
    const Rational s = parse_rational(item.substr(colon + 1));
    if (r.denominator() != 1 || s.denominator() != 1 || r < Rational(0) ||
        r > Rational(7) || s < Rational(0) || s > Rational(7)) {
      throw ConfigError("pair '" + item + "' needs values in [0, 7]");
    }
    out.push_back({static_cast<std::uint8_t>(r.numerator()),
                   static_cast<std::uint8_t>(s.numerator())});
  }
  if (out.empty()) throw ConfigError("no reset:strobe pairs given");
  return out;
}

int do_run(const Options& o, std::ostream& out) {
  const SimConfig cfg = sim_config(o);
  AdversaryChoice adv;
  adv.sender = {parse_rational(o.sender_ratio), 0};
  adv.receiver = {parse_rational(o.receiver_ratio),
                  parse_rational(o.receiver_phase)};
  adv.resolution =
      o.resolution.empty()
          ? std::vector<bool>(resolution_stream_length(cfg.message.size()))
          : parse_bits(o.resolution);
  const Verdict v = check_adversary(cfg, adv);
  if (!o.trace_path.empty() || !o.dump_path.empty()) {
    const TransmissionResult result = run_transmission(cfg, adv);
    if (!o.trace_path.empty()) {
      std::ostringstream trace;
      write_trace_csv(trace, result.transcript.rows);
      write_file(o.trace_path, trace.str());
    }
    if (!o.dump_path.empty()) {
      std::ostringstream dump;
      dump_signal(result.transcript.bus, dump);
      write_file(o.dump_path, dump.str());
    }
  }
  Options quiet = o;
  quiet.trace_path.clear();
  quiet.dump_path.clear();
  emit_verdict(v, quiet, out);
  return v.pass ? kExitPass : kExitFail;
}

int do_verify(const Options& o, std::ostream& out) {
  const Verdict v = verify_theorem(sim_config(o), grid_spec(o), verify_options(o));
  emit_verdict(v, o, out);
  return v.pass ? kExitPass : kExitFail;
}

int do_sweep(const Options& o, std::ostream& out) {
  const auto pairs = parse_pairs(o.pairs);
  const auto rows =
      sweep_strobe_reset(sim_config(o), pairs, grid_spec(o), verify_options(o));
  std::ostringstream table;
  write_sweep_csv(table, rows);
  out << table.str();
  if (!o.output_path.empty()) write_file(o.output_path, table.str());
  bool all_pass = true;
  for (const auto& r : rows) {
    if (r.verdict.pass) continue;
    all_pass = false;
    if (!o.trace_prefix.empty() && r.verdict.counterexample) {
      write_file(o.trace_prefix + std::to_string(r.params.reset_value) + "_" +
                     std::to_string(r.params.strobe_value) + ".csv",
                 r.verdict.counterexample->trace_csv);
    }
  }
  return all_pass ? kExitPass : kExitFail;
}

int do_check_receiver(const Options& o, std::ostream& out) {
  ReceiverParams params{static_cast<std::uint8_t>(o.reset),
                        static_cast<std::uint8_t>(o.strobe)};
  BssTraversalReport rep;
  if (o.starts == "observed") {
    SimConfig cfg;
    cfg.message = parse_hex(o.message);
    cfg.tp.delta = parse_rational(o.delta);
    cfg.params = params;
    rep = check_bss_traversal(params, observe_bss_starts(cfg, grid_spec(o)));
  } else {
    rep = check_bss_traversal(params, bss_listed_starts());
  }
  out << (rep.verdict.pass ? "PASS" : "FAIL") << '\n';
  for (const auto& c : rep.cases) {
    out << "start z=" << to_string(c.start.z)
        << " cnt=" << static_cast<int>(c.start.cnt) << " shift=" << c.shift
        << " arrivals=";
    bool first = true;
    for (int a : c.arrivals) {
      out << (first ? "" : ",") << (a < 0 ? std::string("none") : std::to_string(a));
      first = false;
    }
    out << ' ' << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  out << "cases=" << rep.verdict.adversaries_checked << '\n';
  if (rep.verdict.counterexample) {
    out << "reason=" << rep.verdict.counterexample->reason << '\n';
    if (!o.trace_path.empty()) {
      write_file(o.trace_path, rep.verdict.counterexample->trace_csv);
    }
  }
  return rep.verdict.pass ? kExitPass : kExitFail;
}

int do_check_voted(const Options& o, std::ostream& out) {
  const Verdict v = check_voted_bit(o.first_good);
  out << (v.pass ? "PASS" : "FAIL") << '\n';
  out << "cases=" << v.adversaries_checked << '\n';
  if (v.counterexample) {
    out << "reason=" << v.counterexample->reason << '\n';
    if (!o.trace_path.empty()) {
      write_file(o.trace_path, v.counterexample->trace_csv);
    }
  }
  return v.pass ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Bit-clock synchronization simulator and checker", "flexsync"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "simulate one adversary");
  add_sim_flags(run, o);
  run->add_option("--sender-ratio", o.sender_ratio, "sender clock period");
  run->add_option("--receiver-ratio", o.receiver_ratio, "receiver clock period");
  run->add_option("--receiver-phase", o.receiver_phase,
                  "receiver edge 0 offset");
  run->add_option("--resolution", o.resolution,
                  "metastability resolution bits, e.g. 0110 (default zeros)");
  run->add_option("--trace", o.trace_path, "write the per-cycle CSV trace");
  run->add_option("--dump", o.dump_path, "write the bus signal dump");
  run->add_option("--verdict", o.verdict_path, "write the verdict text");

  auto* verify = app.add_subcommand("verify", "check every adversary on a grid");
  add_sim_flags(verify, o);
  add_grid_flags(verify, o);
  verify->add_option("--trace", o.trace_path, "counterexample CSV trace");
  verify->add_option("--dump", o.dump_path, "counterexample bus signal dump");
  verify->add_option("--verdict", o.verdict_path, "write the verdict text");

  auto* sweep = app.add_subcommand("sweep", "verify reset:strobe pairs");
  sweep->add_option("--message", o.message, "message bytes in hex")->required();
  sweep->add_option("--delta", o.delta, "jitter bound");
  sweep->add_option("--start-cycle", o.start_cycle, "sender cycle of TSS")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--pairs", o.pairs, "comma-separated reset:strobe pairs");
  add_grid_flags(sweep, o);
  sweep->add_option("--output", o.output_path, "write the CSV table");
  sweep->add_option("--trace-prefix", o.trace_prefix,
                    "counterexample traces go to <prefix><reset>_<strobe>.csv");

  auto* recv = app.add_subcommand("check-receiver",
                                  "byte start sequence traversal");
  add_counter_flags(recv, o);
  recv->add_option("--starts", o.starts,
                   "listed start states, or those observed in end-to-end runs")
      ->check(CLI::IsMember({"listed", "observed"}));
  recv->add_option("--message", o.message, "observed mode: message in hex");
  recv->add_option("--delta", o.delta, "observed mode: jitter bound");
  recv->add_option("--ratio-points", o.ratio_points, "observed mode: ratios")
      ->check(CLI::PositiveNumber);
  recv->add_option("--phase-points", o.phase_points, "observed mode: phases")
      ->check(CLI::PositiveNumber);
  recv->add_option("--trace", o.trace_path, "counterexample CSV trace");

  auto* voted = app.add_subcommand("check-voted", "voted-bit latency");
  voted->add_option("--first-good", o.first_good,
                    "first cycle at which the vote must hold")
      ->check(CLI::Range(0, 10));
  voted->add_option("--trace", o.trace_path, "counterexample CSV trace");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (run->parsed()) return do_run(o, out);
    if (verify->parsed()) return do_verify(o, out);
    if (sweep->parsed()) return do_sweep(o, out);
    if (recv->parsed()) return do_check_receiver(o, out);
    return do_check_voted(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace flexsync::cli
