/*
 * Copyright 2026 The tccsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcc/checker/brute_force.hpp"
#include "tcc/checker/certificate.hpp"
#include "tcc/checker/trace_checks.hpp"
#include "tcc/config.hpp"
#include "tcc/json_io.hpp"
#include "tcc/runner.hpp"

namespace {

// Exit codes: 0 success/satisfied, 1 violated, 2 undecided, 3 the run
// deadlocked or stalled, 4 malformed input file, 64 usage error.
constexpr int kExitViolated = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitRunFailed = 3;
constexpr int kExitMalformed = 4;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

tcc::RunConfig load_config(const std::string& config_path,
                           const std::vector<std::string>& sets,
                           std::uint64_t seed, bool seed_given) {
  tcc::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = tcc::parse_config(read_file(config_path));
    for (const std::string& kv : sets) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw UsageError("--set expects key=value, got \"" + kv + "\"");
      }
      tcc::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed_given) {
      cfg.seed = seed;
      cfg.seed_set = true;
    }
    tcc::validate_config(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

int cmd_run(const std::string& config_path,
            const std::vector<std::string>& sets, std::uint64_t seed,
            bool seed_given, const std::string& out_dir) {
  const tcc::RunConfig cfg = load_config(config_path, sets, seed, seed_given);
  const tcc::RunArtifacts a = tcc::run_workload(cfg);
  tcc::write_artifacts(out_dir, cfg, a);

  if (!a.result.ok()) {
    std::cerr << "run failed ("
              << (a.result.status == tcc::RunStatus::Deadlock ? "deadlock"
                                                              : "stall")
              << "):\n"
              << a.result.diagnostics << '\n';
    return kExitRunFailed;
  }
  std::cout << "events: " << a.result.history.events.size()
            << "  duration_ms: " << a.metrics.duration_ms
            << "  throughput_ops_s: " << a.metrics.throughput_ops_per_s
            << "  settled: " << (a.result.settled ? "yes" : "no") << '\n';
  if (!a.result.settled) {
    std::cout << "unstable versions: " << a.result.unstable.size() << '\n';
  }
  std::cout << "wrote " << out_dir << "/{history.jsonl, trace.jsonl, "
            << "metrics.json, config.json}\n";
  return 0;
}

int cmd_check(const std::string& history_path, const std::string& trace_path,
              const std::string& mode, std::size_t bound) {
  tcc::History history;
  tcc::HistoryMeta hmeta;
  try {
    std::ifstream in(history_path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + history_path);
    std::tie(history, hmeta) = tcc::read_history(in);
    tcc::validate_history(history);
  } catch (const std::invalid_argument& e) {
    throw MalformedError(e.what());
  }

  bool violated = false;
  bool undecided = false;
  auto account = [&](const tcc::Verdict& v) {
    if (v.status == tcc::VerdictStatus::Violated) violated = true;
    if (v.status == tcc::VerdictStatus::Undecided) undecided = true;
    std::cout << tcc::verdict_to_json(v) << '\n';
  };

  if (mode == "brute" || mode == "both") {
    account(tcc::check_brute_force(history, {bound}));
  }
  if (mode == "certificate" || mode == "both") {
    try {
      account(tcc::check_certificate(history));
    } catch (const std::invalid_argument& e) {
      throw MalformedError(e.what());
    }
  }

  if (!trace_path.empty()) {
    tcc::Trace trace;
    tcc::TraceMeta tmeta;
    try {
      std::ifstream in(trace_path, std::ios::binary);
      if (!in) throw UsageError("cannot open " + trace_path);
      std::tie(trace, tmeta) = tcc::read_trace(in);
    } catch (const std::invalid_argument& e) {
      throw MalformedError(e.what());
    }
    const tcc::TraceCheckReport rep =
        tcc::check_trace_invariants(history, trace, tmeta);
    std::vector<std::string> failures = rep.failures;
    for (std::string& f :
         tcc::check_operational_guarantees(history, trace, tmeta)) {
      failures.push_back(std::move(f));
    }
    std::cout << "{\n  \"mode\": \"trace\",\n  \"status\": \""
              << (failures.empty() ? "satisfied" : "violated")
              << "\",\n  \"failures\": " << failures.size() << "\n}\n";
    for (const std::string& f : failures) std::cerr << f << '\n';
    if (!failures.empty()) violated = true;
  }

  if (violated) return kExitViolated;
  if (undecided) return kExitUndecided;
  return 0;
}

int cmd_sweep(const std::string& config_path,
              const std::vector<std::string>& sets, std::uint64_t seed,
              bool seed_given, const std::string& axis_name,
              const std::vector<std::string>& values,
              const std::string& out_path) {
  const tcc::RunConfig base = load_config(config_path, sets, seed, seed_given);
  tcc::SweepAxis axis;
  try {
    axis = tcc::parse_axis(axis_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::vector<tcc::SweepRow> rows = tcc::run_sweep(base, axis, values);
  const std::string csv = tcc::sweep_csv(axis, rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + out_path);
    out << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replicated key-value simulator with per-operation "
               "consistency levels, plus history checkers"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::string history_path;
  std::string trace_path;
  std::string mode = "both";
  std::size_t bound = 8;
  std::string axis_name;
  std::vector<std::string> values;
  std::string out_path;

  CLI::App* run = app.add_subcommand("run", "Run one seeded workload");
  run->add_option("--config", config_path, "Config JSON file");
  run->add_option("--set", sets, "Override a config key (key=value)");
  CLI::Option* run_seed = run->add_option("--seed", seed, "Run seed");
  run->add_option("--out", out_dir, "Output directory (default: out)");

  CLI::App* check =
      app.add_subcommand("check", "Check a recorded history file");
  check->add_option("history", history_path, "History JSON-lines file")
      ->required();
  check->add_option("--trace", trace_path,
                    "Also replay and verify this trace file");
  check->add_option("--mode", mode, "brute, certificate, or both")
      ->check(CLI::IsMember({"brute", "certificate", "both"}));
  check->add_option("--bound", bound,
                    "Event-count limit of the exhaustive search");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Run one point per axis value, emit CSV");
  sweep->add_option("--config", config_path, "Config JSON file");
  sweep->add_option("--set", sets, "Override a config key (key=value)");
  CLI::Option* sweep_seed = sweep->add_option("--seed", seed, "Base seed");
  sweep->add_option("--axis", axis_name,
                    "readRatio, sessions, partitions, or levelCase")
      ->required();
  sweep->add_option("--values", values, "Axis values (comma separated)")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out", out_path, "CSV output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand(run)) {
      return cmd_run(config_path, sets, seed, !run_seed->empty(), out_dir);
    }
    if (app.got_subcommand(check)) {
      return cmd_check(history_path, trace_path, mode, bound);
    }
    return cmd_sweep(config_path, sets, seed, !sweep_seed->empty(), axis_name,
                     values, out_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MalformedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRunFailed;
  }
}
