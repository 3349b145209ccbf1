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

#include "tcc/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "tcc/json_io.hpp"
#include "tcc/rng.hpp"
#include "tcc/workload.hpp"

namespace tcc {

RunArtifacts run_workload(const RunConfig& cfg) {
  validate_config(cfg);
  const std::vector<SessionScript> scripts =
      generate_workload(cfg.workload, cfg.topology, cfg.seed);

  RunArtifacts a;
  a.result = run(cfg.topology, scripts, cfg.seed, cfg.sim);

  std::vector<DcId> session_home(scripts.size(), 0);
  for (const SessionScript& s : scripts) session_home[s.id] = s.home;
  a.metrics = compute_metrics(a.result.history, a.result.trace,
                              cfg.topology.dcs, session_home);

  a.history_meta.dims = cfg.topology.dcs;
  a.history_meta.partitions_per_dc = cfg.topology.partitions_per_dc;
  a.history_meta.session_home = std::move(session_home);
  a.history_meta.seed = cfg.seed;
  a.history_meta.level_case = std::string(to_string(cfg.workload.level_case));

  a.trace_meta.dims = cfg.topology.dcs;
  a.trace_meta.partitions_per_dc = cfg.topology.partitions_per_dc;
  a.trace_meta.skews = a.result.skews;
  a.trace_meta.disable_get_wait = cfg.sim.disable_get_wait;
  a.trace_meta.disable_put_wait = cfg.sim.disable_put_wait;
  a.trace_meta.stall_bound = cfg.topology.stall_bound;
  return a;
}

void write_artifacts(const std::string& dir, const RunConfig& cfg,
                     const RunArtifacts& a) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) {
      throw std::runtime_error(std::string("cannot write ") + dir + "/" +
                               name);
    }
    return out;
  };
  {
    std::ofstream out = open("history.jsonl");
    write_history(out, a.result.history, a.history_meta);
  }
  {
    std::ofstream out = open("trace.jsonl");
    write_trace(out, a.result.trace, a.trace_meta);
  }
  open("metrics.json") << metrics_to_json(a.metrics) << '\n';
  open("config.json") << config_to_json(cfg) << '\n';
}

SweepAxis parse_axis(std::string_view s) {
  if (s == "readRatio") return SweepAxis::ReadRatio;
  if (s == "sessions") return SweepAxis::Sessions;
  if (s == "partitions") return SweepAxis::Partitions;
  if (s == "levelCase") return SweepAxis::LevelCase;
  throw std::invalid_argument("unknown sweep axis \"" + std::string(s) +
                              "\"; expected readRatio, sessions, partitions, "
                              "or levelCase");
}

std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::ReadRatio: return "readRatio";
    case SweepAxis::Sessions: return "sessions";
    case SweepAxis::Partitions: return "partitions";
    case SweepAxis::LevelCase: return "levelCase";
  }
  throw std::logic_error("unreachable");
}

std::uint64_t sweep_point_seed(std::uint64_t base, std::size_t index) {
  return splitmix64(base ^ (static_cast<std::uint64_t>(index) + 1));
}

std::vector<SweepRow> run_sweep(const RunConfig& base, SweepAxis axis,
                                const std::vector<std::string>& values) {
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    RunConfig cfg = base;
    switch (axis) {
      case SweepAxis::ReadRatio:
        apply_override(cfg, "readRatio", values[i]);
        break;
      case SweepAxis::Sessions:
        apply_override(cfg, "sessionsPerDc", values[i]);
        break;
      case SweepAxis::Partitions:
        apply_override(cfg, "partitionsPerDc", values[i]);
        break;
      case SweepAxis::LevelCase:
        apply_override(cfg, "levelCase", values[i]);
        break;
    }
    cfg.seed = sweep_point_seed(base.seed, i);
    cfg.seed_set = true;

    SweepRow row;
    row.axis_value = values[i];
    row.seed = cfg.seed;
    RunArtifacts a = run_workload(cfg);
    if (!a.result.ok()) {
      throw std::runtime_error("sweep point " + values[i] +
                               " did not complete: " + a.result.diagnostics);
    }
    row.metrics = std::move(a.metrics);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << metrics_csv_header() << '\n';
  for (const SweepRow& r : rows) {
    out << metrics_csv_row(std::string(to_string(axis)), r.axis_value, r.seed,
                           r.metrics)
        << '\n';
  }
  return out.str();
}

}  // namespace tcc
