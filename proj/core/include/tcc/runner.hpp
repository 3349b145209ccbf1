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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tcc/artifacts.hpp"
#include "tcc/config.hpp"
#include "tcc/metrics.hpp"
#include "tcc/sim.hpp"

namespace tcc {

struct RunArtifacts {
  RunResult result;
  MetricsReport metrics;
  HistoryMeta history_meta;
  TraceMeta trace_meta;
};

/** Generates the workload from the config and runs it. */
RunArtifacts run_workload(const RunConfig& cfg);

/**
 * Writes history.jsonl, trace.jsonl, metrics.json, and config.json into
 * the directory, creating it if needed.
 */
void write_artifacts(const std::string& dir, const RunConfig& cfg,
                     const RunArtifacts& a);

enum class SweepAxis : std::uint8_t { ReadRatio, Sessions, Partitions,
                                      LevelCase };

SweepAxis parse_axis(std::string_view s);  // "readRatio", "sessions", ...
std::string_view to_string(SweepAxis a);

struct SweepRow {
  std::string axis_value;
  std::uint64_t seed = 0;
  MetricsReport metrics;
};

/**
 * Runs one point per axis value, all other parameters taken from the
 * base config. Point seeds derive from the base seed and the point index
 * so points are independent yet reproducible.
 */
std::vector<SweepRow> run_sweep(const RunConfig& base, SweepAxis axis,
                                const std::vector<std::string>& values);

std::uint64_t sweep_point_seed(std::uint64_t base, std::size_t index);

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows);

}  // namespace tcc
