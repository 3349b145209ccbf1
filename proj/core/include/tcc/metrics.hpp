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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tcc/history.hpp"
#include "tcc/sim.hpp"

namespace tcc {

inline constexpr double kMsPerTick = 0.1;

struct BlockingStat {
  std::uint64_t count = 0;
  double mean_ms = 0.0;
  double max_ms = 0.0;
};

/** Everything derived from one run; computed purely from history + trace. */
struct MetricsReport {
  std::uint64_t completed_ops = 0;
  Tick duration_ticks = 0;
  double duration_ms = 0.0;

  double throughput_ops_per_s = 0.0;
  std::vector<double> throughput_per_dc;  // ops/s grouped by session home

  double latency_mean_ms = 0.0;
  double latency_p50_ms = 0.0;
  double latency_p90_ms = 0.0;
  double latency_p99_ms = 0.0;
  double latency_max_ms = 0.0;

  // Server-side wait per level: reply sent minus request delivered.
  std::map<std::string, BlockingStat> read_blocking;
  std::map<std::string, BlockingStat> write_blocking;

  std::map<std::string, std::uint64_t> message_counts;

  // Vector entries carried on client-facing messages; level-independent.
  std::uint64_t client_metadata_entries = 0;

  double mean_read_blocking_ms() const;
};

/**
 * session_home maps session id to home datacenter; duration runs from the
 * first request sent to the last client reply.
 */
MetricsReport compute_metrics(const History& h, const Trace& trace,
                              std::size_t dims,
                              const std::vector<DcId>& session_home);

std::string metrics_csv_header();
std::string metrics_csv_row(const std::string& axis,
                            const std::string& axis_value,
                            std::uint64_t seed, const MetricsReport& m);

}  // namespace tcc
