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

#include <iosfwd>
#include <string>
#include <utility>

#include "tcc/artifacts.hpp"
#include "tcc/checker/verdict.hpp"
#include "tcc/history.hpp"
#include "tcc/metrics.hpp"
#include "tcc/sim.hpp"

namespace tcc {

// History and trace files are JSON lines: one meta object, then one
// object per event or delivery. Output key order is fixed, so equal runs
// produce byte-identical files.

void write_history(std::ostream& out, const History& h,
                   const HistoryMeta& meta);
std::pair<History, HistoryMeta> read_history(std::istream& in);

void write_trace(std::ostream& out, const Trace& t, const TraceMeta& meta);
std::pair<Trace, TraceMeta> read_trace(std::istream& in);

std::string history_to_string(const History& h, const HistoryMeta& meta);
std::string trace_to_string(const Trace& t, const TraceMeta& meta);

std::string verdict_to_json(const Verdict& v);
std::string metrics_to_json(const MetricsReport& m);

}  // namespace tcc
