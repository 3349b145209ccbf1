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

#include <string_view>
#include <vector>

#include "tcc/sim.hpp"
#include "tcc/types.hpp"

namespace tcc {

/** Read-level/write-level pairing used by a whole workload. */
enum class LevelCase : std::uint8_t { EcEc, CcCc, RywMw, RywWfr, MrMw, MrWfr };

ConsistencyLevel read_level(LevelCase c);
ConsistencyLevel write_level(LevelCase c);
std::string_view to_string(LevelCase c);
LevelCase parse_level_case(std::string_view s);  // "ec/ec", "mr/wfr", ...

/** All six cases in canonical order. */
const std::vector<LevelCase>& all_level_cases();

struct WorkloadSpec {
  std::uint32_t sessions_per_dc = 2;
  // When nonzero, overrides sessions_per_dc with this many sessions per
  // partition, each confined to that partition's keys.
  std::uint32_t sessions_per_partition = 0;
  std::uint32_t ops_per_session = 20;
  double read_ratio = 0.5;
  double remote_fraction = 0.0;
  std::uint32_t key_count = 16;
  LevelCase level_case = LevelCase::MrWfr;
  // Prepends a session that writes every key once and gates the others
  // on its completion.
  bool warmup = false;
};

void validate_workload(const WorkloadSpec& w, const Topology& t);

/**
 * Scripts the sessions. Write values are globally unique (counting from 1)
 * so every read can be traced to the write it observed.
 */
std::vector<SessionScript> generate_workload(const WorkloadSpec& w,
                                             const Topology& t,
                                             std::uint64_t seed);

}  // namespace tcc
