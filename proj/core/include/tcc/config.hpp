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
#include <string>

#include "tcc/sim.hpp"
#include "tcc/workload.hpp"

namespace tcc {

/** Everything a reproducible run needs. */
struct RunConfig {
  std::uint64_t seed = 0;
  bool seed_set = false;
  Topology topology;
  WorkloadSpec workload;
  SimOptions sim;
};

/**
 * Parses a flat JSON object of run parameters. Unknown keys throw;
 * omitted keys keep their defaults. Keys: seed, dcs, partitionsPerDc,
 * sessionsPerDc, sessionsPerPartition, opsPerSession, readRatio,
 * remoteFraction, keyCount, levelCase, intraDelayMin, intraDelayMax,
 * interDelayMin, interDelayMax, clockSkew, propagatePeriod, bcastPeriod,
 * stallBound, warmup, disableGetWait, disablePutWait, settleMultiplier.
 */
RunConfig parse_config(const std::string& json_text);

/** Applies one key=value pair using the JSON key names above. */
void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value);

/** Throws std::invalid_argument on missing seed or inconsistent fields. */
void validate_config(const RunConfig& cfg);

/** The full parameter set as JSON, defaults included. */
std::string config_to_json(const RunConfig& cfg);

}  // namespace tcc
