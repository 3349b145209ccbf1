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

#include "tcc/config.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace tcc {
namespace {

using Json = nlohmann::ordered_json;

// One table drives JSON parsing, flag overrides, and echoing, so the
// three can not drift apart.
struct Field {
  std::function<void(RunConfig&, const Json&)> set;
  std::function<Json(const RunConfig&)> get;
};

template <typename T>
T parse_scalar(const Json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("bad value for \"") + key + "\"");
  }
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = {
      {"seed",
       {[](RunConfig& c, const Json& v) {
          c.seed = parse_scalar<std::uint64_t>(v, "seed");
          c.seed_set = true;
        },
        [](const RunConfig& c) { return Json(c.seed); }}},
      {"dcs",
       {[](RunConfig& c, const Json& v) {
          c.topology.dcs = parse_scalar<std::uint32_t>(v, "dcs");
        },
        [](const RunConfig& c) { return Json(c.topology.dcs); }}},
      {"partitionsPerDc",
       {[](RunConfig& c, const Json& v) {
          c.topology.partitions_per_dc =
              parse_scalar<std::uint32_t>(v, "partitionsPerDc");
        },
        [](const RunConfig& c) { return Json(c.topology.partitions_per_dc); }}},
      {"sessionsPerDc",
       {[](RunConfig& c, const Json& v) {
          c.workload.sessions_per_dc =
              parse_scalar<std::uint32_t>(v, "sessionsPerDc");
        },
        [](const RunConfig& c) { return Json(c.workload.sessions_per_dc); }}},
      {"sessionsPerPartition",
       {[](RunConfig& c, const Json& v) {
          c.workload.sessions_per_partition =
              parse_scalar<std::uint32_t>(v, "sessionsPerPartition");
        },
        [](const RunConfig& c) {
          return Json(c.workload.sessions_per_partition);
        }}},
      {"opsPerSession",
       {[](RunConfig& c, const Json& v) {
          c.workload.ops_per_session =
              parse_scalar<std::uint32_t>(v, "opsPerSession");
        },
        [](const RunConfig& c) { return Json(c.workload.ops_per_session); }}},
      {"readRatio",
       {[](RunConfig& c, const Json& v) {
          c.workload.read_ratio = parse_scalar<double>(v, "readRatio");
        },
        [](const RunConfig& c) { return Json(c.workload.read_ratio); }}},
      {"remoteFraction",
       {[](RunConfig& c, const Json& v) {
          c.workload.remote_fraction =
              parse_scalar<double>(v, "remoteFraction");
        },
        [](const RunConfig& c) { return Json(c.workload.remote_fraction); }}},
      {"keyCount",
       {[](RunConfig& c, const Json& v) {
          c.workload.key_count = parse_scalar<std::uint32_t>(v, "keyCount");
        },
        [](const RunConfig& c) { return Json(c.workload.key_count); }}},
      {"levelCase",
       {[](RunConfig& c, const Json& v) {
          c.workload.level_case =
              parse_level_case(parse_scalar<std::string>(v, "levelCase"));
        },
        [](const RunConfig& c) {
          return Json(std::string(to_string(c.workload.level_case)));
        }}},
      {"intraDelayMin",
       {[](RunConfig& c, const Json& v) {
          c.topology.intra.min = parse_scalar<Tick>(v, "intraDelayMin");
        },
        [](const RunConfig& c) { return Json(c.topology.intra.min); }}},
      {"intraDelayMax",
       {[](RunConfig& c, const Json& v) {
          c.topology.intra.max = parse_scalar<Tick>(v, "intraDelayMax");
        },
        [](const RunConfig& c) { return Json(c.topology.intra.max); }}},
      {"interDelayMin",
       {[](RunConfig& c, const Json& v) {
          c.topology.inter.min = parse_scalar<Tick>(v, "interDelayMin");
        },
        [](const RunConfig& c) { return Json(c.topology.inter.min); }}},
      {"interDelayMax",
       {[](RunConfig& c, const Json& v) {
          c.topology.inter.max = parse_scalar<Tick>(v, "interDelayMax");
        },
        [](const RunConfig& c) { return Json(c.topology.inter.max); }}},
      {"clockSkew",
       {[](RunConfig& c, const Json& v) {
          c.topology.clock_skew = parse_scalar<Tick>(v, "clockSkew");
        },
        [](const RunConfig& c) { return Json(c.topology.clock_skew); }}},
      {"propagatePeriod",
       {[](RunConfig& c, const Json& v) {
          c.topology.propagate_period =
              parse_scalar<Tick>(v, "propagatePeriod");
        },
        [](const RunConfig& c) { return Json(c.topology.propagate_period); }}},
      {"bcastPeriod",
       {[](RunConfig& c, const Json& v) {
          c.topology.bcast_period = parse_scalar<Tick>(v, "bcastPeriod");
        },
        [](const RunConfig& c) { return Json(c.topology.bcast_period); }}},
      {"stallBound",
       {[](RunConfig& c, const Json& v) {
          c.topology.stall_bound = parse_scalar<Tick>(v, "stallBound");
        },
        [](const RunConfig& c) { return Json(c.topology.stall_bound); }}},
      {"warmup",
       {[](RunConfig& c, const Json& v) {
          c.workload.warmup = parse_scalar<bool>(v, "warmup");
        },
        [](const RunConfig& c) { return Json(c.workload.warmup); }}},
      {"disableGetWait",
       {[](RunConfig& c, const Json& v) {
          c.sim.disable_get_wait = parse_scalar<bool>(v, "disableGetWait");
        },
        [](const RunConfig& c) { return Json(c.sim.disable_get_wait); }}},
      {"disablePutWait",
       {[](RunConfig& c, const Json& v) {
          c.sim.disable_put_wait = parse_scalar<bool>(v, "disablePutWait");
        },
        [](const RunConfig& c) { return Json(c.sim.disable_put_wait); }}},
      {"settleMultiplier",
       {[](RunConfig& c, const Json& v) {
          c.sim.settle_multiplier = parse_scalar<Tick>(v, "settleMultiplier");
        },
        [](const RunConfig& c) { return Json(c.sim.settle_multiplier); }}},
  };
  return table;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be an object");
  RunConfig cfg;
  for (const auto& [key, value] : j.items()) {
    auto it = fields().find(key);
    if (it == fields().end()) {
      throw std::invalid_argument("unknown config key \"" + key + "\"");
    }
    it->second.set(cfg, value);
  }
  return cfg;
}

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
  auto it = fields().find(key);
  if (it == fields().end()) {
    throw std::invalid_argument("unknown config key \"" + key + "\"");
  }
  Json v;
  try {
    v = Json::parse(value);
  } catch (const nlohmann::json::exception&) {
    v = value;  // bare strings, e.g. levelCase=mr/wfr
  }
  it->second.set(cfg, v);
}

void validate_config(const RunConfig& cfg) {
  if (!cfg.seed_set) throw std::invalid_argument("seed is required");
  validate_topology(cfg.topology);
  validate_workload(cfg.workload, cfg.topology);
}

std::string config_to_json(const RunConfig& cfg) {
  // Fixed emission order, independent of the map's sort order.
  static const char* order[] = {
      "seed",           "dcs",
      "partitionsPerDc", "sessionsPerDc",
      "sessionsPerPartition", "opsPerSession",
      "readRatio",      "remoteFraction",
      "keyCount",       "levelCase",
      "intraDelayMin",  "intraDelayMax",
      "interDelayMin",  "interDelayMax",
      "clockSkew",      "propagatePeriod",
      "bcastPeriod",    "stallBound",
      "warmup",         "disableGetWait",
      "disablePutWait", "settleMultiplier",
  };
  Json j;
  for (const char* key : order) j[key] = fields().at(key).get(cfg);
  return j.dump(2);
}

}  // namespace tcc
