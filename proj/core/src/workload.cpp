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

#include "tcc/workload.hpp"

#include <stdexcept>
#include <string>

#include "tcc/client.hpp"
#include "tcc/rng.hpp"

namespace tcc {

ConsistencyLevel read_level(LevelCase c) {
  switch (c) {
    case LevelCase::EcEc:
      return ConsistencyLevel::Ec;
    case LevelCase::CcCc:
      return ConsistencyLevel::Cc;
    case LevelCase::RywMw:
    case LevelCase::RywWfr:
      return ConsistencyLevel::Ryw;
    case LevelCase::MrMw:
    case LevelCase::MrWfr:
      return ConsistencyLevel::Mr;
  }
  throw std::invalid_argument("unknown level case");
}

ConsistencyLevel write_level(LevelCase c) {
  switch (c) {
    case LevelCase::EcEc:
      return ConsistencyLevel::Ec;
    case LevelCase::CcCc:
      return ConsistencyLevel::Cc;
    case LevelCase::RywMw:
    case LevelCase::MrMw:
      return ConsistencyLevel::Mw;
    case LevelCase::RywWfr:
    case LevelCase::MrWfr:
      return ConsistencyLevel::Wfr;
  }
  throw std::invalid_argument("unknown level case");
}

std::string_view to_string(LevelCase c) {
  switch (c) {
    case LevelCase::EcEc:
      return "ec/ec";
    case LevelCase::CcCc:
      return "cc/cc";
    case LevelCase::RywMw:
      return "ryw/mw";
    case LevelCase::RywWfr:
      return "ryw/wfr";
    case LevelCase::MrMw:
      return "mr/mw";
    case LevelCase::MrWfr:
      return "mr/wfr";
  }
  throw std::invalid_argument("unknown level case");
}

LevelCase parse_level_case(std::string_view s) {
  if (s == "ec/ec") return LevelCase::EcEc;
  if (s == "cc/cc") return LevelCase::CcCc;
  if (s == "ryw/mw") return LevelCase::RywMw;
  if (s == "ryw/wfr") return LevelCase::RywWfr;
  if (s == "mr/mw") return LevelCase::MrMw;
  if (s == "mr/wfr") return LevelCase::MrWfr;
  throw std::invalid_argument("unknown level case: " + std::string(s));
}

const std::vector<LevelCase>& all_level_cases() {
  static const std::vector<LevelCase> cases = {
      LevelCase::EcEc,   LevelCase::CcCc, LevelCase::RywMw,
      LevelCase::RywWfr, LevelCase::MrMw, LevelCase::MrWfr};
  return cases;
}

void validate_workload(const WorkloadSpec& w, const Topology& t) {
  if (w.sessions_per_dc == 0 && w.sessions_per_partition == 0) {
    throw std::invalid_argument("workload needs at least one session per DC");
  }
  if (w.ops_per_session == 0) {
    throw std::invalid_argument("workload needs at least one op per session");
  }
  if (w.read_ratio < 0.0 || w.read_ratio > 1.0) {
    throw std::invalid_argument("readRatio must be within [0, 1]");
  }
  if (w.remote_fraction < 0.0 || w.remote_fraction > 1.0) {
    throw std::invalid_argument("remoteFraction must be within [0, 1]");
  }
  if (w.remote_fraction > 0.0 && t.dcs < 2) {
    throw std::invalid_argument("remote operations need at least two DCs");
  }
  if (w.key_count == 0) {
    throw std::invalid_argument("workload needs at least one key");
  }
}

namespace {

std::string key_name(std::uint32_t i) { return "k" + std::to_string(i); }

}  // namespace

std::vector<SessionScript> generate_workload(const WorkloadSpec& w,
                                             const Topology& t,
                                             std::uint64_t seed) {
  validate_workload(w, t);
  Rng rng(splitmix64(seed ^ 0x574b4c4f41443031ULL));

  std::vector<std::string> keys;
  for (std::uint32_t i = 0; i < w.key_count; ++i) keys.push_back(key_name(i));

  // Key pools: everything, or one partition's keys per session group.
  std::vector<std::vector<std::string>> pool_per_partition(
      t.partitions_per_dc);
  if (w.sessions_per_partition > 0) {
    for (const std::string& k : keys) {
      pool_per_partition[partition_of(k, t.partitions_per_dc)].push_back(k);
    }
    for (PartitionIndex m = 0; m < t.partitions_per_dc; ++m) {
      if (pool_per_partition[m].empty()) {
        throw std::invalid_argument(
            "no keys route to partition " + std::to_string(m) +
            "; raise keyCount");
      }
    }
  }

  std::vector<SessionScript> scripts;
  SessionId next_id = 0;
  Value next_value = 1;

  std::optional<SessionId> gate;
  if (w.warmup) {
    SessionScript warm;
    warm.id = next_id++;
    warm.home = 0;
    for (const std::string& k : keys) {
      PlannedOp op;
      op.kind = OpKind::Write;
      op.key = k;
      op.value = next_value++;
      op.level = ConsistencyLevel::Ec;
      op.target_dc = 0;
      warm.ops.push_back(std::move(op));
    }
    gate = warm.id;
    scripts.push_back(std::move(warm));
  }

  const ConsistencyLevel rl = read_level(w.level_case);
  const ConsistencyLevel wl = write_level(w.level_case);

  auto add_session = [&](DcId home, const std::vector<std::string>& pool) {
    SessionScript s;
    s.id = next_id++;
    s.home = home;
    s.start_after = gate;
    for (std::uint32_t i = 0; i < w.ops_per_session; ++i) {
      PlannedOp op;
      const bool is_read = rng.unit() < w.read_ratio;
      op.kind = is_read ? OpKind::Read : OpKind::Write;
      op.key = pool[rng.uniform(0, pool.size() - 1)];
      op.level = is_read ? rl : wl;
      if (!is_read) op.value = next_value++;
      op.target_dc = home;
      if (w.remote_fraction > 0.0 && rng.unit() < w.remote_fraction) {
        // Uniform among the other datacenters.
        DcId other = static_cast<DcId>(rng.uniform(0, t.dcs - 2));
        if (other >= home) other += 1;
        op.target_dc = other;
      }
      s.ops.push_back(std::move(op));
    }
    scripts.push_back(std::move(s));
  };

  for (DcId d = 0; d < t.dcs; ++d) {
    if (w.sessions_per_partition > 0) {
      for (PartitionIndex m = 0; m < t.partitions_per_dc; ++m) {
        for (std::uint32_t i = 0; i < w.sessions_per_partition; ++i) {
          add_session(d, pool_per_partition[m]);
        }
      }
    } else {
      for (std::uint32_t i = 0; i < w.sessions_per_dc; ++i) {
        add_session(d, keys);
      }
    }
  }
  return scripts;
}

}  // namespace tcc
