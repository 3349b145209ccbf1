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

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tcc/artifacts.hpp"
#include "tcc/history.hpp"
#include "tcc/server.hpp"
#include "tcc/sim.hpp"

namespace tcc {

struct TraceCheckReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/**
 * Replays every partition-bound delivery through fresh state machines and
 * checks, at each step:
 *  - pvc and css never decrease, the clock strictly increases;
 *  - any version covered by css and routed to the partition is present
 *    (stability never runs ahead of replication);
 *  - regenerated replies are identical to the replies in the trace.
 * When final_digests is given, the replayed end states must match it
 * byte for byte.
 */
TraceCheckReport check_trace_invariants(
    const History& h, const Trace& trace, const TraceMeta& meta,
    const std::vector<std::string>* final_digests = nullptr);

/**
 * Time-indexed sets describing what each client did and what each
 * partition held stable, extracted from one run.
 */
class OperationalSets {
 public:
  OperationalSets(const History& h, const Trace& trace, const TraceMeta& meta);

  /** Writes session c completed by time t. */
  std::vector<EventId> cwrites(SessionId c, Tick t) const;

  /** Writes whose versions session c had read by time t. */
  std::vector<EventId> creads(SessionId c, Tick t) const;

  /** Writes stable (present and covered by css) at partition (d, m) by t. */
  std::vector<EventId> swrites(DcId d, PartitionIndex m, Tick t) const;

  /** When the write became stable at (d, m), if it did. */
  std::optional<Tick> stable_since(DcId d, PartitionIndex m,
                                   EventId write) const;

  /** When the operation's reply left the server. */
  std::optional<Tick> serve_time(EventId op) const;

 private:
  std::size_t slot(DcId d, PartitionIndex m) const;

  const History* h_;
  std::uint32_t partitions_per_dc_;
  std::map<std::tuple<std::size_t, DcId, Tick>, Tick> stable_;  // by version
  std::map<std::tuple<DcId, Tick>, EventId> write_by_version_;
  std::map<EventId, Tick> serve_time_;
};

/**
 * Server-side form of the session guarantees: whatever a read's level
 * demands (own completed writes, previously read versions) must already
 * be stable at the serving partition when the reply leaves. Returns one
 * message per failure.
 */
std::vector<std::string> check_operational_guarantees(const History& h,
                                                      const Trace& trace,
                                                      const TraceMeta& meta);

}  // namespace tcc
