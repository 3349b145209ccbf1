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

#include <optional>
#include <string>
#include <vector>

#include "tcc/client.hpp"
#include "tcc/history.hpp"
#include "tcc/messages.hpp"
#include "tcc/server.hpp"
#include "tcc/types.hpp"

namespace tcc {

/** Inclusive one-way latency range in ticks. One tick is 0.1 ms. */
struct DelayRange {
  Tick min = 1;
  Tick max = 1;
};

/** Shape and timing of the simulated deployment. */
struct Topology {
  std::uint32_t dcs = 2;
  std::uint32_t partitions_per_dc = 3;
  DelayRange intra{1, 3};
  DelayRange inter{20, 40};
  Tick clock_skew = 2;        // per-partition offset drawn in [-skew, +skew]
  Tick propagate_period = 5;  // replication/heartbeat timer
  Tick bcast_period = 5;      // stabilization exchange timer
  Tick stall_bound = 1'000'000;
};

void validate_topology(const Topology& t);

/** Physical clock reading of a partition with the given offset. */
std::int64_t clock_of(Tick now, std::int64_t skew);

/** One scripted client operation. */
struct PlannedOp {
  OpKind kind = OpKind::Read;
  std::string key;
  Value value = 0;
  ConsistencyLevel level = ConsistencyLevel::Ec;
  DcId target_dc = 0;
};

struct SessionScript {
  SessionId id = 0;
  DcId home = 0;
  std::optional<SessionId> start_after;  // gate on another session finishing
  std::vector<PlannedOp> ops;
};

struct SimOptions {
  bool disable_get_wait = false;
  bool disable_put_wait = false;
  Tick settle_multiplier = 4;  // post-quiescence window factor
};

/** One delivered message, as recorded in the trace. */
struct TraceRecord {
  Tick time = 0;          // delivery tick
  std::uint64_t seq = 0;  // global tie-break order
  Tick sent = 0;          // send tick
  NodeRef from;
  NodeRef to;
  Message msg;
};

using Trace = std::vector<TraceRecord>;

enum class RunStatus { Ok, Deadlock, Stalled };

struct RunResult {
  RunStatus status = RunStatus::Ok;
  std::string diagnostics;

  History history;
  Trace trace;
  std::vector<std::int64_t> skews;  // indexed dc * partitions_per_dc + m

  Tick quiescence_time = 0;  // last client reply delivered
  Tick settle_deadline = 0;  // quiescence + settle window
  Tick end_time = 0;

  bool settled = false;  // every version stable at every DC by the deadline
  std::vector<std::string> unstable;

  std::vector<VectorClock> pvc_at_quiescence;
  std::vector<PartitionState> partitions;    // final states
  std::vector<SessionState> session_states;  // final states

  bool ok() const { return status == RunStatus::Ok; }
};

/**
 * Runs the scripted sessions against a fresh deployment. Every random
 * choice (latency draws, clock offsets) comes from the seed, so equal
 * inputs give byte-identical histories and traces.
 */
RunResult run(const Topology& topology,
              const std::vector<SessionScript>& scripts, std::uint64_t seed,
              SimOptions options = {});

/**
 * FIFO channel rule: a message sent at `now` with latency `delay` is
 * delivered at max(now + delay, last_delivery_on_channel + 1).
 */
Tick fifo_delivery(Tick now, Tick delay, std::optional<Tick> last_delivery);

}  // namespace tcc
