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
#include <variant>

#include "tcc/types.hpp"
#include "tcc/vector_clock.hpp"

namespace tcc {

/** Client asks for the latest readable version of a key. */
struct ReadRequest {
  EventId op_id = 0;
  SessionId session = 0;
  std::string key;
  VectorClock vc_r;  // read-dependency floor the reply must cover
  VectorClock vc_w;  // write-dependency floor the reply must cover

  friend bool operator==(const ReadRequest&, const ReadRequest&) = default;
};

struct ReadReply {
  EventId op_id = 0;
  SessionId session = 0;
  Value value = 0;
  VectorClock vc;    // clock of the version returned
  VectorClock gsvc;  // stability snapshot at serve time

  friend bool operator==(const ReadReply&, const ReadReply&) = default;
};

/** Client installs a new version carrying its dependency clock. */
struct UpdateRequest {
  EventId op_id = 0;
  SessionId session = 0;
  std::string key;
  Value value = 0;
  VectorClock dvc;  // dependency clock; local entry is overwritten at commit

  friend bool operator==(const UpdateRequest&, const UpdateRequest&) = default;
};

struct UpdateReply {
  EventId op_id = 0;
  SessionId session = 0;
  VectorClock vc;  // clock assigned to the new version

  friend bool operator==(const UpdateReply&, const UpdateReply&) = default;
};

/** Geo-replication of a committed version to the sibling partitions. */
struct Replicate {
  DcId origin = 0;
  std::string key;
  Value value = 0;
  VectorClock vc;

  friend bool operator==(const Replicate&, const Replicate&) = default;
};

/** Origin datacenter has nothing to replicate but its clock advanced. */
struct Heartbeat {
  DcId origin = 0;
  Tick ts = 0;

  friend bool operator==(const Heartbeat&, const Heartbeat&) = default;
};

/** A partition shares its replication progress with same-DC peers. */
struct UpdateCss {
  PartitionIndex from = 0;
  VectorClock pvc;

  friend bool operator==(const UpdateCss&, const UpdateCss&) = default;
};

struct PropagateTimer {
  friend bool operator==(const PropagateTimer&, const PropagateTimer&) =
      default;
};
struct BcastTimer {
  friend bool operator==(const BcastTimer&, const BcastTimer&) = default;
};

using Message =
    std::variant<ReadRequest, ReadReply, UpdateRequest, UpdateReply, Replicate,
                 Heartbeat, UpdateCss, PropagateTimer, BcastTimer>;

/** Wire name of the message alternative. */
const char* message_kind(const Message& m);

/** Address of a protocol participant in the simulated network. */
struct NodeRef {
  enum class Kind : std::uint8_t { Partition, Session, Timer };
  Kind kind = Kind::Partition;
  DcId dc = 0;
  PartitionIndex partition = 0;
  SessionId session = 0;

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

NodeRef partition_node(DcId dc, PartitionIndex m);
NodeRef session_node(SessionId id);
NodeRef timer_node(DcId dc, PartitionIndex m);

/** Injective channel key for FIFO bookkeeping. */
std::uint64_t node_key(const NodeRef& n);

}  // namespace tcc
