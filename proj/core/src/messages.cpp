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

#include "tcc/messages.hpp"

namespace tcc {

const char* message_kind(const Message& m) {
  struct Namer {
    const char* operator()(const ReadRequest&) const { return "ReadRequest"; }
    const char* operator()(const ReadReply&) const { return "ReadReply"; }
    const char* operator()(const UpdateRequest&) const {
      return "UpdateRequest";
    }
    const char* operator()(const UpdateReply&) const { return "UpdateReply"; }
    const char* operator()(const Replicate&) const { return "Replicate"; }
    const char* operator()(const Heartbeat&) const { return "Heartbeat"; }
    const char* operator()(const UpdateCss&) const { return "UpdateCSS"; }
    const char* operator()(const PropagateTimer&) const {
      return "PropagateTimer";
    }
    const char* operator()(const BcastTimer&) const { return "BcastTimer"; }
  };
  return std::visit(Namer{}, m);
}

NodeRef partition_node(DcId dc, PartitionIndex m) {
  NodeRef n;
  n.kind = NodeRef::Kind::Partition;
  n.dc = dc;
  n.partition = m;
  return n;
}

NodeRef session_node(SessionId id) {
  NodeRef n;
  n.kind = NodeRef::Kind::Session;
  n.session = id;
  return n;
}

NodeRef timer_node(DcId dc, PartitionIndex m) {
  NodeRef n;
  n.kind = NodeRef::Kind::Timer;
  n.dc = dc;
  n.partition = m;
  return n;
}

std::uint64_t node_key(const NodeRef& n) {
  const std::uint64_t tag = static_cast<std::uint64_t>(n.kind);
  if (n.kind == NodeRef::Kind::Session) {
    return (tag << 62) | n.session;
  }
  return (tag << 62) | (static_cast<std::uint64_t>(n.dc) << 20) | n.partition;
}

}  // namespace tcc
