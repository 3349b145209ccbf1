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
#include <span>
#include <vector>

#include "tcc/types.hpp"
#include "tcc/vector_clock.hpp"

namespace tcc {

/** Server-side evidence attached to a completed read. */
struct ReadCertificate {
  VectorClock version_vc;  // clock of the version returned (zero if unwritten)
  VectorClock gsvc;        // stability snapshot the read was served against
  DcId dc = 0;
  PartitionIndex partition = 0;
};

/** Server-side evidence attached to a completed write. */
struct WriteCertificate {
  VectorClock dvc;  // clock assigned to the new version
  DcId dc = 0;
  PartitionIndex partition = 0;
};

/** One completed client operation. */
struct Event {
  EventId id = 0;
  SessionId session = 0;
  std::uint32_t session_seq = 0;  // position within the session
  Operation op;
  ConsistencyLevel level = ConsistencyLevel::Ec;
  std::optional<Value> rval;  // engaged for reads, nullopt for writes
  Tick invoke = 0;
  Tick ret = 0;
  DcId target_dc = 0;  // datacenter the operation was routed to
  std::optional<ReadCertificate> read_cert;
  std::optional<WriteCertificate> write_cert;

  bool is_read() const { return op.is_read(); }
  bool is_write() const { return op.is_write(); }
};

/**
 * A set of completed operations grouped into per-session sequences.
 * Events are kept sorted by id; session order is given by session_seq.
 */
struct History {
  std::size_t dims = 0;  // vector clock dimension (datacenter count)
  std::vector<Event> events;

  bool empty() const { return events.empty(); }

  /** Events of each session in session order. */
  std::map<SessionId, std::vector<const Event*>> sessions() const;

  const Event* find(EventId id) const;
};

/**
 * Throws std::invalid_argument when the history is malformed: duplicate
 * event ids, gaps or duplicates in a session's sequence numbers, read
 * levels on writes or write levels on reads, or clock dimension mismatches.
 */
void validate_history(const History& h);

/**
 * Keeps all writes plus the reads demanding the given level; a Cc read
 * demands both Ryw and Mr. Session sequence numbers are reindexed.
 */
History restrict_history(const History& h, ConsistencyLevel level);

/**
 * Replicated-register semantics: a read returns the value of the last
 * write to its key in the given context, or 0 when the context holds no
 * write to that key; writes return nothing.
 */
std::optional<Value> eval_register(std::span<const Operation> context,
                                   const Operation& op);

}  // namespace tcc
