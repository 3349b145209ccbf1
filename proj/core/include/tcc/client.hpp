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
#include <utility>

#include "tcc/types.hpp"
#include "tcc/vector_clock.hpp"

namespace tcc {

/**
 * Client-side bookkeeping for one session. The four clocks summarize what
 * the session has read and written so far; per-operation levels choose
 * which of them a request carries as its dependency floor.
 */
struct SessionState {
  SessionState(SessionId id_, DcId home_, std::size_t dims)
      : id(id_), home(home_), hrvc(dims), hwvc(dims), cvc_r(dims),
        cvc_w(dims) {}

  SessionId id = 0;
  DcId home = 0;
  VectorClock hrvc;   // floor for monotonic reads
  VectorClock hwvc;   // floor for reading own writes
  VectorClock cvc_r;  // dependencies of everything read
  VectorClock cvc_w;  // dependencies of everything written
};

/**
 * (vc_r, vc_w) attached to a read at the given level. Throws
 * std::invalid_argument for write-only levels.
 */
std::pair<VectorClock, VectorClock> select_read_vectors(
    ConsistencyLevel level, const SessionState& s);

/**
 * Dependency clock attached to a write at the given level. Throws
 * std::invalid_argument for read-only levels.
 */
VectorClock select_write_vector(ConsistencyLevel level, const SessionState& s);

/** Folds a read reply (version clock, stability snapshot) into the session. */
void apply_read_reply(SessionState& s, const VectorClock& vc,
                      const VectorClock& gsvc);

/** Folds a write reply (assigned version clock) into the session. */
void apply_write_reply(SessionState& s, const VectorClock& vc);

/** Stable key placement: every datacenter routes a key the same way. */
PartitionIndex partition_of(std::string_view key,
                            std::uint32_t partitions_per_dc);

}  // namespace tcc
