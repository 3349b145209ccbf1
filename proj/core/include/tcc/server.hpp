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
#include <deque>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tcc/messages.hpp"
#include "tcc/types.hpp"
#include "tcc/vector_clock.hpp"

namespace tcc {

/** One stored version of a key. vc[origin] is its commit stamp. */
struct Version {
  std::string key;
  Value value = 0;
  VectorClock vc;
  DcId origin = 0;
};

/**
 * Total order used to pick among concurrent versions of a key:
 * (vc[origin], origin) lexicographic.
 */
bool arbitration_less(const Version& a, const Version& b);

/**
 * Latest version whose clock is covered by css, under arbitration order.
 * Returns nullptr when nothing in the chain is readable yet.
 */
const Version* latest_stable(std::span<const Version> chain,
                             const VectorClock& css);

struct PartitionOptions {
  bool disable_get_wait = false;  // fault injection: serve reads immediately
  bool disable_put_wait = false;  // fault injection: stamp writes immediately
  Tick stall_bound = 1'000'000;   // max ticks a request may stay parked
};

struct Outbound {
  NodeRef to;
  Message msg;
};

/** A parked request exceeded the stall bound; the run is broken. */
struct StallTimeout : std::runtime_error {
  explicit StallTimeout(const std::string& what) : std::runtime_error(what) {}
};

/**
 * One partition replica: the state machine behind ReadRequest/UpdateRequest
 * service, geo-replication, and the stabilization exchange. deliver() is a
 * pure function of (state, message, now), so feeding the same message
 * sequence reproduces the same state.
 */
struct PartitionState {
  PartitionState(DcId dc, PartitionIndex index, std::size_t dims,
                 std::uint32_t partitions_per_dc, std::int64_t skew,
                 PartitionOptions opts = {});

  DcId dc = 0;
  PartitionIndex index = 0;
  std::size_t dims = 0;
  std::uint32_t partitions_per_dc = 1;
  std::int64_t skew = 0;
  PartitionOptions opts;

  Tick clock = 0;   // last physical-clock reading, strictly increasing
  VectorClock pvc;  // replication progress known per datacenter
  VectorClock css;  // stability cut: versions with vc <= css are readable
  std::vector<VectorClock> pmc;  // last pvc heard from each same-DC peer

  std::map<std::string, std::vector<Version>> store;
  std::vector<Version> updates;  // committed locally, not yet replicated

  struct ParkedRead {
    ReadRequest req;
    Tick since = 0;
  };
  struct ParkedWrite {
    UpdateRequest req;
    Tick since = 0;
  };
  std::deque<std::variant<ParkedRead, ParkedWrite>> parked;

  /**
   * Advances the local clock to now, applies the message, wakes any parked
   * requests whose wait predicate now holds, and returns the messages to
   * send. Throws StallTimeout when a parked request is older than the
   * stall bound.
   */
  std::vector<Outbound> deliver(const Message& msg, Tick now);

  /** True when the read's dependency floor is within the stability cut. */
  bool read_ready(const ReadRequest& req) const;

  /** True when the local clock moved past the write's local dependency. */
  bool write_ready(const UpdateRequest& req) const;

  /** Human-readable wait predicates of everything parked, for diagnostics. */
  std::vector<std::string> parked_predicates() const;

  /** Canonical dump of the replication-visible state, for replay checks. */
  std::string state_digest() const;

 private:
  void handle(const ReadRequest& req, Tick now, std::vector<Outbound>& out);
  void handle(const UpdateRequest& req, Tick now, std::vector<Outbound>& out);
  void handle(const Replicate& rep);
  void handle(const Heartbeat& hb);
  void handle(const UpdateCss& up);
  void propagate(std::vector<Outbound>& out);
  void bcast(std::vector<Outbound>& out);

  void serve_read(const ReadRequest& req, std::vector<Outbound>& out);
  void serve_write(const UpdateRequest& req, std::vector<Outbound>& out);
  void pump(Tick now, std::vector<Outbound>& out);
  void recompute_css();
  void insert_version(Version v);
  bool known_version(const Version& v) const;
};

}  // namespace tcc
