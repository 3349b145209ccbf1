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

#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "fixtures.hpp"
#include "tcc/checker/certificate.hpp"
#include "tcc/config.hpp"
#include "tcc/runner.hpp"

using tcc::ConsistencyLevel;
using tcc::Event;
using tcc::History;
using tcc::VectorClock;
using tcc::Verdict;
using tcc::VerdictStatus;
using tcc::testing::rd;
using tcc::testing::wr;

namespace {

Event rcert(Event e, VectorClock vc, VectorClock gsvc) {
  e.read_cert = tcc::ReadCertificate{std::move(vc), std::move(gsvc), 0, 0};
  return e;
}

Event wcert(Event e, VectorClock dvc) {
  e.write_cert = tcc::WriteCertificate{std::move(dvc), 0, 0};
  return e;
}

}  // namespace

TEST_CASE("a returned version must sit inside the snapshot") {
  History h;
  h.dims = 2;
  h.events = {
      rcert(rd(0, 0, 0, "x", 0, ConsistencyLevel::Ec), {1, 0}, {2, 2}),
  };
  CHECK(tcc::check_certificate(h).status == VerdictStatus::Satisfied);

  h.events[0].read_cert->version_vc = VectorClock{3, 0};
  const Verdict v = tcc::check_certificate(h);
  REQUIRE(v.status == VerdictStatus::Violated);
  CHECK(v.violation->predicate == "read-certificate");
}

TEST_CASE("read-own-writes: snapshots must cover earlier session writes") {
  History h;
  h.dims = 2;
  h.events = {
      wcert(wr(0, 0, 0, "x", 1, ConsistencyLevel::Mw), {5, 0}),
      rcert(rd(1, 0, 1, "x", 1, ConsistencyLevel::Ryw), {5, 0}, {5, 1}),
  };
  CHECK(tcc::check_certificate(h).status == VerdictStatus::Satisfied);

  h.events[1].read_cert->gsvc = VectorClock{4, 4};
  h.events[1].read_cert->version_vc = VectorClock{4, 0};
  const Verdict v = tcc::check_certificate(h);
  REQUIRE(v.status == VerdictStatus::Violated);
  CHECK(v.violation->predicate == "ryw");
  CHECK(v.violation->events == std::vector<tcc::EventId>{0, 1});

  // The same stale snapshot is fine when the read asks for nothing.
  h.events[1].level = ConsistencyLevel::Ec;
  CHECK(tcc::check_certificate(h).status == VerdictStatus::Satisfied);
}

TEST_CASE("monotonic reads: snapshots must cover earlier read versions") {
  History h;
  h.dims = 2;
  h.events = {
      rcert(rd(0, 0, 0, "x", 7, ConsistencyLevel::Mr), {0, 3}, {1, 3}),
      rcert(rd(1, 0, 1, "y", 0, ConsistencyLevel::Mr), {0, 0}, {2, 3}),
  };
  CHECK(tcc::check_certificate(h).status == VerdictStatus::Satisfied);

  h.events[1].read_cert->gsvc = VectorClock{2, 2};  // drops below [0,3]
  const Verdict v = tcc::check_certificate(h);
  REQUIRE(v.status == VerdictStatus::Violated);
  CHECK(v.violation->predicate == "mr");
}

TEST_CASE("monotonic writes: clocks strictly grow along the session") {
  History h;
  h.dims = 2;
  h.events = {
      wcert(wr(0, 0, 0, "x", 1, ConsistencyLevel::Mw), {2, 1}),
      wcert(wr(1, 0, 1, "y", 2, ConsistencyLevel::Mw), {3, 1}),
  };
  CHECK(tcc::check_certificate(h).status == VerdictStatus::Satisfied);

  h.events[1].write_cert->dvc = VectorClock{2, 1};  // equal, not strict
  const Verdict v = tcc::check_certificate(h);
  REQUIRE(v.status == VerdictStatus::Violated);
  CHECK(v.violation->predicate == "mw");
}

TEST_CASE("writes-follow-reads: clocks strictly dominate read versions") {
  History h;
  h.dims = 2;
  h.events = {
      rcert(rd(0, 0, 0, "x", 5, ConsistencyLevel::Ec), {1, 2}, {2, 2}),
      wcert(wr(1, 0, 1, "y", 3, ConsistencyLevel::Wfr), {3, 2}),
  };
  CHECK(tcc::check_certificate(h).status == VerdictStatus::Satisfied);

  h.events[1].write_cert->dvc = VectorClock{1, 2};  // equal, not strict
  const Verdict v = tcc::check_certificate(h);
  REQUIRE(v.status == VerdictStatus::Violated);
  CHECK(v.violation->predicate == "wfr");
}

TEST_CASE("per-prior-event strictness, not strictness of the join") {
  // Two incomparable read versions whose join equals the write clock:
  // each is strictly below [2,2] even though their join is not. A
  // checker comparing against the join would reject this sound history.
  History h;
  h.dims = 2;
  h.events = {
      rcert(rd(0, 0, 0, "x", 1, ConsistencyLevel::Ec), {2, 0}, {2, 2}),
      rcert(rd(1, 0, 1, "y", 2, ConsistencyLevel::Ec), {0, 2}, {2, 2}),
      wcert(wr(2, 0, 2, "z", 3, ConsistencyLevel::Wfr), {2, 2}),
  };
  CHECK(tcc::check_certificate(h).status == VerdictStatus::Satisfied);
}

TEST_CASE("cc demands all four directions") {
  History h;
  h.dims = 2;
  h.events = {
      wcert(wr(0, 0, 0, "x", 1, ConsistencyLevel::Cc), {3, 0}),
      rcert(rd(1, 0, 1, "z", 9, ConsistencyLevel::Cc), {3, 1}, {3, 2}),
      wcert(wr(2, 0, 2, "y", 2, ConsistencyLevel::Cc), {4, 1}),
  };
  CHECK(tcc::check_certificate(h).status == VerdictStatus::Satisfied);

  SUBCASE("cc read inherits the ryw obligation") {
    h.events[1].read_cert->gsvc = VectorClock{2, 2};
    h.events[1].read_cert->version_vc = VectorClock{2, 0};
    CHECK(tcc::check_certificate(h).violation->predicate == "ryw");
  }
  SUBCASE("cc write inherits the mw obligation") {
    h.events[2].write_cert->dvc = VectorClock{3, 0};  // not above [3,0]
    CHECK(tcc::check_certificate(h).violation->predicate == "mw");
  }
  SUBCASE("cc write inherits the wfr obligation") {
    h.events[2].write_cert->dvc = VectorClock{4, 0};  // not above [3,1]
    CHECK(tcc::check_certificate(h).violation->predicate == "wfr");
  }
}

TEST_CASE("events without certificates are rejected as malformed") {
  History h;
  h.dims = 2;
  h.events = {wr(0, 0, 0, "x", 1, ConsistencyLevel::Mw)};
  CHECK_THROWS_AS(tcc::check_certificate(h), std::invalid_argument);
}

TEST_CASE("simulated runs pass; a doctored snapshot fails") {
  tcc::RunConfig cfg = tcc::parse_config(R"({
    "seed": 21, "dcs": 2, "partitionsPerDc": 2, "sessionsPerDc": 2,
    "opsPerSession": 15, "readRatio": 0.5, "keyCount": 8,
    "levelCase": "cc/cc", "remoteFraction": 0.2, "warmup": true
  })");
  tcc::RunArtifacts a = tcc::run_workload(cfg);
  REQUIRE(a.result.ok());
  CHECK(tcc::check_certificate(a.result.history).status ==
        VerdictStatus::Satisfied);

  // Walk back one stabilization snapshot below a session-prior write.
  History& h = a.result.history;
  bool mutated = false;
  for (auto& [sid, seq] : h.sessions()) {
    const VectorClock* prior_write = nullptr;
    for (const Event* e : seq) {
      if (e->is_write()) {
        prior_write = &e->write_cert->dvc;
      } else if (prior_write != nullptr && guarantees_ryw(e->level)) {
        // A zero snapshot stays well formed (zero version inside it) but
        // cannot cover the positive commit stamp of the earlier write.
        Event* target = const_cast<Event*>(e);
        target->read_cert->gsvc = VectorClock(h.dims);
        target->read_cert->version_vc = VectorClock(h.dims);
        mutated = true;
        break;
      }
    }
    if (mutated) break;
  }
  REQUIRE(mutated);
  CHECK(tcc::check_certificate(h).status == VerdictStatus::Violated);
}
