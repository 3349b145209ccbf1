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

#include <algorithm>
#include <utility>
#include <vector>

#include "fixtures.hpp"
#include "tcc/checker/brute_force.hpp"

using tcc::ConsistencyLevel;
using tcc::EventId;
using tcc::History;
using tcc::Verdict;
using tcc::VerdictStatus;
using tcc::Witness;
using tcc::testing::figure_history;
using tcc::testing::rd;
using tcc::testing::wr;

namespace {

bool has_edge(const std::vector<std::pair<EventId, EventId>>& edges,
              EventId from, EventId to) {
  return std::find(edges.begin(), edges.end(), std::make_pair(from, to)) !=
         edges.end();
}

std::size_t pos(const std::vector<EventId>& ar, EventId id) {
  return static_cast<std::size_t>(
      std::find(ar.begin(), ar.end(), id) - ar.begin());
}

History two_events(ConsistencyLevel read_level, tcc::Value rval) {
  History h;
  h.dims = 1;
  h.events = {
      wr(0, 0, 0, "x", 1, ConsistencyLevel::Mw),
      rd(1, 0, 1, "x", rval, read_level),
  };
  return h;
}

}  // namespace

TEST_CASE("empty history is satisfied") {
  const Verdict v = tcc::check_brute_force(History{});
  CHECK(v.status == VerdictStatus::Satisfied);
  CHECK(v.mode == "brute");
}

TEST_CASE("interleaved two-session fixture is satisfiable") {
  const History h = figure_history();
  const Verdict v = tcc::check_brute_force(h);
  REQUIRE(v.status == VerdictStatus::Satisfied);
  REQUIRE(v.witness.has_value());
  const Witness& w = *v.witness;

  // The guarantees leave no choice about these visibility edges.
  CHECK(has_edge(w.vis_ryw, 0, 2));  // own writes before the ryw read
  CHECK(has_edge(w.vis_ryw, 1, 2));
  CHECK(has_edge(w.vis_ryw, 3, 4));
  CHECK(has_edge(w.vis_mr, 3, 5));  // carried over from the earlier read
  CHECK(has_edge(w.vis_mr, 0, 5));  // the read's own source

  // Arbitration must chain x=1, y=2, y=1, y=3 in that order.
  CHECK(pos(w.ar, 0) < pos(w.ar, 1));
  CHECK(pos(w.ar, 1) < pos(w.ar, 3));
  CHECK(pos(w.ar, 3) < pos(w.ar, 6));
  CHECK(pos(w.ar, 0) < pos(w.ar, 6));

  CHECK(tcc::validate_witness(h, w) == std::nullopt);
}

TEST_CASE("the checker is deterministic") {
  const History h = figure_history();
  const Verdict a = tcc::check_brute_force(h);
  const Verdict b = tcc::check_brute_force(h);
  REQUIRE(a.witness.has_value());
  REQUIRE(b.witness.has_value());
  CHECK(a.witness->ar == b.witness->ar);
  CHECK(a.witness->vis_ryw == b.witness->vis_ryw);
  CHECK(a.witness->vis_mr == b.witness->vis_mr);
  CHECK(a.witness->vis_ec == b.witness->vis_ec);
}

TEST_CASE("a session must see its own write") {
  const Verdict v = tcc::check_brute_force(two_events(ConsistencyLevel::Ryw,
                                                      0));
  REQUIRE(v.status == VerdictStatus::Violated);
  REQUIRE(v.violation.has_value());
  CHECK_FALSE(v.violation->detail.empty());

  // The same stale read is fine when nothing was demanded.
  CHECK(tcc::check_brute_force(two_events(ConsistencyLevel::Ec, 0)).status ==
        VerdictStatus::Satisfied);
  CHECK(tcc::check_brute_force(two_events(ConsistencyLevel::Ryw, 1)).status ==
        VerdictStatus::Satisfied);
}

TEST_CASE("a stale read under a weak level across sessions is allowed") {
  History h;
  h.dims = 1;
  h.events = {
      wr(0, 0, 0, "x", 1, ConsistencyLevel::Ec),
      rd(1, 1, 0, "x", 0, ConsistencyLevel::Ryw),  // other session's write
  };
  CHECK(tcc::check_brute_force(h).status == VerdictStatus::Satisfied);
}

TEST_CASE("monotonic reads forbid going backwards") {
  History h;
  h.dims = 1;
  h.events = {
      wr(0, 0, 0, "x", 1, ConsistencyLevel::Mw),
      rd(1, 1, 0, "x", 1, ConsistencyLevel::Mr),
      rd(2, 1, 1, "x", 0, ConsistencyLevel::Mr),  // forgets the observed write
  };
  const Verdict v = tcc::check_brute_force(h);
  CHECK(v.status == VerdictStatus::Violated);
}

TEST_CASE("forced arbitration cycles are violations") {
  // Session 1 observes x=2 then x=1. Reading 1 after 2 under mr forces
  // x=2 before x=1 in arbitration, but session 0 wrote 1 before 2 at mw.
  History h;
  h.dims = 1;
  h.events = {
      wr(0, 0, 0, "x", 1, ConsistencyLevel::Mw),
      wr(1, 0, 1, "x", 2, ConsistencyLevel::Mw),
      rd(2, 1, 0, "x", 2, ConsistencyLevel::Mr),
      rd(3, 1, 1, "x", 1, ConsistencyLevel::Mr),
  };
  const Verdict v = tcc::check_brute_force(h);
  CHECK(v.status == VerdictStatus::Violated);
}

TEST_CASE("oversized histories come back undecided, not wrong") {
  History h;
  h.dims = 1;
  for (EventId i = 0; i < 9; ++i) {
    h.events.push_back(wr(i, 0, static_cast<std::uint32_t>(i), "x",
                          static_cast<tcc::Value>(i + 1),
                          ConsistencyLevel::Ec));
  }
  const Verdict v = tcc::check_brute_force(h);
  CHECK(v.status == VerdictStatus::Undecided);
  CHECK_FALSE(v.note.empty());

  tcc::BruteForceOptions opts;
  opts.max_events = 16;
  CHECK(tcc::check_brute_force(h, opts).status == VerdictStatus::Satisfied);

  opts.max_events = 4;
  CHECK(tcc::check_brute_force(figure_history(), opts).status ==
        VerdictStatus::Undecided);
}

TEST_CASE("witness validation rejects tampering") {
  const History h = figure_history();
  const Verdict v = tcc::check_brute_force(h);
  REQUIRE(v.witness.has_value());

  Witness missing_edge = *v.witness;
  missing_edge.vis_ryw.erase(missing_edge.vis_ryw.begin());
  CHECK(tcc::validate_witness(h, missing_edge) != std::nullopt);

  Witness scrambled = *v.witness;
  REQUIRE(scrambled.ar.size() >= 2);
  std::swap(scrambled.ar[pos(scrambled.ar, 1)],
            scrambled.ar[pos(scrambled.ar, 3)]);
  CHECK(tcc::validate_witness(h, scrambled) != std::nullopt);

  Witness truncated = *v.witness;
  truncated.ar.pop_back();
  CHECK(tcc::validate_witness(h, truncated) != std::nullopt);
}
