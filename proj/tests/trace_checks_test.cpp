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
#include <string>
#include <variant>
#include <vector>

#include "tcc/checker/trace_checks.hpp"
#include "tcc/config.hpp"
#include "tcc/runner.hpp"

using tcc::RunArtifacts;
using tcc::RunConfig;
using tcc::TraceCheckReport;

namespace {

RunArtifacts honest_run(std::uint64_t seed) {
  RunConfig cfg = tcc::parse_config(R"({
    "seed": 0, "dcs": 2, "partitionsPerDc": 2, "sessionsPerDc": 2,
    "opsPerSession": 12, "readRatio": 0.5, "keyCount": 8,
    "levelCase": "cc/cc", "remoteFraction": 0.2, "warmup": true
  })");
  cfg.seed = seed;
  RunArtifacts a = tcc::run_workload(cfg);
  REQUIRE(a.result.ok());
  return a;
}

std::vector<std::string> final_digests(const RunArtifacts& a) {
  std::vector<std::string> out;
  for (const tcc::PartitionState& ps : a.result.partitions) {
    out.push_back(ps.state_digest());
  }
  return out;
}

}  // namespace

TEST_CASE("replaying an honest run raises no findings") {
  const RunArtifacts a = honest_run(31);
  const std::vector<std::string> digests = final_digests(a);
  const TraceCheckReport rep = tcc::check_trace_invariants(
      a.result.history, a.result.trace, a.trace_meta, &digests);
  CHECK(rep.ok);
  CHECK(rep.failures.empty());
  CHECK(tcc::check_operational_guarantees(a.result.history, a.result.trace,
                                          a.trace_meta)
            .empty());
}

TEST_CASE("a forged reply value is caught by replay") {
  RunArtifacts a = honest_run(32);
  bool forged = false;
  for (tcc::TraceRecord& tr : a.result.trace) {
    if (auto* rr = std::get_if<tcc::ReadReply>(&tr.msg)) {
      rr->value += 1;
      forged = true;
      break;
    }
  }
  REQUIRE(forged);
  const TraceCheckReport rep = tcc::check_trace_invariants(
      a.result.history, a.result.trace, a.trace_meta);
  CHECK_FALSE(rep.ok);
  REQUIRE_FALSE(rep.failures.empty());
  CHECK(rep.failures[0].find("reply") != std::string::npos);
}

TEST_CASE("a wrong final digest is caught") {
  const RunArtifacts a = honest_run(33);
  std::vector<std::string> digests = final_digests(a);
  REQUIRE_FALSE(digests.empty());
  digests[0] = "0000000000000000";
  const TraceCheckReport rep = tcc::check_trace_invariants(
      a.result.history, a.result.trace, a.trace_meta, &digests);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("client and server views line up at serve time") {
  const RunArtifacts a = honest_run(34);
  const tcc::OperationalSets sets(a.result.history, a.result.trace,
                                  a.trace_meta);

  for (const tcc::Event& e : a.result.history.events) {
    const auto served = sets.serve_time(e.id);
    REQUIRE(served.has_value());
    CHECK(*served >= e.invoke);
    CHECK(*served <= e.ret);

    if (!e.is_write() || !e.write_cert) continue;
    // Once stable somewhere, a write stays in that partition's set.
    for (tcc::DcId d = 0; d < 2; ++d) {
      const auto since = sets.stable_since(d, e.write_cert->partition, e.id);
      if (!since) continue;
      const auto at = sets.swrites(d, e.write_cert->partition, *since);
      CHECK(std::find(at.begin(), at.end(), e.id) != at.end());
      const auto later =
          sets.swrites(d, e.write_cert->partition, *since + 1000);
      CHECK(std::find(later.begin(), later.end(), e.id) != later.end());
    }
  }

  // Completed-write sets grow along each session.
  const auto sessions = a.result.history.sessions();
  for (const auto& [sid, seq] : sessions) {
    std::size_t prev = 0;
    for (const tcc::Event* e : seq) {
      const auto done = sets.cwrites(sid, e->ret);
      CHECK(done.size() >= prev);
      prev = done.size();
    }
  }
}

TEST_CASE("serving a read before its floor is stable is flagged") {
  RunConfig cfg = tcc::parse_config(R"({
    "seed": 0, "dcs": 2, "partitionsPerDc": 1, "sessionsPerDc": 2,
    "opsPerSession": 16, "readRatio": 0.5, "keyCount": 4,
    "levelCase": "ryw/mw", "remoteFraction": 0.5, "warmup": true,
    "interDelayMin": 50, "interDelayMax": 80, "disableGetWait": true
  })");
  std::size_t flagged_runs = 0;
  for (std::uint64_t seed = 1; seed <= 10 && flagged_runs == 0; ++seed) {
    cfg.seed = seed;
    cfg.seed_set = true;
    const RunArtifacts a = tcc::run_workload(cfg);
    REQUIRE(a.result.ok());
    const auto failures = tcc::check_operational_guarantees(
        a.result.history, a.result.trace, a.trace_meta);
    flagged_runs += !failures.empty();
  }
  CHECK(flagged_runs > 0);
}
