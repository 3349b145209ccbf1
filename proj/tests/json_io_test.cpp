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

#include <sstream>
#include <stdexcept>
#include <string>

#include "fixtures.hpp"
#include "tcc/checker/brute_force.hpp"
#include "tcc/checker/certificate.hpp"
#include "tcc/json_io.hpp"
#include "tcc/metrics.hpp"
#include "tcc/sim.hpp"

using namespace tcc;

namespace {

History certified_history() {
  using tcc::testing::rd;
  using tcc::testing::wr;
  History h;
  h.dims = 2;
  Event w = wr(0, 0, 0, "a", 1, ConsistencyLevel::Mw);
  w.invoke = 3;
  w.ret = 9;
  w.target_dc = 1;
  w.write_cert = WriteCertificate{VectorClock{{4, 0}}, 1, 2};
  Event r = rd(1, 0, 1, "a", 1, ConsistencyLevel::Cc);
  r.invoke = 10;
  r.ret = 15;
  r.read_cert =
      ReadCertificate{VectorClock{{4, 0}}, VectorClock{{5, 6}}, 0, 1};
  h.events = {w, r};
  return h;
}

HistoryMeta certified_meta() {
  HistoryMeta m;
  m.dims = 2;
  m.partitions_per_dc = 3;
  m.session_home = {1};
  m.seed = 42;
  m.level_case = "cc/cc";
  return m;
}

}  // namespace

TEST_CASE("histories survive a write/read round trip unchanged") {
  const History h = certified_history();
  const HistoryMeta meta = certified_meta();
  const std::string text = history_to_string(h, meta);

  std::istringstream in(text);
  const auto [h2, meta2] = read_history(in);

  CHECK(h2.dims == h.dims);
  REQUIRE(h2.events.size() == h.events.size());
  for (std::size_t i = 0; i < h.events.size(); ++i) {
    const Event& a = h.events[i];
    const Event& b = h2.events[i];
    CHECK(b.id == a.id);
    CHECK(b.session == a.session);
    CHECK(b.session_seq == a.session_seq);
    CHECK(b.op.kind == a.op.kind);
    CHECK(b.op.key == a.op.key);
    CHECK(b.level == a.level);
    CHECK(b.rval == a.rval);
    CHECK(b.invoke == a.invoke);
    CHECK(b.ret == a.ret);
    CHECK(b.target_dc == a.target_dc);
    CHECK(b.read_cert.has_value() == a.read_cert.has_value());
    CHECK(b.write_cert.has_value() == a.write_cert.has_value());
  }
  REQUIRE(h2.events[0].write_cert);
  CHECK(h2.events[0].write_cert->dvc == VectorClock{{4, 0}});
  CHECK(h2.events[0].write_cert->dc == 1);
  CHECK(h2.events[0].write_cert->partition == 2);
  REQUIRE(h2.events[1].read_cert);
  CHECK(h2.events[1].read_cert->version_vc == VectorClock{{4, 0}});
  CHECK(h2.events[1].read_cert->gsvc == VectorClock{{5, 6}});

  CHECK(meta2.dims == meta.dims);
  CHECK(meta2.partitions_per_dc == meta.partitions_per_dc);
  CHECK(meta2.session_home == meta.session_home);
  CHECK(meta2.seed == meta.seed);
  CHECK(meta2.level_case == meta.level_case);

  // Re-emission is byte identical.
  CHECK(history_to_string(h2, meta2) == text);
}

TEST_CASE("a simulated trace survives a round trip byte for byte") {
  Topology topo;
  topo.dcs = 2;
  topo.partitions_per_dc = 2;

  std::vector<SessionScript> scripts(2);
  for (SessionId s = 0; s < 2; ++s) {
    scripts[s].id = s;
    scripts[s].home = static_cast<DcId>(s);
    for (int i = 0; i < 4; ++i) {
      PlannedOp op;
      op.kind = (i % 2 == 0) ? OpKind::Write : OpKind::Read;
      op.key = (s == 0) ? "x" : "y";
      op.value = static_cast<Value>(10 * s + i + 1);
      op.level = ConsistencyLevel::Cc;
      op.target_dc = scripts[s].home;
      scripts[s].ops.push_back(op);
    }
  }
  const RunResult res = run(topo, scripts, 5);
  REQUIRE(res.ok());
  REQUIRE_FALSE(res.trace.empty());

  TraceMeta meta;
  meta.dims = topo.dcs;
  meta.partitions_per_dc = topo.partitions_per_dc;
  meta.skews = res.skews;
  meta.stall_bound = topo.stall_bound;
  const std::string text = trace_to_string(res.trace, meta);

  std::istringstream in(text);
  const auto [t2, meta2] = read_trace(in);
  REQUIRE(t2.size() == res.trace.size());
  CHECK(meta2.skews == meta.skews);
  CHECK(meta2.dims == meta.dims);
  CHECK(meta2.partitions_per_dc == meta.partitions_per_dc);
  CHECK(meta2.stall_bound == meta.stall_bound);
  for (std::size_t i = 0; i < t2.size(); ++i) {
    CHECK(t2[i].time == res.trace[i].time);
    CHECK(t2[i].seq == res.trace[i].seq);
    CHECK(t2[i].sent == res.trace[i].sent);
    CHECK(message_kind(t2[i].msg) == message_kind(res.trace[i].msg));
  }
  CHECK(trace_to_string(t2, meta2) == text);

  // The round-tripped history still certificate-checks clean.
  HistoryMeta hmeta;
  hmeta.dims = 2;
  hmeta.partitions_per_dc = 2;
  hmeta.session_home = {0, 1};
  hmeta.seed = 5;
  hmeta.level_case = "cc/cc";
  std::istringstream hin(history_to_string(res.history, hmeta));
  const auto [h2, hmeta2] = read_history(hin);
  CHECK(check_certificate(h2).status == VerdictStatus::Satisfied);
}

TEST_CASE("malformed inputs are reported, not crashed on") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_history(in);
  };
  CHECK_THROWS_AS(parse(""), std::invalid_argument);
  CHECK_THROWS_AS(parse("not json\n"), std::invalid_argument);
  // First record must be the meta object.
  CHECK_THROWS_AS(parse(R"({"type":"event"})" "\n"), std::invalid_argument);
  // Wrong meta kind.
  CHECK_THROWS_AS(
      parse(R"({"type":"meta","kind":"trace","dims":1,"partitionsPerDc":1,)"
            R"("sessionHome":[0],"seed":1,"levelCase":"ec/ec"})" "\n"),
      std::invalid_argument);

  const std::string meta_line =
      R"({"type":"meta","kind":"history","dims":2,"partitionsPerDc":1,)"
      R"("sessionHome":[0],"seed":1,"levelCase":"ec/ec"})" "\n";
  // Unknown record type after the meta.
  CHECK_THROWS_AS(parse(meta_line + R"({"type":"blob"})" "\n"),
                  std::invalid_argument);
  // Event missing a required field.
  CHECK_THROWS_AS(parse(meta_line +
                        R"({"type":"event","id":0,"session":0,"seq":0,)"
                        R"("op":"read","level":"ec"})" "\n"),
                  std::invalid_argument);
  // Bad level token.
  CHECK_THROWS_AS(
      parse(meta_line +
            R"({"type":"event","id":0,"session":0,"seq":0,"op":"read",)"
            R"("key":"x","level":"zz","rval":0,"invoke":0,"return":1,)"
            R"("dc":0})" "\n"),
      std::invalid_argument);

  auto parse_trace = [](const std::string& s) {
    std::istringstream in(s);
    return read_trace(in);
  };
  CHECK_THROWS_AS(parse_trace(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_trace(R"({"type":"meta","kind":"history","dims":1,)"
                              R"("partitionsPerDc":1,"sessionHome":[],)"
                              R"("seed":1,"levelCase":"ec/ec"})" "\n"),
                  std::invalid_argument);
}

TEST_CASE("verdict and metrics serializers expose the fields tools read") {
  const History h = tcc::testing::figure_history();
  const Verdict v = check_brute_force(h);
  const std::string vj = verdict_to_json(v);
  CHECK(vj.find("\"status\": \"satisfied\"") != std::string::npos);
  CHECK(vj.find("\"mode\": \"brute\"") != std::string::npos);
  CHECK(vj.find("\"witness\"") != std::string::npos);
  CHECK(vj.find("\"visRyw\"") != std::string::npos);
  CHECK(vj.find("\"ar\"") != std::string::npos);

  History bad;
  bad.dims = 1;
  bad.events = {tcc::testing::rd(0, 0, 0, "x", 7, ConsistencyLevel::Ec)};
  const std::string bj = verdict_to_json(check_brute_force(bad));
  CHECK(bj.find("\"status\": \"violated\"") != std::string::npos);
  CHECK(bj.find("\"violation\"") != std::string::npos);
  CHECK(bj.find("\"predicate\"") != std::string::npos);

  MetricsReport m;
  m.completed_ops = 3;
  m.latency_mean_ms = 12.5;
  m.client_metadata_entries = 7;
  m.message_counts["Get"] = 2;
  const std::string mj = metrics_to_json(m);
  CHECK(mj.find("\"completedOps\": 3") != std::string::npos);
  CHECK(mj.find("\"meanMs\": 12.5") != std::string::npos);
  CHECK(mj.find("\"clientMetadataEntries\": 7") != std::string::npos);
  CHECK(mj.find("\"Get\": 2") != std::string::npos);
}
