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
#include <vector>

#include "fixtures.hpp"
#include "tcc/json_io.hpp"
#include "tcc/metrics.hpp"
#include "tcc/sim.hpp"

using namespace tcc;

namespace {

Event timed(Event e, Tick invoke, Tick ret) {
  e.invoke = invoke;
  e.ret = ret;
  return e;
}

TraceRecord record(Tick time, std::uint64_t seq, Tick sent, Message msg) {
  TraceRecord tr;
  tr.time = time;
  tr.seq = seq;
  tr.sent = sent;
  tr.msg = std::move(msg);
  return tr;
}

}  // namespace

TEST_CASE("latency stats follow nearest-rank percentiles") {
  using tcc::testing::rd;
  History h;
  h.dims = 1;
  // Latencies of 10, 20, 30, 40 ticks = 1, 2, 3, 4 ms.
  h.events = {
      timed(rd(0, 0, 0, "a", 0, ConsistencyLevel::Ec), 0, 10),
      timed(rd(1, 0, 1, "a", 0, ConsistencyLevel::Ec), 0, 20),
      timed(rd(2, 0, 2, "a", 0, ConsistencyLevel::Ec), 0, 30),
      timed(rd(3, 0, 3, "a", 0, ConsistencyLevel::Ec), 0, 40),
  };
  const MetricsReport m = compute_metrics(h, {}, 1, {0});
  CHECK(m.completed_ops == 4);
  CHECK(m.latency_mean_ms == doctest::Approx(2.5));
  CHECK(m.latency_p50_ms == doctest::Approx(2.0));
  CHECK(m.latency_p90_ms == doctest::Approx(4.0));
  CHECK(m.latency_p99_ms == doctest::Approx(4.0));
  CHECK(m.latency_max_ms == doctest::Approx(4.0));
  // No trace: no duration, no blocking, no metadata.
  CHECK(m.duration_ticks == 0);
  CHECK(m.read_blocking.empty());
  CHECK(m.client_metadata_entries == 0);
}

TEST_CASE("blocking, duration and metadata come from the trace") {
  using tcc::testing::rd;
  using tcc::testing::wr;
  History h;
  h.dims = 2;
  h.events = {
      timed(wr(0, 0, 0, "a", 1, ConsistencyLevel::Mw), 0, 30),
      timed(rd(1, 0, 1, "a", 1, ConsistencyLevel::Ryw), 30, 80),
  };

  ReadRequest rreq;
  rreq.op_id = 1;
  rreq.vc_r = VectorClock(2);
  rreq.vc_w = VectorClock(2);
  ReadReply rrep;
  rrep.op_id = 1;
  rrep.vc = VectorClock(2);
  rrep.gsvc = VectorClock(2);
  UpdateRequest wreq;
  wreq.op_id = 0;
  wreq.dvc = VectorClock(2);
  UpdateReply wrep;
  wrep.op_id = 0;
  wrep.vc = VectorClock(2);

  Trace t;
  // Write: request sent 0, delivered 5; reply sent 10, delivered 30.
  t.push_back(record(5, 0, 0, wreq));
  t.push_back(record(30, 1, 10, wrep));
  // Read: request sent 30, delivered 35; reply sent 75, delivered 80.
  t.push_back(record(35, 2, 30, rreq));
  t.push_back(record(80, 3, 75, rrep));

  const MetricsReport m = compute_metrics(h, t, 2, {0});
  // Duration: first request sent 0, last reply delivered 80.
  CHECK(m.duration_ticks == 80);
  CHECK(m.duration_ms == doctest::Approx(8.0));
  CHECK(m.throughput_ops_per_s == doctest::Approx(2.0 / 0.008));

  // Write waited 10 - 5 = 5 ticks, read waited 75 - 35 = 40 ticks.
  REQUIRE(m.write_blocking.count("mw") == 1);
  CHECK(m.write_blocking.at("mw").count == 1);
  CHECK(m.write_blocking.at("mw").mean_ms == doctest::Approx(0.5));
  REQUIRE(m.read_blocking.count("ryw") == 1);
  CHECK(m.read_blocking.at("ryw").mean_ms == doctest::Approx(4.0));
  CHECK(m.read_blocking.at("ryw").max_ms == doctest::Approx(4.0));
  CHECK(m.mean_read_blocking_ms() == doctest::Approx(4.0));

  // Client-facing metadata: read side carries two vectors each way,
  // write side one vector each way. Dims 2: (2+2+1+1) * 2 = 12.
  CHECK(m.client_metadata_entries == 12);

  CHECK(m.message_counts.at("ReadRequest") == 1);
  CHECK(m.message_counts.at("UpdateReply") == 1);
}

TEST_CASE("recomputing from the same run reproduces the report exactly") {
  Topology topo;
  topo.dcs = 2;
  topo.partitions_per_dc = 2;
  std::vector<SessionScript> scripts(2);
  for (SessionId s = 0; s < 2; ++s) {
    scripts[s].id = s;
    scripts[s].home = static_cast<DcId>(s);
    for (int i = 0; i < 6; ++i) {
      PlannedOp op;
      op.kind = (i % 3 == 0) ? OpKind::Write : OpKind::Read;
      op.key = (i % 2 == 0) ? "x" : "y";
      op.value = static_cast<Value>(s * 10 + i + 1);
      op.level = ConsistencyLevel::Cc;
      op.target_dc = scripts[s].home;
      scripts[s].ops.push_back(op);
    }
  }
  const RunResult res = run(topo, scripts, 99);
  REQUIRE(res.ok());

  const std::vector<DcId> home = {0, 1};
  const MetricsReport a = compute_metrics(res.history, res.trace, 2, home);
  const MetricsReport b = compute_metrics(res.history, res.trace, 2, home);
  CHECK(metrics_to_json(a) == metrics_to_json(b));
  CHECK(a.completed_ops == 12);
  CHECK(a.duration_ticks > 0);
  CHECK(a.throughput_per_dc.size() == 2);
  // Every client round trip appears in the counts.
  CHECK(a.message_counts.at("ReadRequest") == 8);
  CHECK(a.message_counts.at("ReadReply") == 8);
  CHECK(a.message_counts.at("UpdateRequest") == 4);
  CHECK(a.message_counts.at("UpdateReply") == 4);
}

TEST_CASE("csv rows line up with the header") {
  const std::string header = metrics_csv_header();
  MetricsReport m;
  m.completed_ops = 5;
  m.client_metadata_entries = 40;
  const std::string row = metrics_csv_row("sessions", "4", 11, m);
  const auto commas = [](const std::string& s) {
    return std::count(s.begin(), s.end(), ',');
  };
  CHECK(commas(header) == commas(row));
  CHECK(row.rfind("sessions,4,11,5,", 0) == 0);
  CHECK(row.find(",40,") != std::string::npos);
}
