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

#include "tcc/json_io.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace tcc {
namespace {

using Json = nlohmann::ordered_json;

Json vc_json(const VectorClock& vc) { return Json(vc.entries()); }

VectorClock vc_from(const Json& a) {
  VectorClock vc(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    vc[i] = a.at(i).get<Tick>();
  }
  return vc;
}

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("malformed input: " + what);
}

Json parse_line(const std::string& line, const char* expect_type) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type")) bad("record without a type");
  if (expect_type != nullptr && j.at("type") != expect_type) {
    bad("expected a \"" + std::string(expect_type) + "\" record, got \"" +
        j.at("type").get<std::string>() + "\"");
  }
  return j;
}

Json event_json(const Event& e) {
  Json j;
  j["type"] = "event";
  j["id"] = e.id;
  j["session"] = e.session;
  j["seq"] = e.session_seq;
  j["op"] = e.is_read() ? "read" : "write";
  j["key"] = e.op.key;
  if (e.is_write()) j["value"] = e.op.value;
  j["level"] = to_string(e.level);
  if (e.rval.has_value()) {
    j["rval"] = *e.rval;
  } else {
    j["rval"] = nullptr;
  }
  j["invoke"] = e.invoke;
  j["return"] = e.ret;
  j["dc"] = e.target_dc;
  if (e.read_cert.has_value()) {
    Json c;
    c["vc"] = vc_json(e.read_cert->version_vc);
    c["gsvc"] = vc_json(e.read_cert->gsvc);
    c["dc"] = e.read_cert->dc;
    c["partition"] = e.read_cert->partition;
    j["readCert"] = std::move(c);
  }
  if (e.write_cert.has_value()) {
    Json c;
    c["dvc"] = vc_json(e.write_cert->dvc);
    c["dc"] = e.write_cert->dc;
    c["partition"] = e.write_cert->partition;
    j["writeCert"] = std::move(c);
  }
  return j;
}

Event event_from(const Json& j) {
  Event e;
  e.id = j.at("id").get<EventId>();
  e.session = j.at("session").get<SessionId>();
  e.session_seq = j.at("seq").get<std::uint32_t>();
  const std::string op = j.at("op").get<std::string>();
  if (op == "read") {
    e.op.kind = OpKind::Read;
  } else if (op == "write") {
    e.op.kind = OpKind::Write;
  } else {
    bad("unknown op kind \"" + op + "\"");
  }
  e.op.key = j.at("key").get<std::string>();
  if (j.contains("value")) e.op.value = j.at("value").get<Value>();
  e.level = parse_level(j.at("level").get<std::string>());
  if (j.contains("rval") && !j.at("rval").is_null()) {
    e.rval = j.at("rval").get<Value>();
  }
  e.invoke = j.at("invoke").get<Tick>();
  e.ret = j.at("return").get<Tick>();
  e.target_dc = j.at("dc").get<DcId>();
  if (j.contains("readCert")) {
    const Json& c = j.at("readCert");
    ReadCertificate rc;
    rc.version_vc = vc_from(c.at("vc"));
    rc.gsvc = vc_from(c.at("gsvc"));
    rc.dc = c.at("dc").get<DcId>();
    rc.partition = c.at("partition").get<PartitionIndex>();
    e.read_cert = std::move(rc);
  }
  if (j.contains("writeCert")) {
    const Json& c = j.at("writeCert");
    WriteCertificate wc;
    wc.dvc = vc_from(c.at("dvc"));
    wc.dc = c.at("dc").get<DcId>();
    wc.partition = c.at("partition").get<PartitionIndex>();
    e.write_cert = std::move(wc);
  }
  return e;
}

Json node_json(const NodeRef& n) {
  Json j;
  switch (n.kind) {
    case NodeRef::Kind::Partition:
      j["kind"] = "partition";
      j["dc"] = n.dc;
      j["m"] = n.partition;
      break;
    case NodeRef::Kind::Session:
      j["kind"] = "session";
      j["id"] = n.session;
      break;
    case NodeRef::Kind::Timer:
      j["kind"] = "timer";
      j["dc"] = n.dc;
      j["m"] = n.partition;
      break;
  }
  return j;
}

NodeRef node_from(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "partition") {
    return partition_node(j.at("dc").get<DcId>(),
                          j.at("m").get<PartitionIndex>());
  }
  if (kind == "session") return session_node(j.at("id").get<SessionId>());
  if (kind == "timer") {
    return timer_node(j.at("dc").get<DcId>(), j.at("m").get<PartitionIndex>());
  }
  bad("unknown node kind \"" + kind + "\"");
}

Json message_json(const Message& m) {
  Json j;
  j["kind"] = message_kind(m);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ReadRequest>) {
          j["op"] = v.op_id;
          j["session"] = v.session;
          j["key"] = v.key;
          j["vcR"] = vc_json(v.vc_r);
          j["vcW"] = vc_json(v.vc_w);
        } else if constexpr (std::is_same_v<T, ReadReply>) {
          j["op"] = v.op_id;
          j["session"] = v.session;
          j["value"] = v.value;
          j["vc"] = vc_json(v.vc);
          j["gsvc"] = vc_json(v.gsvc);
        } else if constexpr (std::is_same_v<T, UpdateRequest>) {
          j["op"] = v.op_id;
          j["session"] = v.session;
          j["key"] = v.key;
          j["value"] = v.value;
          j["dvc"] = vc_json(v.dvc);
        } else if constexpr (std::is_same_v<T, UpdateReply>) {
          j["op"] = v.op_id;
          j["session"] = v.session;
          j["vc"] = vc_json(v.vc);
        } else if constexpr (std::is_same_v<T, Replicate>) {
          j["origin"] = v.origin;
          j["key"] = v.key;
          j["value"] = v.value;
          j["vc"] = vc_json(v.vc);
        } else if constexpr (std::is_same_v<T, Heartbeat>) {
          j["origin"] = v.origin;
          j["ts"] = v.ts;
        } else if constexpr (std::is_same_v<T, UpdateCss>) {
          j["from"] = v.from;
          j["pvc"] = vc_json(v.pvc);
        }
        // Timer alternatives carry no payload.
      },
      m);
  return j;
}

Message message_from(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ReadRequest") {
    ReadRequest v;
    v.op_id = j.at("op").get<EventId>();
    v.session = j.at("session").get<SessionId>();
    v.key = j.at("key").get<std::string>();
    v.vc_r = vc_from(j.at("vcR"));
    v.vc_w = vc_from(j.at("vcW"));
    return v;
  }
  if (kind == "ReadReply") {
    ReadReply v;
    v.op_id = j.at("op").get<EventId>();
    v.session = j.at("session").get<SessionId>();
    v.value = j.at("value").get<Value>();
    v.vc = vc_from(j.at("vc"));
    v.gsvc = vc_from(j.at("gsvc"));
    return v;
  }
  if (kind == "UpdateRequest") {
    UpdateRequest v;
    v.op_id = j.at("op").get<EventId>();
    v.session = j.at("session").get<SessionId>();
    v.key = j.at("key").get<std::string>();
    v.value = j.at("value").get<Value>();
    v.dvc = vc_from(j.at("dvc"));
    return v;
  }
  if (kind == "UpdateReply") {
    UpdateReply v;
    v.op_id = j.at("op").get<EventId>();
    v.session = j.at("session").get<SessionId>();
    v.vc = vc_from(j.at("vc"));
    return v;
  }
  if (kind == "Replicate") {
    Replicate v;
    v.origin = j.at("origin").get<DcId>();
    v.key = j.at("key").get<std::string>();
    v.value = j.at("value").get<Value>();
    v.vc = vc_from(j.at("vc"));
    return v;
  }
  if (kind == "Heartbeat") {
    Heartbeat v;
    v.origin = j.at("origin").get<DcId>();
    v.ts = j.at("ts").get<Tick>();
    return v;
  }
  if (kind == "UpdateCSS") {
    UpdateCss v;
    v.from = j.at("from").get<PartitionIndex>();
    v.pvc = vc_from(j.at("pvc"));
    return v;
  }
  if (kind == "PropagateTimer") return PropagateTimer{};
  if (kind == "BcastTimer") return BcastTimer{};
  bad("unknown message kind \"" + kind + "\"");
}

}  // namespace

void write_history(std::ostream& out, const History& h,
                   const HistoryMeta& meta) {
  Json m;
  m["type"] = "meta";
  m["kind"] = "history";
  m["dims"] = meta.dims;
  m["partitionsPerDc"] = meta.partitions_per_dc;
  m["sessionHome"] = meta.session_home;
  m["seed"] = meta.seed;
  m["levelCase"] = meta.level_case;
  out << m.dump() << '\n';
  for (const Event& e : h.events) out << event_json(e).dump() << '\n';
}

std::pair<History, HistoryMeta> read_history(std::istream& in) {
  try {
    std::string line;
    if (!std::getline(in, line)) bad("empty history file");
    const Json m = parse_line(line, "meta");
    if (m.at("kind") != "history") bad("meta record is not a history meta");
    HistoryMeta meta;
    meta.dims = m.at("dims").get<std::size_t>();
    meta.partitions_per_dc = m.at("partitionsPerDc").get<std::uint32_t>();
    meta.session_home = m.at("sessionHome").get<std::vector<DcId>>();
    meta.seed = m.at("seed").get<std::uint64_t>();
    meta.level_case = m.at("levelCase").get<std::string>();

    History h;
    h.dims = meta.dims;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      h.events.push_back(event_from(parse_line(line, "event")));
    }
    return {std::move(h), std::move(meta)};
  } catch (const nlohmann::json::exception& e) {
    // Missing or mistyped fields anywhere in the file.
    bad(e.what());
  }
}

void write_trace(std::ostream& out, const Trace& t, const TraceMeta& meta) {
  Json m;
  m["type"] = "meta";
  m["kind"] = "trace";
  m["dims"] = meta.dims;
  m["partitionsPerDc"] = meta.partitions_per_dc;
  m["skews"] = meta.skews;
  m["disableGetWait"] = meta.disable_get_wait;
  m["disablePutWait"] = meta.disable_put_wait;
  m["stallBound"] = meta.stall_bound;
  out << m.dump() << '\n';
  for (const TraceRecord& r : t) {
    Json j;
    j["type"] = "delivery";
    j["time"] = r.time;
    j["seq"] = r.seq;
    j["sent"] = r.sent;
    j["from"] = node_json(r.from);
    j["to"] = node_json(r.to);
    j["msg"] = message_json(r.msg);
    out << j.dump() << '\n';
  }
}

std::pair<Trace, TraceMeta> read_trace(std::istream& in) {
  try {
    std::string line;
    if (!std::getline(in, line)) bad("empty trace file");
    const Json m = parse_line(line, "meta");
    if (m.at("kind") != "trace") bad("meta record is not a trace meta");
    TraceMeta meta;
    meta.dims = m.at("dims").get<std::size_t>();
    meta.partitions_per_dc = m.at("partitionsPerDc").get<std::uint32_t>();
    meta.skews = m.at("skews").get<std::vector<std::int64_t>>();
    meta.disable_get_wait = m.at("disableGetWait").get<bool>();
    meta.disable_put_wait = m.at("disablePutWait").get<bool>();
    meta.stall_bound = m.at("stallBound").get<Tick>();

    Trace t;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const Json j = parse_line(line, "delivery");
      TraceRecord r;
      r.time = j.at("time").get<Tick>();
      r.seq = j.at("seq").get<std::uint64_t>();
      r.sent = j.at("sent").get<Tick>();
      r.from = node_from(j.at("from"));
      r.to = node_from(j.at("to"));
      r.msg = message_from(j.at("msg"));
      t.push_back(std::move(r));
    }
    return {std::move(t), std::move(meta)};
  } catch (const nlohmann::json::exception& e) {
    // Missing or mistyped fields anywhere in the file.
    bad(e.what());
  }
}

std::string history_to_string(const History& h, const HistoryMeta& meta) {
  std::ostringstream out;
  write_history(out, h, meta);
  return out.str();
}

std::string trace_to_string(const Trace& t, const TraceMeta& meta) {
  std::ostringstream out;
  write_trace(out, t, meta);
  return out.str();
}

std::string verdict_to_json(const Verdict& v) {
  Json j;
  j["mode"] = v.mode;
  switch (v.status) {
    case VerdictStatus::Satisfied:
      j["status"] = "satisfied";
      break;
    case VerdictStatus::Violated:
      j["status"] = "violated";
      break;
    case VerdictStatus::Undecided:
      j["status"] = "undecided";
      break;
  }
  if (v.witness.has_value()) {
    Json w;
    auto pairs = [](const std::vector<std::pair<EventId, EventId>>& ps) {
      Json a = Json::array();
      for (const auto& [x, y] : ps) a.push_back(Json::array({x, y}));
      return a;
    };
    w["visRyw"] = pairs(v.witness->vis_ryw);
    w["visMr"] = pairs(v.witness->vis_mr);
    w["visEc"] = pairs(v.witness->vis_ec);
    w["ar"] = v.witness->ar;
    j["witness"] = std::move(w);
  }
  if (v.violation.has_value()) {
    Json viol;
    viol["predicate"] = v.violation->predicate;
    viol["events"] = v.violation->events;
    viol["detail"] = v.violation->detail;
    j["violation"] = std::move(viol);
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j.dump(2);
}

std::string metrics_to_json(const MetricsReport& m) {
  Json j;
  j["completedOps"] = m.completed_ops;
  j["durationMs"] = m.duration_ms;
  j["throughputOpsPerS"] = m.throughput_ops_per_s;
  j["throughputPerDc"] = m.throughput_per_dc;
  Json lat;
  lat["meanMs"] = m.latency_mean_ms;
  lat["p50Ms"] = m.latency_p50_ms;
  lat["p90Ms"] = m.latency_p90_ms;
  lat["p99Ms"] = m.latency_p99_ms;
  lat["maxMs"] = m.latency_max_ms;
  j["latency"] = std::move(lat);
  auto blocking = [](const std::map<std::string, BlockingStat>& by_level) {
    Json b;
    for (const auto& [level, stat] : by_level) {
      Json s;
      s["count"] = stat.count;
      s["meanMs"] = stat.mean_ms;
      s["maxMs"] = stat.max_ms;
      b[level] = std::move(s);
    }
    return b;
  };
  j["readBlocking"] = blocking(m.read_blocking);
  j["writeBlocking"] = blocking(m.write_blocking);
  Json counts;
  for (const auto& [kind, n] : m.message_counts) counts[kind] = n;
  j["messageCounts"] = std::move(counts);
  j["clientMetadataEntries"] = m.client_metadata_entries;
  return j.dump(2);
}

}  // namespace tcc
