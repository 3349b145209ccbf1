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

#include "tcc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tcc {

namespace {

// Nearest-rank percentile over a sorted sample.
double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const std::size_t n = sorted.size();
  std::size_t rank = static_cast<std::size_t>(std::ceil(q * n));
  if (rank == 0) rank = 1;
  if (rank > n) rank = n;
  return sorted[rank - 1];
}

struct Accum {
  std::uint64_t count = 0;
  double sum = 0.0;
  double max = 0.0;

  void add(double v) {
    count += 1;
    sum += v;
    max = std::max(max, v);
  }
  BlockingStat stat() const {
    BlockingStat s;
    s.count = count;
    s.mean_ms = count == 0 ? 0.0 : sum / static_cast<double>(count);
    s.max_ms = max;
    return s;
  }
};

}  // namespace

double MetricsReport::mean_read_blocking_ms() const {
  std::uint64_t count = 0;
  double sum = 0.0;
  for (const auto& [level, stat] : read_blocking) {
    count += stat.count;
    sum += stat.mean_ms * static_cast<double>(stat.count);
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

MetricsReport compute_metrics(const History& h, const Trace& trace,
                              std::size_t dims,
                              const std::vector<DcId>& session_home) {
  MetricsReport m;
  m.completed_ops = h.events.size();

  // Per-op server wait: when its request was delivered, when its reply
  // left the server.
  std::map<EventId, Tick> request_delivered;
  std::map<EventId, Tick> reply_sent;
  Tick first_send = 0;
  bool have_first = false;
  Tick last_reply = 0;

  for (const TraceRecord& tr : trace) {
    m.message_counts[message_kind(tr.msg)] += 1;
    if (const auto* rr = std::get_if<ReadRequest>(&tr.msg)) {
      request_delivered[rr->op_id] = tr.time;
      m.client_metadata_entries += 2 * dims;
    } else if (const auto* ur = std::get_if<UpdateRequest>(&tr.msg)) {
      request_delivered[ur->op_id] = tr.time;
      m.client_metadata_entries += dims;
    } else if (const auto* rp = std::get_if<ReadReply>(&tr.msg)) {
      reply_sent[rp->op_id] = tr.sent;
      last_reply = std::max(last_reply, tr.time);
      m.client_metadata_entries += 2 * dims;
    } else if (const auto* up = std::get_if<UpdateReply>(&tr.msg)) {
      reply_sent[up->op_id] = tr.sent;
      last_reply = std::max(last_reply, tr.time);
      m.client_metadata_entries += dims;
    }
    const bool is_request = std::holds_alternative<ReadRequest>(tr.msg) ||
                            std::holds_alternative<UpdateRequest>(tr.msg);
    if (is_request && (!have_first || tr.sent < first_send)) {
      first_send = tr.sent;
      have_first = true;
    }
  }

  m.duration_ticks = last_reply >= first_send ? last_reply - first_send : 0;
  m.duration_ms = static_cast<double>(m.duration_ticks) * kMsPerTick;

  std::vector<double> latencies;
  std::map<std::string, Accum> read_acc;
  std::map<std::string, Accum> write_acc;
  std::vector<std::uint64_t> ops_per_dc;

  for (const Event& e : h.events) {
    latencies.push_back(static_cast<double>(e.ret - e.invoke) * kMsPerTick);

    if (e.session < session_home.size()) {
      const DcId home = session_home[e.session];
      if (ops_per_dc.size() <= home) ops_per_dc.resize(home + 1, 0);
      ops_per_dc[home] += 1;
    }

    auto rd = request_delivered.find(e.id);
    auto rs = reply_sent.find(e.id);
    if (rd == request_delivered.end() || rs == reply_sent.end()) continue;
    const double wait =
        rs->second >= rd->second
            ? static_cast<double>(rs->second - rd->second) * kMsPerTick
            : 0.0;
    const std::string level(to_string(e.level));
    if (e.is_read()) {
      read_acc[level].add(wait);
    } else {
      write_acc[level].add(wait);
    }
  }

  for (const auto& [level, acc] : read_acc) m.read_blocking[level] = acc.stat();
  for (const auto& [level, acc] : write_acc) {
    m.write_blocking[level] = acc.stat();
  }

  if (!latencies.empty()) {
    std::sort(latencies.begin(), latencies.end());
    double sum = 0.0;
    for (double v : latencies) sum += v;
    m.latency_mean_ms = sum / static_cast<double>(latencies.size());
    m.latency_p50_ms = percentile(latencies, 0.50);
    m.latency_p90_ms = percentile(latencies, 0.90);
    m.latency_p99_ms = percentile(latencies, 0.99);
    m.latency_max_ms = latencies.back();
  }

  const double duration_s = m.duration_ms / 1000.0;
  if (duration_s > 0.0) {
    m.throughput_ops_per_s =
        static_cast<double>(m.completed_ops) / duration_s;
    for (std::uint64_t ops : ops_per_dc) {
      m.throughput_per_dc.push_back(static_cast<double>(ops) / duration_s);
    }
  }
  return m;
}

std::string metrics_csv_header() {
  return "axis,value,seed,completedOps,durationMs,throughputOpsPerS,"
         "latencyMeanMs,latencyP50Ms,latencyP90Ms,latencyP99Ms,latencyMaxMs,"
         "meanReadBlockingMs,meanWriteBlockingMs,clientMetadataEntries,"
         "messagesTotal";
}

std::string metrics_csv_row(const std::string& axis,
                            const std::string& axis_value,
                            std::uint64_t seed, const MetricsReport& m) {
  std::uint64_t messages = 0;
  for (const auto& [kind, count] : m.message_counts) messages += count;

  std::uint64_t wcount = 0;
  double wsum = 0.0;
  for (const auto& [level, stat] : m.write_blocking) {
    wcount += stat.count;
    wsum += stat.mean_ms * static_cast<double>(stat.count);
  }
  const double write_mean =
      wcount == 0 ? 0.0 : wsum / static_cast<double>(wcount);

  std::ostringstream s;
  s << axis << ',' << axis_value << ',' << seed << ',' << m.completed_ops
    << ',' << m.duration_ms << ',' << m.throughput_ops_per_s << ','
    << m.latency_mean_ms << ',' << m.latency_p50_ms << ',' << m.latency_p90_ms
    << ',' << m.latency_p99_ms << ',' << m.latency_max_ms << ','
    << m.mean_read_blocking_ms() << ',' << write_mean << ','
    << m.client_metadata_entries << ',' << messages;
  return s.str();
}

}  // namespace tcc
