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

#include "tcc/checker/trace_checks.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tcc/client.hpp"

namespace tcc {

namespace {

struct KnownVersion {
  EventId event = 0;
  std::string key;
  VectorClock vc;
  DcId origin = 0;
  PartitionIndex partition = 0;
};

std::vector<KnownVersion> versions_of(const History& h) {
  std::vector<KnownVersion> out;
  for (const Event& e : h.events) {
    if (!e.is_write() || !e.write_cert) continue;
    KnownVersion v;
    v.event = e.id;
    v.key = e.op.key;
    v.vc = e.write_cert->dvc;
    v.origin = e.write_cert->dc;
    v.partition = e.write_cert->partition;
    out.push_back(std::move(v));
  }
  return out;
}

bool version_present(const PartitionState& ps, const KnownVersion& v) {
  auto it = ps.store.find(v.key);
  if (it == ps.store.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const Version& w) {
                       return w.origin == v.origin &&
                              w.vc[w.origin] == v.vc[v.origin];
                     });
}

struct Replay {
  explicit Replay(const TraceMeta& meta) : meta_(meta) {
    if (meta.skews.size() !=
        static_cast<std::size_t>(meta.dims) * meta.partitions_per_dc) {
      throw std::invalid_argument("trace meta skew table has wrong size");
    }
    PartitionOptions opts;
    opts.disable_get_wait = meta.disable_get_wait;
    opts.disable_put_wait = meta.disable_put_wait;
    opts.stall_bound = meta.stall_bound;
    for (DcId d = 0; d < meta.dims; ++d) {
      for (PartitionIndex m = 0; m < meta.partitions_per_dc; ++m) {
        partitions.emplace_back(d, m, meta.dims, meta.partitions_per_dc,
                                meta.skews[slot(d, m)], opts);
      }
    }
  }

  std::size_t slot(DcId d, PartitionIndex m) const {
    return static_cast<std::size_t>(d) * meta_.partitions_per_dc + m;
  }

  /**
   * Feeds partition-bound deliveries in trace order. Calls on_step after
   * each delivery with the partition slot and the css before it.
   */
  template <typename OnStep>
  void run(const Trace& trace, std::vector<std::string>* failures,
           OnStep on_step) {
    for (const TraceRecord& tr : trace) {
      if (tr.to.kind != NodeRef::Kind::Partition) continue;
      const std::size_t s = slot(tr.to.dc, tr.to.partition);
      PartitionState& ps = partitions[s];
      const Tick clock_before = ps.clock;
      const VectorClock pvc_before = ps.pvc;
      const VectorClock css_before = ps.css;

      std::vector<Outbound> outs = ps.deliver(tr.msg, tr.time);
      for (Outbound& o : outs) {
        if (o.to.kind == NodeRef::Kind::Session) {
          if (const auto* rr = std::get_if<ReadReply>(&o.msg)) {
            replies.emplace(rr->op_id, std::move(o.msg));
          } else if (const auto* ur = std::get_if<UpdateReply>(&o.msg)) {
            replies.emplace(ur->op_id, std::move(o.msg));
          }
        }
      }

      if (failures != nullptr) {
        if (ps.clock <= clock_before) {
          failures->push_back(where(tr, s) + "clock did not advance");
        }
        if (!leq(pvc_before, ps.pvc)) {
          failures->push_back(where(tr, s) + "pvc decreased");
        }
        if (!leq(css_before, ps.css)) {
          failures->push_back(where(tr, s) + "css decreased");
        }
      }
      on_step(s, css_before, tr.time);
    }
  }

  static std::string where(const TraceRecord& tr, std::size_t s) {
    std::ostringstream o;
    o << "delivery seq=" << tr.seq << " t=" << tr.time << " slot=" << s
      << ": ";
    return o.str();
  }

  TraceMeta meta_;
  std::vector<PartitionState> partitions;
  std::map<EventId, Message> replies;
};

}  // namespace

TraceCheckReport check_trace_invariants(
    const History& h, const Trace& trace, const TraceMeta& meta,
    const std::vector<std::string>* final_digests) {
  TraceCheckReport report;
  const std::vector<KnownVersion> versions = versions_of(h);

  Replay replay(meta);
  replay.run(trace, &report.failures,
             [&](std::size_t s, const VectorClock& css_before, Tick) {
               PartitionState& ps = replay.partitions[s];
               if (css_before == ps.css) return;
               // Stability must never outrun replication.
               for (const KnownVersion& v : versions) {
                 if (v.partition != ps.index) continue;
                 if (leq(v.vc, ps.css) && !version_present(ps, v)) {
                   std::ostringstream o;
                   o << "version of event " << v.event
                     << " is covered by css but missing at (" << ps.dc << ","
                     << ps.index << ")";
                   report.failures.push_back(o.str());
                 }
               }
             });

  // Every reply in the trace must be regenerated identically.
  for (const TraceRecord& tr : trace) {
    if (tr.to.kind != NodeRef::Kind::Session) continue;
    EventId op = 0;
    if (const auto* rr = std::get_if<ReadReply>(&tr.msg)) {
      op = rr->op_id;
    } else if (const auto* ur = std::get_if<UpdateReply>(&tr.msg)) {
      op = ur->op_id;
    } else {
      report.failures.push_back("session received a non-reply message");
      continue;
    }
    auto it = replay.replies.find(op);
    if (it == replay.replies.end()) {
      report.failures.push_back("reply for op " + std::to_string(op) +
                                " was never produced in replay");
    } else if (!(it->second == tr.msg)) {
      report.failures.push_back("replayed reply for op " + std::to_string(op) +
                                " differs from the trace");
    }
  }

  if (final_digests != nullptr) {
    if (final_digests->size() != replay.partitions.size()) {
      report.failures.push_back("final state digest count mismatch");
    } else {
      for (std::size_t s = 0; s < replay.partitions.size(); ++s) {
        if (replay.partitions[s].state_digest() != (*final_digests)[s]) {
          report.failures.push_back(
              "replayed state differs from the live run at slot " +
              std::to_string(s));
        }
      }
    }
  }

  report.ok = report.failures.empty();
  return report;
}

OperationalSets::OperationalSets(const History& h, const Trace& trace,
                                 const TraceMeta& meta)
    : h_(&h), partitions_per_dc_(meta.partitions_per_dc) {
  const std::vector<KnownVersion> versions = versions_of(h);
  for (const KnownVersion& v : versions) {
    write_by_version_[{v.origin, v.vc[v.origin]}] = v.event;
  }

  Replay replay(meta);
  replay.run(trace, nullptr,
             [&](std::size_t s, const VectorClock&, Tick now) {
               PartitionState& ps = replay.partitions[s];
               for (const KnownVersion& v : versions) {
                 if (v.partition != ps.index) continue;
                 const auto key =
                     std::make_tuple(s, v.origin, v.vc[v.origin]);
                 if (stable_.count(key)) continue;
                 if (leq(v.vc, ps.css) && version_present(ps, v)) {
                   stable_[key] = now;
                 }
               }
             });

  for (const TraceRecord& tr : trace) {
    if (tr.to.kind != NodeRef::Kind::Session) continue;
    if (const auto* rr = std::get_if<ReadReply>(&tr.msg)) {
      serve_time_[rr->op_id] = tr.sent;
    } else if (const auto* ur = std::get_if<UpdateReply>(&tr.msg)) {
      serve_time_[ur->op_id] = tr.sent;
    }
  }
}

std::size_t OperationalSets::slot(DcId d, PartitionIndex m) const {
  return static_cast<std::size_t>(d) * partitions_per_dc_ + m;
}

std::vector<EventId> OperationalSets::cwrites(SessionId c, Tick t) const {
  std::vector<EventId> out;
  for (const Event& e : h_->events) {
    if (e.is_write() && e.session == c && e.ret <= t) out.push_back(e.id);
  }
  return out;
}

std::vector<EventId> OperationalSets::creads(SessionId c, Tick t) const {
  std::vector<EventId> out;
  for (const Event& e : h_->events) {
    if (!e.is_read() || e.session != c || e.ret > t || !e.read_cert) continue;
    const VectorClock& vc = e.read_cert->version_vc;
    if (vc.is_zero()) continue;  // initial value, no write behind it
    // The version's origin is the datacenter whose entry is its stamp.
    for (DcId d = 0; d < vc.dims(); ++d) {
      auto it = write_by_version_.find({d, vc[d]});
      if (it != write_by_version_.end()) {
        const Event* w = h_->find(it->second);
        if (w != nullptr && w->write_cert && w->write_cert->dvc == vc) {
          out.push_back(it->second);
          break;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<EventId> OperationalSets::swrites(DcId d, PartitionIndex m,
                                              Tick t) const {
  std::vector<EventId> out;
  const std::size_t s = slot(d, m);
  for (const auto& [key, since] : stable_) {
    if (std::get<0>(key) != s || since > t) continue;
    auto it = write_by_version_.find({std::get<1>(key), std::get<2>(key)});
    if (it != write_by_version_.end()) out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Tick> OperationalSets::stable_since(DcId d, PartitionIndex m,
                                                  EventId write) const {
  const Event* e = h_->find(write);
  if (e == nullptr || !e->write_cert) return std::nullopt;
  const DcId origin = e->write_cert->dc;
  const Tick stamp = e->write_cert->dvc[origin];
  auto it = stable_.find({slot(d, m), origin, stamp});
  if (it == stable_.end()) return std::nullopt;
  return it->second;
}

std::optional<Tick> OperationalSets::serve_time(EventId op) const {
  auto it = serve_time_.find(op);
  if (it == serve_time_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> check_operational_guarantees(const History& h,
                                                      const Trace& trace,
                                                      const TraceMeta& meta) {
  std::vector<std::string> failures;
  OperationalSets sets(h, trace, meta);

  for (const Event& e : h.events) {
    if (!e.is_read() || !e.read_cert) continue;
    const DcId d = e.read_cert->dc;
    const PartitionIndex m = e.read_cert->partition;
    const auto served = sets.serve_time(e.id);
    if (!served) {
      failures.push_back("read " + std::to_string(e.id) +
                         " has no serve time in the trace");
      continue;
    }

    auto require_stable = [&](EventId w, const char* guarantee) {
      const Event* we = h.find(w);
      if (we == nullptr || !we->write_cert) return;
      if (we->write_cert->partition != m) return;  // other partition's key
      const auto since = sets.stable_since(d, m, w);
      if (!since || *since > *served) {
        std::ostringstream o;
        o << guarantee << ": write " << w << " is not stable at (" << d << ","
          << m << ") when read " << e.id << " is served";
        failures.push_back(o.str());
      }
    };

    if (guarantees_ryw(e.level)) {
      for (EventId w : sets.cwrites(e.session, e.invoke)) {
        require_stable(w, "ryw");
      }
    }
    if (guarantees_mr(e.level)) {
      for (EventId w : sets.creads(e.session, e.invoke)) {
        require_stable(w, "mr");
      }
    }
  }
  return failures;
}

}  // namespace tcc
