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

#include "tcc/sim.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "tcc/rng.hpp"

namespace tcc {

void validate_topology(const Topology& t) {
  if (t.dcs == 0) throw std::invalid_argument("need at least one datacenter");
  if (t.partitions_per_dc == 0) {
    throw std::invalid_argument("need at least one partition per datacenter");
  }
  if (t.intra.min == 0 || t.inter.min == 0) {
    throw std::invalid_argument("latency must be at least one tick");
  }
  if (t.intra.min > t.intra.max || t.inter.min > t.inter.max) {
    throw std::invalid_argument("latency range is inverted");
  }
  if (t.propagate_period == 0 || t.bcast_period == 0) {
    throw std::invalid_argument("timer periods must be positive");
  }
  if (t.stall_bound == 0) {
    throw std::invalid_argument("stall bound must be positive");
  }
}

std::int64_t clock_of(Tick now, std::int64_t skew) {
  return static_cast<std::int64_t>(now) + skew;
}

Tick fifo_delivery(Tick now, Tick delay, std::optional<Tick> last_delivery) {
  const Tick at = now + delay;
  if (last_delivery && at <= *last_delivery) return *last_delivery + 1;
  return at;
}

namespace {

struct QueuedEvent {
  Tick at = 0;
  std::uint64_t seq = 0;
  Tick sent = 0;
  NodeRef from;
  NodeRef to;
  Message msg;
};

struct QueueOrder {
  bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
    if (a.at != b.at) return a.at > b.at;
    return a.seq > b.seq;
  }
};

struct PendingOp {
  EventId id = 0;
  std::uint32_t session_seq = 0;
  Operation op;
  ConsistencyLevel level = ConsistencyLevel::Ec;
  DcId target_dc = 0;
  PartitionIndex target_partition = 0;
  Tick invoke = 0;
};

struct SessionRuntime {
  explicit SessionRuntime(const SessionScript& s, std::size_t dims)
      : script(&s), state(s.id, s.home, dims) {}

  const SessionScript* script;
  SessionState state;
  std::size_t next_op = 0;
  std::optional<PendingOp> pending;
  bool started = false;
  bool done = false;
};

class Simulation {
 public:
  Simulation(const Topology& t, const std::vector<SessionScript>& scripts,
             std::uint64_t seed, SimOptions options)
      : topology_(t), options_(options), rng_(seed) {
    validate_topology(t);
    validate_scripts(scripts);

    const std::size_t dims = t.dcs;
    const std::uint32_t n = t.partitions_per_dc;
    PartitionOptions popts;
    popts.disable_get_wait = options.disable_get_wait;
    popts.disable_put_wait = options.disable_put_wait;
    popts.stall_bound = t.stall_bound;
    for (DcId d = 0; d < t.dcs; ++d) {
      for (PartitionIndex m = 0; m < n; ++m) {
        // Offsets are drawn in partition order before any latency draw.
        const std::int64_t skew =
            t.clock_skew == 0
                ? 0
                : static_cast<std::int64_t>(
                      rng_.uniform(0, 2 * t.clock_skew)) -
                      static_cast<std::int64_t>(t.clock_skew);
        result_.skews.push_back(skew);
        partitions_.emplace_back(d, m, dims, n, skew, popts);
      }
    }
    for (const SessionScript& s : scripts) {
      sessions_.emplace_back(s, dims);
    }
    result_.history.dims = dims;
  }

  RunResult take() && { return std::move(result_); }

  void execute() {
    schedule_initial();
    bool broke_off = false;
    while (!queue_.empty()) {
      QueuedEvent ev = queue_.top();

      if (all_done_ && !settle_checked_ && ev.at > result_.settle_deadline) {
        take_settle_snapshot();
      }
      // Timers keep the queue alive forever, so lack of client progress
      // is the deadlock signal. The grace period is a multiple of the
      // stall bound so a parked request hits its own, more precise,
      // timeout first.
      if (!all_done_ && ev.at > last_progress_ + 4 * topology_.stall_bound) {
        result_.status = RunStatus::Deadlock;
        result_.diagnostics = deadlock_report();
        broke_off = true;
        break;
      }
      queue_.pop();
      now_ = ev.at;
      result_.end_time = std::max(result_.end_time, now_);
      record(ev);

      try {
        dispatch(ev);
      } catch (const StallTimeout& e) {
        result_.status = RunStatus::Stalled;
        result_.diagnostics = e.what();
        broke_off = true;
        break;
      }
    }

    if (!broke_off) {
      if (!all_done_) {
        result_.status = RunStatus::Deadlock;
        result_.diagnostics = deadlock_report();
      } else if (!settle_checked_) {
        take_settle_snapshot();
      }
    }

    std::sort(result_.history.events.begin(), result_.history.events.end(),
              [](const Event& a, const Event& b) { return a.id < b.id; });
    result_.partitions = partitions_;
    for (const SessionRuntime& sr : sessions_) {
      result_.session_states.push_back(sr.state);
    }
  }

 private:
  void validate_scripts(const std::vector<SessionScript>& scripts) const {
    for (std::size_t i = 0; i < scripts.size(); ++i) {
      if (scripts[i].id != i) {
        throw std::invalid_argument("session ids must be dense from zero");
      }
      if (scripts[i].home >= topology_.dcs) {
        throw std::invalid_argument("session homed at unknown datacenter");
      }
      if (scripts[i].start_after &&
          (*scripts[i].start_after >= scripts.size() ||
           *scripts[i].start_after == scripts[i].id)) {
        throw std::invalid_argument("session gate references a bad session");
      }
      for (const PlannedOp& op : scripts[i].ops) {
        if (op.target_dc >= topology_.dcs) {
          throw std::invalid_argument("operation routed to unknown datacenter");
        }
        if (op.kind == OpKind::Read && !is_read_level(op.level)) {
          throw std::invalid_argument("scripted read with write-only level");
        }
        if (op.kind == OpKind::Write && !is_write_level(op.level)) {
          throw std::invalid_argument("scripted write with read-only level");
        }
      }
    }
  }

  std::size_t partition_slot(DcId d, PartitionIndex m) const {
    return static_cast<std::size_t>(d) * topology_.partitions_per_dc + m;
  }

  void schedule_initial() {
    for (std::size_t p = 0; p < partitions_.size(); ++p) {
      const PartitionState& ps = partitions_[p];
      schedule_timer(ps.dc, ps.index, PropagateTimer{},
                     topology_.propagate_period);
      schedule_timer(ps.dc, ps.index, BcastTimer{}, topology_.bcast_period);
    }
    for (SessionRuntime& sr : sessions_) {
      if (!sr.script->start_after) start_session(sr, 0);
    }
    if (sessions_.empty()) {
      all_done_ = true;
      result_.quiescence_time = 0;
      result_.settle_deadline = settle_window();
      snapshot_quiescence();
    }
  }

  Tick settle_window() const {
    return options_.settle_multiplier *
           (topology_.inter.max + topology_.propagate_period +
            topology_.bcast_period);
  }

  void schedule_timer(DcId d, PartitionIndex m, Message msg, Tick at) {
    QueuedEvent ev;
    ev.at = at;
    ev.seq = next_seq_++;
    ev.sent = at;
    ev.from = timer_node(d, m);
    ev.to = partition_node(d, m);
    ev.msg = std::move(msg);
    queue_.push(std::move(ev));
  }

  void send(const NodeRef& from, const NodeRef& to, Message msg) {
    const DcId from_dc = locate(from);
    const DcId to_dc = locate(to);
    const DelayRange& range =
        from_dc == to_dc ? topology_.intra : topology_.inter;
    const Tick delay = rng_.uniform(range.min, range.max);

    const auto channel = std::make_pair(node_key(from), node_key(to));
    auto it = last_delivery_.find(channel);
    const Tick at = fifo_delivery(
        now_, delay,
        it == last_delivery_.end() ? std::nullopt
                                   : std::optional<Tick>(it->second));
    last_delivery_[channel] = at;

    QueuedEvent ev;
    ev.at = at;
    ev.seq = next_seq_++;
    ev.sent = now_;
    ev.from = from;
    ev.to = to;
    ev.msg = std::move(msg);
    queue_.push(std::move(ev));
  }

  DcId locate(const NodeRef& n) const {
    if (n.kind == NodeRef::Kind::Session) return sessions_[n.session].state.home;
    return n.dc;
  }

  void record(const QueuedEvent& ev) {
    TraceRecord tr;
    tr.time = ev.at;
    tr.seq = ev.seq;
    tr.sent = ev.sent;
    tr.from = ev.from;
    tr.to = ev.to;
    tr.msg = ev.msg;
    result_.trace.push_back(std::move(tr));
  }

  void dispatch(const QueuedEvent& ev) {
    if (ev.to.kind == NodeRef::Kind::Session) {
      handle_reply(ev);
      return;
    }
    PartitionState& ps = partitions_[partition_slot(ev.to.dc, ev.to.partition)];
    std::vector<Outbound> outs = ps.deliver(ev.msg, now_);
    for (Outbound& o : outs) {
      send(partition_node(ps.dc, ps.index), o.to, std::move(o.msg));
    }
    if (std::holds_alternative<PropagateTimer>(ev.msg)) {
      maybe_reschedule(ev.to, PropagateTimer{}, topology_.propagate_period);
    } else if (std::holds_alternative<BcastTimer>(ev.msg)) {
      maybe_reschedule(ev.to, BcastTimer{}, topology_.bcast_period);
    }
  }

  void maybe_reschedule(const NodeRef& node, Message msg, Tick period) {
    const Tick at = now_ + period;
    if (all_done_ && at > result_.settle_deadline) return;
    schedule_timer(node.dc, node.partition, std::move(msg), at);
  }

  void handle_reply(const QueuedEvent& ev) {
    last_progress_ = now_;
    SessionRuntime& sr = sessions_[ev.to.session];
    if (!sr.pending) {
      throw std::logic_error("session got a reply with nothing in flight");
    }
    const PendingOp pending = *sr.pending;
    sr.pending.reset();

    Event e;
    e.id = pending.id;
    e.session = sr.script->id;
    e.session_seq = pending.session_seq;
    e.op = pending.op;
    e.level = pending.level;
    e.invoke = pending.invoke;
    e.ret = now_;
    e.target_dc = pending.target_dc;

    if (const auto* rr = std::get_if<ReadReply>(&ev.msg)) {
      if (rr->op_id != pending.id) {
        throw std::logic_error("out-of-order read reply");
      }
      e.rval = rr->value;
      e.read_cert = ReadCertificate{rr->vc, rr->gsvc, pending.target_dc,
                                    pending.target_partition};
      apply_read_reply(sr.state, rr->vc, rr->gsvc);
    } else if (const auto* ur = std::get_if<UpdateReply>(&ev.msg)) {
      if (ur->op_id != pending.id) {
        throw std::logic_error("out-of-order update reply");
      }
      e.write_cert = WriteCertificate{ur->vc, pending.target_dc,
                                      pending.target_partition};
      apply_write_reply(sr.state, ur->vc);
    } else {
      throw std::logic_error("session received a non-reply message");
    }
    result_.history.events.push_back(std::move(e));

    issue_next(sr);
  }

  void start_session(SessionRuntime& sr, Tick /*now*/) {
    sr.started = true;
    issue_next(sr);
  }

  void issue_next(SessionRuntime& sr) {
    if (sr.next_op >= sr.script->ops.size()) {
      finish_session(sr);
      return;
    }
    const PlannedOp& planned = sr.script->ops[sr.next_op];

    PendingOp p;
    p.id = next_event_id_++;
    p.session_seq = static_cast<std::uint32_t>(sr.next_op);
    p.op.kind = planned.kind;
    p.op.key = planned.key;
    p.op.value = planned.value;
    p.level = planned.level;
    p.target_dc = planned.target_dc;
    p.target_partition =
        partition_of(planned.key, topology_.partitions_per_dc);
    p.invoke = now_;
    sr.next_op += 1;

    Message msg;
    if (planned.kind == OpKind::Read) {
      auto [vc_r, vc_w] = select_read_vectors(planned.level, sr.state);
      msg = ReadRequest{p.id, sr.script->id, planned.key, std::move(vc_r),
                        std::move(vc_w)};
    } else {
      msg = UpdateRequest{p.id, sr.script->id, planned.key, planned.value,
                          select_write_vector(planned.level, sr.state)};
    }
    sr.pending = p;
    send(session_node(sr.script->id),
         partition_node(p.target_dc, p.target_partition), std::move(msg));
  }

  void finish_session(SessionRuntime& sr) {
    sr.done = true;
    for (SessionRuntime& other : sessions_) {
      if (!other.started && other.script->start_after == sr.script->id) {
        start_session(other, now_);
      }
    }
    if (std::all_of(sessions_.begin(), sessions_.end(),
                    [](const SessionRuntime& s) { return s.done; })) {
      all_done_ = true;
      result_.quiescence_time = now_;
      result_.settle_deadline = now_ + settle_window();
      snapshot_quiescence();
    }
  }

  void snapshot_quiescence() {
    for (const PartitionState& ps : partitions_) {
      result_.pvc_at_quiescence.push_back(ps.pvc);
    }
  }

  void take_settle_snapshot() {
    settle_checked_ = true;
    result_.unstable = unstable_versions();
    result_.settled = result_.unstable.empty();
  }

  // Every committed version must be present and covered by css at the
  // sibling partition of every datacenter.
  std::vector<std::string> unstable_versions() const {
    std::vector<std::string> missing;
    for (const Event& e : result_.history.events) {
      if (!e.is_write() || !e.write_cert) continue;
      const VectorClock& vc = e.write_cert->dvc;
      const DcId origin = e.write_cert->dc;
      const PartitionIndex m = e.write_cert->partition;
      for (DcId d = 0; d < topology_.dcs; ++d) {
        const PartitionState& ps = partitions_[partition_slot(d, m)];
        bool found = false;
        auto it = ps.store.find(e.op.key);
        if (it != ps.store.end()) {
          for (const Version& v : it->second) {
            if (v.origin == origin && v.vc[origin] == vc[origin]) {
              found = leq(v.vc, ps.css);
              break;
            }
          }
        }
        if (!found) {
          std::ostringstream s;
          s << "event " << e.id << " key=" << e.op.key << " origin=" << origin
            << " stamp=" << vc[origin] << " not stable at (" << d << "," << m
            << ")";
          missing.push_back(s.str());
        }
      }
    }
    return missing;
  }

  std::string deadlock_report() const {
    std::ostringstream s;
    s << "no deliverable messages left but the run is incomplete;";
    for (const PartitionState& ps : partitions_) {
      for (const std::string& pred : ps.parked_predicates()) {
        s << " partition(" << ps.dc << "," << ps.index << "): " << pred << ";";
      }
    }
    for (const SessionRuntime& sr : sessions_) {
      if (!sr.done) {
        s << " session " << sr.script->id << " stuck at op " << sr.next_op
          << (sr.started ? "" : " (never started)") << ";";
      }
    }
    return s.str();
  }

  Topology topology_;
  SimOptions options_;
  Rng rng_;

  std::vector<PartitionState> partitions_;
  std::vector<SessionRuntime> sessions_;

  std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, QueueOrder>
      queue_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Tick> last_delivery_;
  std::uint64_t next_seq_ = 0;
  EventId next_event_id_ = 0;
  Tick now_ = 0;
  Tick last_progress_ = 0;
  bool all_done_ = false;
  bool settle_checked_ = false;

  RunResult result_;
};

}  // namespace

RunResult run(const Topology& topology,
              const std::vector<SessionScript>& scripts, std::uint64_t seed,
              SimOptions options) {
  Simulation sim(topology, scripts, seed, options);
  sim.execute();
  return std::move(sim).take();
}

}  // namespace tcc
