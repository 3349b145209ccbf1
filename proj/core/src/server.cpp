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

#include "tcc/server.hpp"

#include <algorithm>
#include <sstream>

namespace tcc {

bool arbitration_less(const Version& a, const Version& b) {
  const Tick sa = a.vc[a.origin];
  const Tick sb = b.vc[b.origin];
  if (sa != sb) return sa < sb;
  return a.origin < b.origin;
}

const Version* latest_stable(std::span<const Version> chain,
                             const VectorClock& css) {
  const Version* best = nullptr;
  for (const Version& v : chain) {
    if (!leq(v.vc, css)) continue;
    if (best == nullptr || arbitration_less(*best, v)) best = &v;
  }
  return best;
}

PartitionState::PartitionState(DcId dc_, PartitionIndex index_,
                               std::size_t dims_,
                               std::uint32_t partitions_per_dc_,
                               std::int64_t skew_, PartitionOptions opts_)
    : dc(dc_),
      index(index_),
      dims(dims_),
      partitions_per_dc(partitions_per_dc_),
      skew(skew_),
      opts(opts_),
      pvc(dims_),
      css(dims_),
      pmc(partitions_per_dc_, VectorClock(dims_)) {
  if (dc >= dims || index >= partitions_per_dc) {
    throw std::invalid_argument("partition coordinates out of range");
  }
}

std::vector<Outbound> PartitionState::deliver(const Message& msg, Tick now) {
  // Physical clock reading: never repeats even for same-tick deliveries.
  const std::int64_t reading = static_cast<std::int64_t>(now) + skew;
  clock = std::max(clock + 1,
                   reading > 0 ? static_cast<Tick>(reading) : Tick{0});

  std::vector<Outbound> out;
  // The clock advance alone can release a parked write. Commit such writes
  // before dispatch so a propagate in this delivery replicates them instead
  // of advertising a heartbeat that already covers their stamps.
  pump(now, out);
  struct Dispatcher {
    PartitionState& self;
    Tick now;
    std::vector<Outbound>& out;
    void operator()(const ReadRequest& m) { self.handle(m, now, out); }
    void operator()(const UpdateRequest& m) { self.handle(m, now, out); }
    void operator()(const Replicate& m) { self.handle(m); }
    void operator()(const Heartbeat& m) { self.handle(m); }
    void operator()(const UpdateCss& m) { self.handle(m); }
    void operator()(const PropagateTimer&) { self.propagate(out); }
    void operator()(const BcastTimer&) { self.bcast(out); }
    void operator()(const ReadReply&) {
      throw std::invalid_argument("partition received a client reply");
    }
    void operator()(const UpdateReply&) {
      throw std::invalid_argument("partition received a client reply");
    }
  };
  std::visit(Dispatcher{*this, now, out}, msg);

  pump(now, out);

  for (const auto& p : parked) {
    const Tick since = std::holds_alternative<ParkedRead>(p)
                           ? std::get<ParkedRead>(p).since
                           : std::get<ParkedWrite>(p).since;
    if (now - since > opts.stall_bound) {
      std::ostringstream msg_s;
      msg_s << "request parked beyond stall bound at partition (" << dc << ","
            << index << ") now=" << now << ":";
      for (const std::string& pred : parked_predicates()) {
        msg_s << " [" << pred << "]";
      }
      throw StallTimeout(msg_s.str());
    }
  }
  return out;
}

bool PartitionState::read_ready(const ReadRequest& req) const {
  if (opts.disable_get_wait) return true;
  for (std::size_t i = 0; i < dims; ++i) {
    if (std::max(req.vc_r[i], req.vc_w[i]) > css[i]) return false;
  }
  return true;
}

bool PartitionState::write_ready(const UpdateRequest& req) const {
  if (opts.disable_put_wait) return true;
  return req.dvc[dc] < clock;
}

void PartitionState::handle(const ReadRequest& req, Tick now,
                            std::vector<Outbound>& out) {
  if (req.vc_r.dims() != dims || req.vc_w.dims() != dims) {
    throw std::invalid_argument("read request clock dimension mismatch");
  }
  if (read_ready(req)) {
    serve_read(req, out);
  } else {
    parked.push_back(ParkedRead{req, now});
  }
}

void PartitionState::handle(const UpdateRequest& req, Tick now,
                            std::vector<Outbound>& out) {
  if (req.dvc.dims() != dims) {
    throw std::invalid_argument("update request clock dimension mismatch");
  }
  if (write_ready(req)) {
    serve_write(req, out);
  } else {
    parked.push_back(ParkedWrite{req, now});
  }
}

void PartitionState::handle(const Replicate& rep) {
  if (rep.origin == dc) {
    throw std::invalid_argument("replicate echoed to its origin");
  }
  pvc[rep.origin] = rep.vc[rep.origin];
  Version v{rep.key, rep.value, rep.vc, rep.origin};
  if (!known_version(v)) insert_version(std::move(v));
}

void PartitionState::handle(const Heartbeat& hb) {
  if (hb.origin == dc) {
    throw std::invalid_argument("heartbeat echoed to its origin");
  }
  pvc[hb.origin] = hb.ts;
}

void PartitionState::handle(const UpdateCss& up) {
  if (up.from >= partitions_per_dc || up.pvc.dims() != dims) {
    throw std::invalid_argument("malformed stabilization message");
  }
  pmc[up.from] = up.pvc;
  recompute_css();
}

void PartitionState::propagate(std::vector<Outbound>& out) {
  pvc[dc] = clock;
  if (!updates.empty()) {
    // Buffered versions already carry ascending local stamps.
    for (const Version& v : updates) {
      for (DcId i = 0; i < dims; ++i) {
        if (i == dc) continue;
        out.push_back(
            {partition_node(i, index), Replicate{dc, v.key, v.value, v.vc}});
      }
    }
    updates.clear();
  } else {
    for (DcId i = 0; i < dims; ++i) {
      if (i == dc) continue;
      out.push_back({partition_node(i, index), Heartbeat{dc, pvc[dc]}});
    }
  }
}

void PartitionState::bcast(std::vector<Outbound>& out) {
  // Refreshing the local row keeps css live even with a single partition.
  recompute_css();
  for (PartitionIndex i = 0; i < partitions_per_dc; ++i) {
    if (i == index) continue;
    out.push_back({partition_node(dc, i), UpdateCss{index, pvc}});
  }
}

void PartitionState::serve_read(const ReadRequest& req,
                                std::vector<Outbound>& out) {
  ReadReply reply;
  reply.op_id = req.op_id;
  reply.session = req.session;
  reply.gsvc = css;
  auto it = store.find(req.key);
  const Version* v =
      it == store.end() ? nullptr
                        : latest_stable(std::span<const Version>(it->second),
                                        css);
  if (v != nullptr) {
    reply.value = v->value;
    reply.vc = v->vc;
  } else {
    reply.value = 0;
    reply.vc = VectorClock(dims);
  }
  out.push_back({session_node(req.session), std::move(reply)});
}

void PartitionState::serve_write(const UpdateRequest& req,
                                 std::vector<Outbound>& out) {
  Version v{req.key, req.value, req.dvc, dc};
  v.vc[dc] = clock;
  pvc[dc] = clock;
  insert_version(v);
  updates.push_back(v);
  out.push_back({session_node(req.session),
                 UpdateReply{req.op_id, req.session, v.vc}});
  // Distinct stamp for any further write woken in the same pass.
  clock += 1;
}

void PartitionState::pump(Tick now, std::vector<Outbound>& out) {
  (void)now;
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto it = parked.begin(); it != parked.end();) {
      bool served = false;
      if (const auto* r = std::get_if<ParkedRead>(&*it)) {
        if (read_ready(r->req)) {
          serve_read(r->req, out);
          served = true;
        }
      } else if (const auto* w = std::get_if<ParkedWrite>(&*it)) {
        if (write_ready(w->req)) {
          serve_write(w->req, out);
          served = true;
        }
      }
      if (served) {
        it = parked.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
}

void PartitionState::recompute_css() {
  pmc[index] = pvc;
  for (std::size_t j = 0; j < dims; ++j) {
    Tick m = pmc[0][j];
    for (PartitionIndex i = 1; i < partitions_per_dc; ++i) {
      m = std::min(m, pmc[i][j]);
    }
    css[j] = m;
  }
}

void PartitionState::insert_version(Version v) { store[v.key].push_back(v); }

bool PartitionState::known_version(const Version& v) const {
  auto it = store.find(v.key);
  if (it == store.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const Version& w) {
                       return w.origin == v.origin &&
                              w.vc[w.origin] == v.vc[v.origin];
                     });
}

std::vector<std::string> PartitionState::parked_predicates() const {
  std::vector<std::string> preds;
  for (const auto& p : parked) {
    std::ostringstream s;
    if (const auto* r = std::get_if<ParkedRead>(&p)) {
      s << "read op=" << r->req.op_id << " waits max(vcR,vcW)=[";
      for (std::size_t i = 0; i < dims; ++i) {
        s << (i ? "," : "") << std::max(r->req.vc_r[i], r->req.vc_w[i]);
      }
      s << "] <= css=[";
      for (std::size_t i = 0; i < dims; ++i) s << (i ? "," : "") << css[i];
      s << "]";
    } else if (const auto* w = std::get_if<ParkedWrite>(&p)) {
      s << "write op=" << w->req.op_id << " waits dvc[" << dc
        << "]=" << w->req.dvc[dc] << " < clock=" << clock;
    }
    preds.push_back(s.str());
  }
  return preds;
}

std::string PartitionState::state_digest() const {
  std::ostringstream s;
  s << "p(" << dc << "," << index << ") clock=" << clock << " pvc=[";
  for (std::size_t i = 0; i < dims; ++i) s << (i ? "," : "") << pvc[i];
  s << "] css=[";
  for (std::size_t i = 0; i < dims; ++i) s << (i ? "," : "") << css[i];
  s << "] pmc=[";
  for (PartitionIndex r = 0; r < partitions_per_dc; ++r) {
    s << (r ? ";" : "") << "[";
    for (std::size_t i = 0; i < dims; ++i) s << (i ? "," : "") << pmc[r][i];
    s << "]";
  }
  s << "] store={";
  for (const auto& [key, chain] : store) {
    s << key << ":(";
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const Version& v = chain[i];
      s << (i ? ";" : "") << v.value << "@[";
      for (std::size_t j = 0; j < dims; ++j) s << (j ? "," : "") << v.vc[j];
      s << "]o" << v.origin;
    }
    s << ")";
  }
  s << "} buffered=" << updates.size() << " parked=" << parked.size();
  return s.str();
}

}  // namespace tcc
