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

#include "tcc/checker/brute_force.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tcc {

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

struct Indexed {
  const History* h = nullptr;
  std::vector<const Event*> ev;  // position = index, ascending event id
  std::map<EventId, std::size_t> pos;
  std::vector<std::size_t> reads;
  std::vector<std::size_t> writes;
  std::vector<std::vector<std::size_t>> so_prefix;  // session-prior indices
};

Indexed build_index(const History& h) {
  Indexed ix;
  ix.h = &h;
  for (const Event& e : h.events) ix.ev.push_back(&e);
  std::sort(ix.ev.begin(), ix.ev.end(),
            [](const Event* a, const Event* b) { return a->id < b->id; });
  ix.so_prefix.resize(ix.ev.size());
  for (std::size_t i = 0; i < ix.ev.size(); ++i) {
    ix.pos[ix.ev[i]->id] = i;
    (ix.ev[i]->is_read() ? ix.reads : ix.writes).push_back(i);
  }
  for (const auto& [sid, seq] : h.sessions()) {
    std::vector<std::size_t> prefix;
    for (const Event* e : seq) {
      const std::size_t i = ix.pos.at(e->id);
      ix.so_prefix[i] = prefix;
      prefix.push_back(i);
    }
  }
  return ix;
}

// Per-read visibility edge sets, one bucket per guarantee family.
struct Buckets {
  std::vector<Mask> ryw;
  std::vector<Mask> mr;
  std::vector<Mask> ec;

  explicit Buckets(std::size_t n) : ryw(n, 0), mr(n, 0), ec(n, 0) {}

  Mask vis(std::size_t i) const { return ryw[i] | mr[i] | ec[i]; }
};

// nullopt = the read observed the initial value, not any write.
using RfChoice = std::vector<std::optional<std::size_t>>;  // per reads[] slot

/**
 * Least visibility relation containing the reads-from seeds and closed
 * under the demanded guarantees. Guarantee premises only ever grow sets
 * of writes visible to reads, so iteration to fixpoint is exact.
 */
Buckets least_closure(const Indexed& ix, const RfChoice& rf) {
  const std::size_t n = ix.ev.size();
  Buckets b(n);

  for (std::size_t k = 0; k < ix.reads.size(); ++k) {
    if (!rf[k].has_value()) continue;
    const std::size_t r = ix.reads[k];
    const Mask seed = bit(*rf[k]);
    switch (ix.ev[r]->level) {
      case ConsistencyLevel::Ec:
        b.ec[r] |= seed;
        break;
      case ConsistencyLevel::Ryw:
        b.ryw[r] |= seed;
        break;
      case ConsistencyLevel::Mr:
        b.mr[r] |= seed;
        break;
      case ConsistencyLevel::Cc:
        b.ryw[r] |= seed;
        b.mr[r] |= seed;
        break;
      default:
        throw std::logic_error("read with write-only level");
    }
  }

  // Own session writes become visible to reads demanding that guarantee.
  for (std::size_t r : ix.reads) {
    if (!guarantees_ryw(ix.ev[r]->level)) continue;
    for (std::size_t p : ix.so_prefix[r]) {
      if (ix.ev[p]->is_write()) b.ryw[r] |= bit(p);
    }
  }

  // Writes visible to earlier reads of the session become visible too.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t r : ix.reads) {
      if (!guarantees_mr(ix.ev[r]->level)) continue;
      Mask add = 0;
      for (std::size_t p : ix.so_prefix[r]) {
        if (ix.ev[p]->is_read()) add |= b.vis(p);
      }
      if ((b.mr[r] | add) != b.mr[r]) {
        b.mr[r] |= add;
        changed = true;
      }
    }
  }
  return b;
}

/** Writes a read is allowed to evaluate against, per its own level. */
Mask context_mask(const Indexed& ix, const Buckets& b, std::size_t r) {
  switch (ix.ev[r]->level) {
    case ConsistencyLevel::Ec:
      return b.ec[r];
    case ConsistencyLevel::Ryw:
      return b.ryw[r];
    case ConsistencyLevel::Mr:
      return b.mr[r];
    case ConsistencyLevel::Cc:
      return b.ryw[r] | b.mr[r];
    default:
      throw std::logic_error("read with write-only level");
  }
}

struct EdgeSet {
  std::size_t n = 0;
  std::vector<Mask> succ;  // succ[i] = writes forced after write i

  explicit EdgeSet(std::size_t n_) : n(n_), succ(n_, 0) {}

  void add(std::size_t from, std::size_t to) {
    if (from != to) succ[from] |= bit(to);
  }
};

/**
 * Order obligations among writes: session order under the mw guarantee,
 * reads-before-writes under wfr, and "everything else the read saw on
 * that key precedes what it returned" from register semantics. Returns
 * nothing when some read's return value is impossible outright.
 */
std::optional<Violation> forced_write_order(const Indexed& ix,
                                            const Buckets& b,
                                            const RfChoice& rf,
                                            EdgeSet& edges) {
  for (std::size_t w : ix.writes) {
    const Event& e = *ix.ev[w];
    if (guarantees_mw(e.level)) {
      for (std::size_t p : ix.so_prefix[w]) {
        if (ix.ev[p]->is_write()) edges.add(p, w);
      }
    }
    if (guarantees_wfr(e.level)) {
      for (std::size_t p : ix.so_prefix[w]) {
        if (!ix.ev[p]->is_read()) continue;
        Mask seen = b.vis(p);
        for (std::size_t v = 0; v < ix.ev.size(); ++v) {
          if (seen & bit(v)) edges.add(v, w);
        }
      }
    }
  }

  for (std::size_t k = 0; k < ix.reads.size(); ++k) {
    const std::size_t r = ix.reads[k];
    const Event& e = *ix.ev[r];
    const Mask ctx = context_mask(ix, b, r);
    Mask same_key = 0;
    for (std::size_t w : ix.writes) {
      if ((ctx & bit(w)) && ix.ev[w]->op.key == e.op.key) same_key |= bit(w);
    }
    if (!rf[k].has_value()) {
      if (same_key != 0) {
        std::size_t w = 0;
        while (!(same_key & bit(w))) ++w;
        return Violation{"rval",
                         {ix.ev[w]->id, e.id},
                         "read returned the initial value but a write to "
                         "its key is visible"};
      }
      continue;
    }
    const std::size_t chosen = *rf[k];
    for (std::size_t w = 0; w < ix.ev.size(); ++w) {
      if ((same_key & bit(w)) && w != chosen) edges.add(w, chosen);
    }
  }
  return std::nullopt;
}

/** Kahn's algorithm preferring smaller event ids; nullopt on a cycle. */
std::optional<std::vector<std::size_t>> topo_order(const Indexed& ix,
                                                   const EdgeSet& edges) {
  std::map<std::size_t, std::size_t> indegree;
  for (std::size_t w : ix.writes) indegree[w] = 0;
  for (std::size_t w : ix.writes) {
    for (std::size_t v : ix.writes) {
      if (edges.succ[w] & bit(v)) indegree[v] += 1;
    }
  }
  std::vector<std::size_t> order;
  std::set<std::size_t> ready;
  for (auto& [w, deg] : indegree) {
    if (deg == 0) ready.insert(w);
  }
  while (!ready.empty()) {
    const std::size_t w = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(w);
    for (std::size_t v : ix.writes) {
      if (edges.succ[w] & bit(v)) {
        if (--indegree[v] == 0) ready.insert(v);
      }
    }
  }
  if (order.size() != ix.writes.size()) return std::nullopt;
  return order;
}

std::vector<EventId> cycle_events(const Indexed& ix, const EdgeSet& edges) {
  // Any write still on a cycle after peeling sources and sinks.
  std::set<std::size_t> alive(ix.writes.begin(), ix.writes.end());
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (auto it = alive.begin(); it != alive.end();) {
      Mask in = 0, out = 0;
      for (std::size_t v : alive) {
        if (v == *it) continue;
        if (edges.succ[v] & bit(*it)) in |= bit(v);
        if (edges.succ[*it] & bit(v)) out |= bit(v);
      }
      if (in == 0 || out == 0) {
        it = alive.erase(it);
        shrunk = true;
      } else {
        ++it;
      }
    }
  }
  std::vector<EventId> ids;
  for (std::size_t v : alive) ids.push_back(ix.ev[v]->id);
  return ids;
}

Witness make_witness(const Indexed& ix, const Buckets& b,
                     const std::vector<std::size_t>& write_order) {
  Witness w;
  auto emit = [&](const std::vector<Mask>& bucket,
                  std::vector<std::pair<EventId, EventId>>& out) {
    for (std::size_t r : ix.reads) {
      for (std::size_t v = 0; v < ix.ev.size(); ++v) {
        if (bucket[r] & bit(v)) out.emplace_back(ix.ev[v]->id, ix.ev[r]->id);
      }
    }
  };
  emit(b.ryw, w.vis_ryw);
  emit(b.mr, w.vis_mr);
  emit(b.ec, w.vis_ec);

  for (std::size_t v : write_order) w.ar.push_back(ix.ev[v]->id);
  std::vector<std::size_t> reads = ix.reads;
  std::sort(reads.begin(), reads.end(), [&](std::size_t a, std::size_t c) {
    if (ix.ev[a]->ret != ix.ev[c]->ret) return ix.ev[a]->ret < ix.ev[c]->ret;
    return ix.ev[a]->id < ix.ev[c]->id;
  });
  for (std::size_t r : reads) w.ar.push_back(ix.ev[r]->id);
  return w;
}

}  // namespace

Verdict check_brute_force(const History& h, BruteForceOptions opts) {
  if (opts.max_events > 64) {
    throw std::invalid_argument("search bound above 64 events unsupported");
  }
  validate_history(h);

  Verdict verdict;
  verdict.mode = "brute";

  if (h.events.size() > opts.max_events) {
    verdict.status = VerdictStatus::Undecided;
    verdict.note = "history has " + std::to_string(h.events.size()) +
                   " events, above the search bound of " +
                   std::to_string(opts.max_events);
    return verdict;
  }

  const Indexed ix = build_index(h);
  if (ix.ev.empty()) {
    verdict.witness = Witness{};
    verdict.note = "empty history";
    return verdict;
  }

  // Candidate writes each read may have observed.
  std::vector<std::vector<std::optional<std::size_t>>> candidates;
  for (std::size_t r : ix.reads) {
    const Event& e = *ix.ev[r];
    std::vector<std::optional<std::size_t>> c;
    if (e.rval.value() == 0) c.push_back(std::nullopt);
    for (std::size_t w : ix.writes) {
      if (ix.ev[w]->op.key == e.op.key &&
          ix.ev[w]->op.value == e.rval.value()) {
        c.push_back(w);
      }
    }
    if (c.empty()) {
      verdict.status = VerdictStatus::Violated;
      verdict.violation =
          Violation{"rval",
                    {e.id},
                    "no write to key '" + e.op.key + "' produces value " +
                        std::to_string(e.rval.value())};
      return verdict;
    }
    candidates.push_back(std::move(c));
  }

  std::optional<Violation> first_failure;
  RfChoice rf(ix.reads.size());
  std::vector<std::size_t> odometer(ix.reads.size(), 0);

  while (true) {
    for (std::size_t k = 0; k < ix.reads.size(); ++k) {
      rf[k] = candidates[k][odometer[k]];
    }

    const Buckets b = least_closure(ix, rf);
    EdgeSet edges(ix.ev.size());
    std::optional<Violation> bad = forced_write_order(ix, b, rf, edges);
    if (!bad) {
      if (auto order = topo_order(ix, edges)) {
        verdict.witness = make_witness(ix, b, *order);
        return verdict;
      }
      bad = Violation{"ar-cycle", cycle_events(ix, edges),
                      "forced write order is cyclic"};
    }
    if (!first_failure) first_failure = bad;

    // Advance the odometer over reads-from choices.
    std::size_t k = 0;
    for (; k < odometer.size(); ++k) {
      if (++odometer[k] < candidates[k].size()) break;
      odometer[k] = 0;
    }
    if (odometer.empty() || k == odometer.size()) break;
  }

  verdict.status = VerdictStatus::Violated;
  verdict.violation = first_failure.value_or(
      Violation{"rval", {}, "no reads-from assignment exists"});
  return verdict;
}

std::optional<std::string> validate_witness(const History& h,
                                            const Witness& w) {
  validate_history(h);
  const Indexed ix = build_index(h);
  const std::size_t n = ix.ev.size();

  if (w.ar.size() != n) return "total order misses or repeats events";
  std::map<EventId, std::size_t> pos;
  for (std::size_t i = 0; i < w.ar.size(); ++i) {
    if (!ix.pos.count(w.ar[i])) return "total order names an unknown event";
    if (!pos.emplace(w.ar[i], i).second) return "total order repeats an event";
  }

  using Edge = std::pair<EventId, EventId>;
  auto check_shape = [&](const std::vector<Edge>& edges,
                         const char* name) -> std::optional<std::string> {
    for (const auto& [from, to] : edges) {
      auto f = ix.pos.find(from);
      auto t = ix.pos.find(to);
      if (f == ix.pos.end() || t == ix.pos.end()) {
        return std::string(name) + " edge names an unknown event";
      }
      if (!ix.ev[f->second]->is_write() || !ix.ev[t->second]->is_read()) {
        return std::string(name) + " edge is not write-into-read";
      }
      if (pos.at(from) >= pos.at(to)) {
        return std::string(name) + " edge contradicts the total order";
      }
    }
    return std::nullopt;
  };
  if (auto err = check_shape(w.vis_ryw, "ryw")) return err;
  if (auto err = check_shape(w.vis_mr, "mr")) return err;
  if (auto err = check_shape(w.vis_ec, "ec")) return err;

  std::set<Edge> ryw(w.vis_ryw.begin(), w.vis_ryw.end());
  std::set<Edge> mr(w.vis_mr.begin(), w.vis_mr.end());
  std::set<Edge> ec(w.vis_ec.begin(), w.vis_ec.end());
  std::set<Edge> all;
  all.insert(ryw.begin(), ryw.end());
  all.insert(mr.begin(), mr.end());
  all.insert(ec.begin(), ec.end());

  for (std::size_t i = 0; i < n; ++i) {
    const Event& e = *ix.ev[i];

    if (e.is_read() && guarantees_ryw(e.level)) {
      for (std::size_t p : ix.so_prefix[i]) {
        if (ix.ev[p]->is_write() && !ryw.count({ix.ev[p]->id, e.id})) {
          return "own write " + std::to_string(ix.ev[p]->id) +
                 " is not visible to read " + std::to_string(e.id);
        }
      }
    }
    if (e.is_read() && guarantees_mr(e.level)) {
      for (std::size_t p : ix.so_prefix[i]) {
        if (!ix.ev[p]->is_read()) continue;
        for (const Edge& edge : all) {
          if (edge.second == ix.ev[p]->id && !mr.count({edge.first, e.id})) {
            return "write " + std::to_string(edge.first) +
                   " seen earlier is not visible to read " +
                   std::to_string(e.id);
          }
        }
      }
    }
    if (e.is_write() && guarantees_mw(e.level)) {
      for (std::size_t p : ix.so_prefix[i]) {
        if (ix.ev[p]->is_write() && pos.at(ix.ev[p]->id) >= pos.at(e.id)) {
          return "own writes " + std::to_string(ix.ev[p]->id) + " and " +
                 std::to_string(e.id) + " are ordered against the session";
        }
      }
    }
    if (e.is_write() && guarantees_wfr(e.level)) {
      for (std::size_t p : ix.so_prefix[i]) {
        if (!ix.ev[p]->is_read()) continue;
        for (const Edge& edge : all) {
          if (edge.second == ix.ev[p]->id &&
              pos.at(edge.first) >= pos.at(e.id)) {
            return "write " + std::to_string(edge.first) +
                   " seen before write " + std::to_string(e.id) +
                   " is ordered after it";
          }
        }
      }
    }
  }

  // Register semantics: each read returns the last visible write to its
  // key under the total order.
  for (std::size_t r : ix.reads) {
    const Event& e = *ix.ev[r];
    std::vector<EventId> ctx_ids;
    auto collect = [&](const std::set<Edge>& bucket) {
      for (const Edge& edge : bucket) {
        if (edge.second == e.id) ctx_ids.push_back(edge.first);
      }
    };
    switch (e.level) {
      case ConsistencyLevel::Ec:
        collect(ec);
        break;
      case ConsistencyLevel::Ryw:
        collect(ryw);
        break;
      case ConsistencyLevel::Mr:
        collect(mr);
        break;
      case ConsistencyLevel::Cc:
        collect(ryw);
        collect(mr);
        break;
      default:
        return std::string("read with write-only level");
    }
    std::sort(ctx_ids.begin(), ctx_ids.end());
    ctx_ids.erase(std::unique(ctx_ids.begin(), ctx_ids.end()), ctx_ids.end());
    std::sort(ctx_ids.begin(), ctx_ids.end(),
              [&](EventId a, EventId b) { return pos.at(a) < pos.at(b); });
    std::vector<Operation> ops;
    for (EventId id : ctx_ids) ops.push_back(ix.ev[ix.pos.at(id)]->op);
    const auto got = eval_register(ops, e.op);
    if (got != e.rval) {
      return "read " + std::to_string(e.id) +
             " does not match register semantics";
    }
  }
  return std::nullopt;
}

}  // namespace tcc
