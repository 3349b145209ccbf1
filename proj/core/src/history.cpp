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

#include "tcc/history.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace tcc {

std::map<SessionId, std::vector<const Event*>> History::sessions() const {
  std::map<SessionId, std::vector<const Event*>> by_session;
  for (const Event& e : events) {
    by_session[e.session].push_back(&e);
  }
  for (auto& [sid, seq] : by_session) {
    std::sort(seq.begin(), seq.end(), [](const Event* a, const Event* b) {
      return a->session_seq < b->session_seq;
    });
  }
  return by_session;
}

const Event* History::find(EventId id) const {
  for (const Event& e : events) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

void validate_history(const History& h) {
  std::set<EventId> ids;
  for (const Event& e : h.events) {
    if (!ids.insert(e.id).second) {
      throw std::invalid_argument("duplicate event id " + std::to_string(e.id));
    }
    if (e.is_read() && !is_read_level(e.level)) {
      throw std::invalid_argument("read event " + std::to_string(e.id) +
                                  " carries a write-only level");
    }
    if (e.is_write() && !is_write_level(e.level)) {
      throw std::invalid_argument("write event " + std::to_string(e.id) +
                                  " carries a read-only level");
    }
    if (e.is_write() && e.rval.has_value()) {
      throw std::invalid_argument("write event " + std::to_string(e.id) +
                                  " carries a return value");
    }
    if (e.is_read() && !e.rval.has_value()) {
      throw std::invalid_argument("read event " + std::to_string(e.id) +
                                  " is missing its return value");
    }
    if (e.read_cert) {
      if (e.read_cert->version_vc.dims() != h.dims ||
          e.read_cert->gsvc.dims() != h.dims) {
        throw std::invalid_argument("read certificate dimension mismatch at " +
                                    std::to_string(e.id));
      }
    }
    if (e.write_cert && e.write_cert->dvc.dims() != h.dims) {
      throw std::invalid_argument("write certificate dimension mismatch at " +
                                  std::to_string(e.id));
    }
  }
  // Session sequences must be exactly 0..n-1 each.
  for (const auto& [sid, seq] : h.sessions()) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i]->session_seq != i) {
        throw std::invalid_argument(
            "session " + std::to_string(sid) +
            " has a gap or duplicate at sequence position " +
            std::to_string(i));
      }
    }
  }
}

History restrict_history(const History& h, ConsistencyLevel level) {
  History out;
  out.dims = h.dims;
  for (const Event& e : h.events) {
    // All writes stay; a read stays when it demands the requested level.
    const bool keep =
        e.is_write() || e.level == level ||
        (e.level == ConsistencyLevel::Cc && (level == ConsistencyLevel::Ryw ||
                                             level == ConsistencyLevel::Mr));
    if (keep) out.events.push_back(e);
  }
  // Reindex per-session sequence numbers to stay dense.
  std::map<SessionId, std::uint32_t> next;
  std::sort(out.events.begin(), out.events.end(),
            [](const Event& a, const Event& b) {
              return a.session != b.session ? a.session < b.session
                                            : a.session_seq < b.session_seq;
            });
  for (Event& e : out.events) {
    e.session_seq = next[e.session]++;
  }
  std::sort(out.events.begin(), out.events.end(),
            [](const Event& a, const Event& b) { return a.id < b.id; });
  return out;
}

std::optional<Value> eval_register(std::span<const Operation> context,
                                   const Operation& op) {
  if (op.is_write()) return std::nullopt;
  Value result = 0;
  for (const Operation& c : context) {
    if (c.is_write() && c.key == op.key) result = c.value;
  }
  return result;
}

}  // namespace tcc
