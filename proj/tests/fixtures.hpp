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

#pragma once

#include <optional>

#include "tcc/history.hpp"

namespace tcc::testing {

inline Event ev(EventId id, SessionId session, std::uint32_t seq, OpKind kind,
                const char* key, Value value, ConsistencyLevel level,
                std::optional<Value> rval) {
  Event e;
  e.id = id;
  e.session = session;
  e.session_seq = seq;
  e.op = Operation{kind, key, value};
  e.level = level;
  e.rval = rval;
  return e;
}

inline Event wr(EventId id, SessionId session, std::uint32_t seq,
                const char* key, Value value, ConsistencyLevel level) {
  return ev(id, session, seq, OpKind::Write, key, value, level, std::nullopt);
}

inline Event rd(EventId id, SessionId session, std::uint32_t seq,
                const char* key, Value rval, ConsistencyLevel level) {
  return ev(id, session, seq, OpKind::Read, key, 0, level, rval);
}

/**
 * Two sessions interleaving writes and reads of x and y; every read and
 * the final write have their contexts pinned down by the guarantees they
 * demand, which makes it a good end-to-end checker fixture:
 *
 *   session 0: wr x=1 (mw); wr y=2 (mw); rd y -> 1 (ryw)
 *   session 1: wr y=1 (mw); rd y -> 1 (ryw); rd x -> 1 (mr); wr y=3 (wfr)
 *
 * Session 0's read of y returns session 1's y=1, so y=2 must sit before
 * y=1 in arbitration; the mw/wfr constraints chain the rest.
 */
inline History figure_history() {
  History h;
  h.dims = 2;
  h.events = {
      wr(0, 0, 0, "x", 1, ConsistencyLevel::Mw),
      wr(1, 0, 1, "y", 2, ConsistencyLevel::Mw),
      rd(2, 0, 2, "y", 1, ConsistencyLevel::Ryw),
      wr(3, 1, 0, "y", 1, ConsistencyLevel::Mw),
      rd(4, 1, 1, "y", 1, ConsistencyLevel::Ryw),
      rd(5, 1, 2, "x", 1, ConsistencyLevel::Mr),
      wr(6, 1, 3, "y", 3, ConsistencyLevel::Wfr),
  };
  return h;
}

}  // namespace tcc::testing
