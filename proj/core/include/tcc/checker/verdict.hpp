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
#include <string>
#include <utility>
#include <vector>

#include "tcc/types.hpp"

namespace tcc {

/** Visibility edges per guarantee plus one total order over all events. */
struct Witness {
  std::vector<std::pair<EventId, EventId>> vis_ryw;
  std::vector<std::pair<EventId, EventId>> vis_mr;
  std::vector<std::pair<EventId, EventId>> vis_ec;
  std::vector<EventId> ar;
};

struct Violation {
  std::string predicate;        // "ryw", "mr", "mw", "wfr", "rval", ...
  std::vector<EventId> events;  // offending events, cause first
  std::string detail;
};

enum class VerdictStatus { Satisfied, Violated, Undecided };

struct Verdict {
  VerdictStatus status = VerdictStatus::Satisfied;
  std::string mode;  // "brute" or "certificate"
  std::optional<Witness> witness;
  std::optional<Violation> violation;
  std::string note;

  bool satisfied() const { return status == VerdictStatus::Satisfied; }
};

}  // namespace tcc
