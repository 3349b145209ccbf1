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

#include "tcc/checker/verdict.hpp"
#include "tcc/history.hpp"

namespace tcc {

struct BruteForceOptions {
  // Histories larger than this come back Undecided; the search is
  // exponential in the number of unattributable reads.
  std::size_t max_events = 8;
};

/**
 * Decides whether some visibility/arbitration assignment satisfies every
 * demanded guarantee together with register semantics. Works on the least
 * visibility closure per reads-from choice: a history is accepted exactly
 * when one choice leaves the forced write order acyclic. On success the
 * witness carries the closure edges and one admissible total order.
 */
Verdict check_brute_force(const History& h, BruteForceOptions opts = {});

/**
 * Re-verifies a witness against the history from scratch: every demanded
 * guarantee, register semantics along the total order, and edge shape.
 * Returns an error description, or nothing when the witness is valid.
 */
std::optional<std::string> validate_witness(const History& h,
                                            const Witness& w);

}  // namespace tcc
