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

/**
 * Polynomial-time check over the vector clocks the servers attached to
 * each operation. Per session, in session order:
 *
 *   reads   - the version clock is covered by the stability snapshot;
 *   ryw/cc  - every earlier write's clock is covered by the snapshot;
 *   mr/cc   - every earlier read's version clock is covered by it;
 *   mw/cc   - this write's clock strictly dominates each earlier write's;
 *   wfr/cc  - it strictly dominates each earlier read's version clock.
 *
 * Throws std::invalid_argument when an event lacks its certificate.
 */
Verdict check_certificate(const History& h);

}  // namespace tcc
