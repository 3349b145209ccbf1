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

#include "tcc/vector_clock.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcc {

namespace {

void require_same_dims(const VectorClock& a, const VectorClock& b) {
  if (a.dims() != b.dims()) {
    throw std::invalid_argument("vector clock dimension mismatch: " +
                                std::to_string(a.dims()) + " vs " +
                                std::to_string(b.dims()));
  }
}

}  // namespace

bool VectorClock::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](Tick t) { return t == 0; });
}

bool leq(const VectorClock& a, const VectorClock& b) {
  require_same_dims(a, b);
  for (std::size_t i = 0; i < a.dims(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool lt(const VectorClock& a, const VectorClock& b) {
  return leq(a, b) && !(a == b);
}

VectorClock merge(const VectorClock& a, const VectorClock& b) {
  VectorClock out = a;
  merge_into(out, b);
  return out;
}

void merge_into(VectorClock& a, const VectorClock& b) {
  require_same_dims(a, b);
  for (std::size_t i = 0; i < a.dims(); ++i) {
    a[i] = std::max(a[i], b[i]);
  }
}

}  // namespace tcc
