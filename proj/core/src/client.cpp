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

#include "tcc/client.hpp"

#include <stdexcept>

#include "tcc/digest.hpp"

namespace tcc {

std::pair<VectorClock, VectorClock> select_read_vectors(
    ConsistencyLevel level, const SessionState& s) {
  const VectorClock zero(s.hrvc.dims());
  switch (level) {
    case ConsistencyLevel::Ec:
      return {zero, zero};
    case ConsistencyLevel::Mr:
      return {s.hrvc, zero};
    case ConsistencyLevel::Ryw:
      return {zero, s.hwvc};
    case ConsistencyLevel::Cc:
      return {s.hrvc, s.hwvc};
    case ConsistencyLevel::Mw:
    case ConsistencyLevel::Wfr:
      break;
  }
  throw std::invalid_argument("not a read level: " +
                              std::string(to_string(level)));
}

VectorClock select_write_vector(ConsistencyLevel level,
                                const SessionState& s) {
  switch (level) {
    case ConsistencyLevel::Ec:
      return VectorClock(s.cvc_w.dims());
    case ConsistencyLevel::Mw:
      return s.cvc_w;
    case ConsistencyLevel::Wfr:
      return s.cvc_r;
    case ConsistencyLevel::Cc:
      return merge(s.cvc_w, s.cvc_r);
    case ConsistencyLevel::Ryw:
    case ConsistencyLevel::Mr:
      break;
  }
  throw std::invalid_argument("not a write level: " +
                              std::string(to_string(level)));
}

void apply_read_reply(SessionState& s, const VectorClock& vc,
                      const VectorClock& gsvc) {
  merge_into(s.hrvc, gsvc);
  merge_into(s.cvc_r, vc);
}

void apply_write_reply(SessionState& s, const VectorClock& vc) {
  merge_into(s.cvc_w, vc);
  merge_into(s.hwvc, vc);
}

PartitionIndex partition_of(std::string_view key,
                            std::uint32_t partitions_per_dc) {
  if (partitions_per_dc == 0) {
    throw std::invalid_argument("partition count must be positive");
  }
  return static_cast<PartitionIndex>(fnv1a64(key) % partitions_per_dc);
}

}  // namespace tcc
