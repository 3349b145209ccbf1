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

#include <cstdint>
#include <string>
#include <vector>

#include "tcc/types.hpp"

namespace tcc {

/** Leading meta record of a history file; makes it self-contained. */
struct HistoryMeta {
  std::size_t dims = 0;
  std::uint32_t partitions_per_dc = 0;
  std::vector<DcId> session_home;  // indexed by session id
  std::uint64_t seed = 0;
  std::string level_case;
};

/** Leading meta record of a trace file; enough to replay it. */
struct TraceMeta {
  std::size_t dims = 0;
  std::uint32_t partitions_per_dc = 0;
  std::vector<std::int64_t> skews;  // indexed dc * partitions_per_dc + m
  bool disable_get_wait = false;
  bool disable_put_wait = false;
  Tick stall_bound = 1'000'000;
};

}  // namespace tcc
