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
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcc {

using DcId = std::uint32_t;
using PartitionIndex = std::uint32_t;
using SessionId = std::uint32_t;
using EventId = std::uint64_t;
using Tick = std::uint64_t;
using Value = std::int64_t;

/**
 * Per-operation consistency level. Ec, Ryw, Mr, Cc are read levels;
 * Ec, Mw, Wfr, Cc are write levels. Cc asks for both guarantees of its kind.
 */
enum class ConsistencyLevel : std::uint8_t { Ec, Ryw, Mr, Mw, Wfr, Cc };

constexpr bool is_read_level(ConsistencyLevel l) {
  return l == ConsistencyLevel::Ec || l == ConsistencyLevel::Ryw ||
         l == ConsistencyLevel::Mr || l == ConsistencyLevel::Cc;
}

constexpr bool is_write_level(ConsistencyLevel l) {
  return l == ConsistencyLevel::Ec || l == ConsistencyLevel::Mw ||
         l == ConsistencyLevel::Wfr || l == ConsistencyLevel::Cc;
}

// Which session guarantees an operation at level l demands.
constexpr bool guarantees_ryw(ConsistencyLevel l) {
  return l == ConsistencyLevel::Ryw || l == ConsistencyLevel::Cc;
}
constexpr bool guarantees_mr(ConsistencyLevel l) {
  return l == ConsistencyLevel::Mr || l == ConsistencyLevel::Cc;
}
constexpr bool guarantees_mw(ConsistencyLevel l) {
  return l == ConsistencyLevel::Mw || l == ConsistencyLevel::Cc;
}
constexpr bool guarantees_wfr(ConsistencyLevel l) {
  return l == ConsistencyLevel::Wfr || l == ConsistencyLevel::Cc;
}

std::string_view to_string(ConsistencyLevel l);
ConsistencyLevel parse_level(std::string_view s);

enum class OpKind : std::uint8_t { Read, Write };

/** A single key-value operation; value is meaningful for writes only. */
struct Operation {
  OpKind kind = OpKind::Read;
  std::string key;
  Value value = 0;

  bool is_read() const { return kind == OpKind::Read; }
  bool is_write() const { return kind == OpKind::Write; }
};

}  // namespace tcc
