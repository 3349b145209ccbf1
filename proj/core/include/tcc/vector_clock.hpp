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

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "tcc/types.hpp"

namespace tcc {

/**
 * Fixed-dimension vector clock with one entry per datacenter.
 * All operations on mismatched dimensions throw std::invalid_argument.
 */
class VectorClock {
 public:
  VectorClock() = default;
  explicit VectorClock(std::size_t dims) : entries_(dims, 0) {}
  VectorClock(std::initializer_list<Tick> init) : entries_(init) {}

  std::size_t dims() const { return entries_.size(); }

  Tick operator[](std::size_t i) const { return entries_.at(i); }
  Tick& operator[](std::size_t i) { return entries_.at(i); }

  const std::vector<Tick>& entries() const { return entries_; }

  bool is_zero() const;

  friend bool operator==(const VectorClock&, const VectorClock&) = default;

 private:
  std::vector<Tick> entries_;
};

/** Pointwise a <= b. */
bool leq(const VectorClock& a, const VectorClock& b);

/** Strict dominance: a <= b and a != b. */
bool lt(const VectorClock& a, const VectorClock& b);

/** Pointwise maximum (least upper bound). */
VectorClock merge(const VectorClock& a, const VectorClock& b);

/** a = merge(a, b) in place. */
void merge_into(VectorClock& a, const VectorClock& b);

}  // namespace tcc
