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

#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "tcc/rng.hpp"
#include "tcc/vector_clock.hpp"

using tcc::VectorClock;

TEST_CASE("leq is pointwise") {
  CHECK(tcc::leq({1, 2}, {1, 2}));
  CHECK(tcc::leq({1, 2}, {2, 2}));
  CHECK(tcc::leq({0, 0}, {5, 7}));
  CHECK_FALSE(tcc::leq({1, 2}, {2, 1}));  // incomparable
  CHECK_FALSE(tcc::leq({3, 0}, {2, 9}));
}

TEST_CASE("lt demands dominance and difference") {
  CHECK(tcc::lt({1, 2}, {1, 3}));
  CHECK(tcc::lt({0, 0}, {0, 1}));
  CHECK_FALSE(tcc::lt({1, 2}, {1, 2}));  // equality is not strict
  CHECK_FALSE(tcc::lt({1, 2}, {2, 1}));
}

TEST_CASE("merge is the pointwise maximum") {
  CHECK(tcc::merge({1, 4}, {3, 2}) == VectorClock{3, 4});
  CHECK(tcc::merge({0, 0}, {2, 5}) == VectorClock{2, 5});
  VectorClock a{7, 1};
  tcc::merge_into(a, {2, 9});
  CHECK(a == VectorClock{7, 9});
}

TEST_CASE("zero detection and construction") {
  CHECK(VectorClock(3).is_zero());
  CHECK(VectorClock{0, 0}.is_zero());
  CHECK_FALSE(VectorClock{0, 1}.is_zero());
  CHECK(VectorClock(4).dims() == 4);
}

TEST_CASE("mixed dimensions are rejected") {
  CHECK_THROWS_AS((void)tcc::leq({1}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS((void)tcc::lt({1, 2, 3}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS((void)tcc::merge({1}, {1, 2}), std::invalid_argument);
}

namespace {

VectorClock random_vc(tcc::Rng& rng, std::size_t dims) {
  VectorClock v(dims);
  for (std::size_t i = 0; i < dims; ++i) v[i] = rng.uniform(0, 6);
  return v;
}

}  // namespace

TEST_CASE("order and lattice laws on sampled clocks") {
  tcc::Rng rng(0xbeef);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dims = 1 + rng.uniform(0, 3);
    const VectorClock a = random_vc(rng, dims);
    const VectorClock b = random_vc(rng, dims);
    const VectorClock c = random_vc(rng, dims);

    CHECK(tcc::leq(a, a));
    if (tcc::leq(a, b) && tcc::leq(b, a)) CHECK(a == b);
    if (tcc::leq(a, b) && tcc::leq(b, c)) CHECK(tcc::leq(a, c));
    CHECK(tcc::lt(a, b) == (tcc::leq(a, b) && a != b));

    const VectorClock m = tcc::merge(a, b);
    CHECK(tcc::leq(a, m));
    CHECK(tcc::leq(b, m));
    if (tcc::leq(a, c) && tcc::leq(b, c)) CHECK(tcc::leq(m, c));  // least
    CHECK(tcc::merge(a, a) == a);
    CHECK(tcc::merge(a, b) == tcc::merge(b, a));
    CHECK(tcc::merge(tcc::merge(a, b), c) == tcc::merge(a, tcc::merge(b, c)));
  }
}
