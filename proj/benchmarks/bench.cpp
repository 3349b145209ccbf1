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

#include <benchmark/benchmark.h>

#include "tcc/checker/brute_force.hpp"
#include "tcc/checker/certificate.hpp"
#include "tcc/config.hpp"
#include "tcc/runner.hpp"
#include "tcc/vector_clock.hpp"
#include "tcc/workload.hpp"

namespace {

void BM_VcMerge(benchmark::State& state) {
  const std::size_t dims = static_cast<std::size_t>(state.range(0));
  tcc::VectorClock a(dims);
  tcc::VectorClock b(dims);
  for (std::size_t i = 0; i < dims; ++i) {
    a[i] = static_cast<tcc::Tick>(i * 3 + 1);
    b[i] = static_cast<tcc::Tick>((dims - i) * 2);
  }
  for (auto _ : state) {
    tcc::VectorClock c = tcc::merge(a, b);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_VcMerge)->Arg(2)->Arg(8)->Arg(32);

void BM_VcLeq(benchmark::State& state) {
  const std::size_t dims = static_cast<std::size_t>(state.range(0));
  tcc::VectorClock a(dims);
  tcc::VectorClock b(dims);
  for (std::size_t i = 0; i < dims; ++i) {
    a[i] = static_cast<tcc::Tick>(i);
    b[i] = static_cast<tcc::Tick>(i + 1);
  }
  for (auto _ : state) {
    bool r = tcc::leq(a, b);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_VcLeq)->Arg(2)->Arg(8)->Arg(32);

tcc::RunConfig bench_config() {
  tcc::RunConfig cfg = tcc::parse_config(R"({
    "seed": 7, "dcs": 2, "partitionsPerDc": 3, "sessionsPerDc": 2,
    "opsPerSession": 25, "readRatio": 0.5, "keyCount": 16,
    "levelCase": "mr/wfr", "warmup": true
  })");
  return cfg;
}

void BM_SimRun(benchmark::State& state) {
  const tcc::RunConfig cfg = bench_config();
  for (auto _ : state) {
    tcc::RunArtifacts a = tcc::run_workload(cfg);
    benchmark::DoNotOptimize(a.result.history.events.size());
  }
}
BENCHMARK(BM_SimRun)->Unit(benchmark::kMillisecond);

tcc::History small_history() {
  tcc::RunConfig cfg = tcc::parse_config(R"({
    "seed": 11, "dcs": 2, "partitionsPerDc": 1, "sessionsPerDc": 1,
    "opsPerSession": 4, "readRatio": 0.5, "keyCount": 2,
    "levelCase": "ryw/mw"
  })");
  return tcc::run_workload(cfg).result.history;
}

void BM_BruteForce(benchmark::State& state) {
  const tcc::History h = small_history();
  for (auto _ : state) {
    tcc::Verdict v = tcc::check_brute_force(h);
    benchmark::DoNotOptimize(v.status);
  }
}
BENCHMARK(BM_BruteForce)->Unit(benchmark::kMicrosecond);

void BM_Certificate(benchmark::State& state) {
  const tcc::History h = tcc::run_workload(bench_config()).result.history;
  for (auto _ : state) {
    tcc::Verdict v = tcc::check_certificate(h);
    benchmark::DoNotOptimize(v.status);
  }
}
BENCHMARK(BM_Certificate)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
