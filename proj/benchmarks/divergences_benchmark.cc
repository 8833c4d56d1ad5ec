//
// Copyright 2026 The dpspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <cstdint>
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "dpspec/divergences.h"

namespace dpspec {
namespace {

// A distribution over k outcomes with probabilities in multiples of 1/(k*8).
Distribution RandomDistribution(std::mt19937_64& rng, int64_t k) {
  const int64_t den = k * 8;
  std::vector<int64_t> counts(k, 1);
  std::uniform_int_distribution<int64_t> pick(0, k - 1);
  for (int64_t i = k; i < den; ++i) ++counts[pick(rng)];
  std::vector<Rational> probs;
  for (int64_t c : counts) probs.push_back(Rational(c, den));
  return *Distribution::Create(std::move(probs));
}

void BM_MaxDivergence(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Distribution p = RandomDistribution(rng, state.range(0));
  const Distribution q = RandomDistribution(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(MaxDivergence(p, q));
}
BENCHMARK(BM_MaxDivergence)->RangeMultiplier(4)->Range(2, 128);

void BM_SmoothedMaxDivergence(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Distribution p = RandomDistribution(rng, state.range(0));
  const Distribution q = RandomDistribution(rng, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SmoothedMaxDivergence(p, q, Rational(1, 20)));
  }
}
BENCHMARK(BM_SmoothedMaxDivergence)->RangeMultiplier(4)->Range(2, 128);

void BM_RenyiIntegerOrder(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Distribution p = RandomDistribution(rng, 8);
  const Distribution q = RandomDistribution(rng, 8);
  const Rational alpha(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RenyiDivergence(p, q, alpha));
}
BENCHMARK(BM_RenyiIntegerOrder)->Arg(2)->Arg(8)->Arg(32)->Arg(64);

void BM_RenyiFractionalOrder(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const Distribution p = RandomDistribution(rng, 8);
  const Distribution q = RandomDistribution(rng, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(RenyiDivergence(p, q, Rational(5, 2)));
  }
}
BENCHMARK(BM_RenyiFractionalOrder);

void BM_TotalVariation(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const Distribution p = RandomDistribution(rng, state.range(0));
  const Distribution q = RandomDistribution(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(TotalVariation(p, q));
}
BENCHMARK(BM_TotalVariation)->RangeMultiplier(4)->Range(2, 128);

}  // namespace
}  // namespace dpspec
