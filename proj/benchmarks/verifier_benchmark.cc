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

#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "benchmark/benchmark.h"
#include "dpspec/accountant.h"
#include "dpspec/invariants.h"
#include "dpspec/mechanisms.h"
#include "dpspec/verifier.h"

namespace dpspec {
namespace {

int64_t Count(const Dataset& x) {
  int64_t count = 0;
  for (int v : x.values) count += v;
  return count;
}

// Binary records, n of them; the geometric mechanism releases their count.
struct CountingSetup {
  DpFlavor flavor;
  Mechanism mechanism;
};

CountingSetup Counting(int64_t records, DomainMode mode) {
  DatasetDomain domain = *MakeDomain({"0", "1"}, records, mode);
  DpFlavor flavor{domain, Multiverse::Full(domain),
                  mode == DomainMode::kFixedSize
                      ? InputPremetric::BoundedHamming()
                      : InputPremetric::UnboundedSymmetricDifference(),
                  OutputDivergence::Max()};
  Mechanism m = *GeometricCount(domain, Count, Rational(1, 2), 0, records);
  return {std::move(flavor), std::move(m)};
}

void BM_TightestEpsilonGeometricFixedSize(benchmark::State& state) {
  CountingSetup s = Counting(state.range(0), DomainMode::kFixedSize);
  for (auto _ : state) {
    benchmark::DoNotOptimize(TightestEpsilon(s.mechanism, s.flavor));
  }
  state.counters["datasets"] = s.flavor.domain.size();
}
BENCHMARK(BM_TightestEpsilonGeometricFixedSize)
    ->DenseRange(2, 6, 2)
    ->Unit(benchmark::kMillisecond);

void BM_TightestEpsilonGeometricUpToSize(benchmark::State& state) {
  CountingSetup s = Counting(state.range(0), DomainMode::kUpToSize);
  for (auto _ : state) {
    benchmark::DoNotOptimize(TightestEpsilon(s.mechanism, s.flavor));
  }
  state.counters["datasets"] = s.flavor.domain.size();
}
BENCHMARK(BM_TightestEpsilonGeometricUpToSize)
    ->DenseRange(4, 16, 4)
    ->Unit(benchmark::kMillisecond);

void BM_SatisfiesSmoothedMax(benchmark::State& state) {
  CountingSetup s = Counting(state.range(0), DomainMode::kUpToSize);
  s.flavor.divergence = *OutputDivergence::SmoothedMax(Rational(1, 100));
  DpSpecification spec{s.flavor,
                       UniformBudget(s.flavor.multiverse, ExtendedReal::Log(2))};
  for (auto _ : state) benchmark::DoNotOptimize(Satisfies(s.mechanism, spec));
}
BENCHMARK(BM_SatisfiesSmoothedMax)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_InvariantMargins(benchmark::State& state) {
  CountingSetup s = Counting(state.range(0), DomainMode::kFixedSize);
  InvariantStatistic first = InvariantStatistic::FromFunction(
      "first", s.flavor.domain,
      [](const Dataset& x) { return absl::StrCat(x.values[0]); });
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeInvariantMargins(s.mechanism, first, s.flavor));
  }
}
BENCHMARK(BM_InvariantMargins)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_ComposeLedger(benchmark::State& state) {
  CountingSetup s = Counting(1, DomainMode::kFixedSize);
  const std::string fp = FlavorFingerprint(s.flavor);
  for (auto _ : state) {
    BudgetLedger ledger = BudgetLedger::ForFlavor(s.flavor);
    for (int64_t i = 0; i < state.range(0); ++i) {
      ledger = *Compose(ledger, "q", fp,
                        {{"full", ExtendedReal::Log(Rational(i + 2, i + 1))}});
    }
    benchmark::DoNotOptimize(ledger.total());
  }
}
BENCHMARK(BM_ComposeLedger)->RangeMultiplier(4)->Range(4, 64);

}  // namespace
}  // namespace dpspec
