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

#ifndef DPSPEC_TESTS_TESTING_GENERATORS_H_
#define DPSPEC_TESTS_TESTING_GENERATORS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dpspec/divergences.h"
#include "dpspec/domain.h"
#include "dpspec/five_safes.h"
#include "dpspec/mechanisms.h"
#include "dpspec/rational.h"

namespace dpspec {
namespace testing {

// Seeded source of random test instances. Every property test fixes its
// seed so failures replay.
class Generator {
 public:
  explicit Generator(uint64_t seed) : engine_(seed) {}

  // Inclusive on both ends.
  int64_t Uniform(int64_t lo, int64_t hi);
  double UniformReal(double lo, double hi);
  bool Bernoulli(double p);

  // n probabilities k_i / d with d drawn from [1, max_denominator].
  std::vector<Rational> Simplex(size_t n, int64_t max_denominator);
  Distribution RandomDistribution(size_t n, int64_t max_denominator);
  // Outputs are labelled "o0", "o1", ...
  Mechanism RandomMechanism(int64_t num_datasets, size_t num_outputs,
                            int64_t max_denominator);
  // A rational in [lo, hi] with denominator at most max_denominator.
  Rational RandomRational(int64_t lo, int64_t hi, int64_t max_denominator);

  // Random levels with matching labels, random flow and zero to two
  // mandates.
  SafesRegime RandomRegime();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// A single-record domain over `n` values, so dataset ids are 0..n-1.
DatasetDomain LineDomain(int64_t n);

}  // namespace testing
}  // namespace dpspec

#endif  // DPSPEC_TESTS_TESTING_GENERATORS_H_
