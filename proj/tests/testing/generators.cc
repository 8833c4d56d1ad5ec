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

#include "testing/generators.h"

#include <algorithm>

#include "absl/strings/str_cat.h"

namespace dpspec {
namespace testing {

int64_t Generator::Uniform(int64_t lo, int64_t hi) {
  return std::uniform_int_distribution<int64_t>(lo, hi)(engine_);
}

double Generator::UniformReal(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

bool Generator::Bernoulli(double p) {
  return std::bernoulli_distribution(p)(engine_);
}

std::vector<Rational> Generator::Simplex(size_t n, int64_t max_denominator) {
  const int64_t d = Uniform(1, max_denominator);
  std::vector<int64_t> cuts = {0, d};
  for (size_t i = 0; i + 1 < n; ++i) cuts.push_back(Uniform(0, d));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> probs;
  for (size_t i = 0; i < n; ++i) {
    probs.push_back(Rational(cuts[i + 1] - cuts[i], d));
  }
  std::shuffle(probs.begin(), probs.end(), engine_);
  return probs;
}

Distribution Generator::RandomDistribution(size_t n, int64_t max_denominator) {
  return *Distribution::Create(Simplex(n, max_denominator));
}

Mechanism Generator::RandomMechanism(int64_t num_datasets, size_t num_outputs,
                                     int64_t max_denominator) {
  std::vector<std::string> outputs;
  for (size_t t = 0; t < num_outputs; ++t) outputs.push_back(absl::StrCat("o", t));
  std::vector<Distribution> rows;
  for (int64_t x = 0; x < num_datasets; ++x) {
    rows.push_back(RandomDistribution(num_outputs, max_denominator));
  }
  return *Mechanism::Create(std::move(outputs), std::move(rows));
}

Rational Generator::RandomRational(int64_t lo, int64_t hi,
                                   int64_t max_denominator) {
  const int64_t d = Uniform(1, max_denominator);
  return Rational(Uniform(lo * d, hi * d), d);
}

SafesRegime Generator::RandomRegime() {
  std::array<SafetyAssessment, 5> dimensions;
  for (SafetyAssessment& a : dimensions) {
    // Quarter steps hit every band edge.
    a.level = Bernoulli(0.5) ? Uniform(0, 4) / 4.0 : UniformReal(0, 1);
    a.label = LabelForLevel(a.level);
    a.rationale = absl::StrCat("rationale ", Uniform(0, 999));
  }
  std::vector<std::string> mandates;
  for (int64_t k = Uniform(0, 2); k > 0; --k) {
    mandates.push_back(absl::StrCat("mandate ", Uniform(0, 99)));
  }
  return *SafesRegime::Create(
      absl::StrCat("regime-", Uniform(0, 9999)),
      Bernoulli(0.5) ? Flow::kDataToResearcher : Flow::kOutputsToPublic,
      dimensions, std::move(mandates));
}

DatasetDomain LineDomain(int64_t n) {
  std::vector<std::string> alphabet;
  for (int64_t i = 0; i < n; ++i) alphabet.push_back(absl::StrCat(i));
  return *MakeDomain(std::move(alphabet), 1, DomainMode::kFixedSize);
}

}  // namespace testing
}  // namespace dpspec
