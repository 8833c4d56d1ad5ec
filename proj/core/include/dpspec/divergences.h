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

#ifndef DPSPEC_DIVERGENCES_H_
#define DPSPEC_DIVERGENCES_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpspec/extended_real.h"
#include "dpspec/rational.h"

namespace dpspec {

// A probability distribution over output ids 0..size()-1 with exact rational
// masses that sum to exactly one.
class Distribution {
 public:
  static absl::StatusOr<Distribution> Create(std::vector<Rational> probs);

  // Point mass on `outcome` among `size` outcomes.
  static Distribution PointMass(size_t size, size_t outcome);

  size_t size() const { return probs_.size(); }
  const Rational& operator[](size_t t) const { return probs_[t]; }
  const std::vector<Rational>& probs() const { return probs_; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  explicit Distribution(std::vector<Rational> probs)
      : probs_(std::move(probs)) {}

  std::vector<Rational> probs_;
};

enum class DivergenceKind {
  kMax,
  kSmoothedMax,
  kRenyi,
  kTotalVariation,
};

// The output "distance" between the distributions a mechanism produces on
// two datasets. The smoothing level delta and the Rényi order alpha are
// properties of the divergence itself, not of the budget.
class OutputDivergence {
 public:
  static OutputDivergence Max() { return OutputDivergence(DivergenceKind::kMax); }
  static OutputDivergence TotalVariation() {
    return OutputDivergence(DivergenceKind::kTotalVariation);
  }
  // 0 <= delta < 1.
  static absl::StatusOr<OutputDivergence> SmoothedMax(Rational delta);
  // alpha > 1.
  static absl::StatusOr<OutputDivergence> Renyi(Rational alpha);

  DivergenceKind kind() const { return kind_; }
  const std::optional<Rational>& delta() const { return delta_; }
  const std::optional<Rational>& alpha() const { return alpha_; }

  // "max", "smoothed-max(delta=1/2)", "renyi(alpha=2)", "tv".
  std::string Describe() const;

  friend bool operator==(const OutputDivergence&,
                         const OutputDivergence&) = default;

 private:
  explicit OutputDivergence(DivergenceKind kind) : kind_(kind) {}

  DivergenceKind kind_;
  std::optional<Rational> delta_;
  std::optional<Rational> alpha_;
};

// Short name used in spec files: "max", "smoothed-max", "renyi", "tv".
std::string DivergenceKindName(DivergenceKind kind);

// D_inf(P||Q) = max over t with P(t) > 0 of ln(P(t)/Q(t)). The maximum ratio
// is found exactly and the logarithm is kept in closed form. Infinite when
// P puts mass where Q does not.
absl::StatusOr<ExtendedReal> MaxDivergence(const Distribution& p,
                                           const Distribution& q);

// sum_t max(P(t) - s Q(t), 0) for a rational s = e^eps >= 1.
absl::StatusOr<Rational> HockeyStickAtRatio(const Distribution& p,
                                            const Distribution& q,
                                            const Rational& exp_eps);

// H_{e^eps}(P||Q). Exact whenever e^eps is rational (eps = 0 or an integer
// multiple of the log of a rational), otherwise a 50-digit approximation.
absl::StatusOr<ExtendedReal> HockeyStick(const Distribution& p,
                                         const Distribution& q,
                                         const ExtendedReal& eps);

// Least eps >= 0 with H_{e^eps}(P||Q) <= delta, infinite if none exists.
// Found by scanning the sorted likelihood ratios and solving the linear
// piece that crosses delta, so the result is always ln of a rational.
absl::StatusOr<ExtendedReal> SmoothedMaxDivergence(const Distribution& p,
                                                   const Distribution& q,
                                                   const Rational& delta);

// D_alpha(P||Q) = ln(sum_t P(t)^alpha Q(t)^(1 - alpha)) / (alpha - 1).
// Small integer orders are computed exactly; others in log-space at 50
// significant digits.
absl::StatusOr<ExtendedReal> RenyiDivergence(const Distribution& p,
                                             const Distribution& q,
                                             const Rational& alpha);

// (1/2) sum_t |P(t) - Q(t)|.
absl::StatusOr<Rational> TotalVariation(const Distribution& p,
                                        const Distribution& q);

absl::StatusOr<ExtendedReal> Evaluate(const OutputDivergence& divergence,
                                      const Distribution& p,
                                      const Distribution& q);

}  // namespace dpspec

#endif  // DPSPEC_DIVERGENCES_H_
