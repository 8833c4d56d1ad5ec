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

#include "dpspec/divergences.h"

#include <algorithm>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpspec {
namespace {

constexpr int64_t kMaxExactRenyiOrder = 64;

absl::Status CheckSameSpace(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("output-space mismatch: distributions over ", p.size(),
                     " and ", q.size(), " outcomes"));
  }
  return absl::OkStatus();
}

// Mass P places on outcomes that Q never produces.
Rational UnmatchedMass(const Distribution& p, const Distribution& q) {
  Rational mass = 0;
  for (size_t t = 0; t < p.size(); ++t) {
    if (p[t] > 0 && q[t] == 0) mass += p[t];
  }
  return mass;
}

}  // namespace

absl::StatusOr<Distribution> Distribution::Create(std::vector<Rational> probs) {
  if (probs.empty()) {
    return absl::InvalidArgumentError("distribution has no outcomes");
  }
  Rational total = 0;
  for (size_t t = 0; t < probs.size(); ++t) {
    if (probs[t] < 0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "negative probability ", FormatRational(probs[t]), " at outcome ",
          t));
    }
    total += probs[t];
  }
  if (total != 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "probabilities sum to ", FormatRational(total), ", not 1"));
  }
  return Distribution(std::move(probs));
}

Distribution Distribution::PointMass(size_t size, size_t outcome) {
  std::vector<Rational> probs(size, Rational(0));
  probs[outcome] = 1;
  return Distribution(std::move(probs));
}

absl::StatusOr<OutputDivergence> OutputDivergence::SmoothedMax(
    Rational delta) {
  if (delta < 0 || delta >= 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "smoothed-max delta must lie in [0, 1), got ", FormatRational(delta)));
  }
  OutputDivergence d(DivergenceKind::kSmoothedMax);
  d.delta_ = std::move(delta);
  return d;
}

absl::StatusOr<OutputDivergence> OutputDivergence::Renyi(Rational alpha) {
  if (alpha <= 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "renyi alpha must exceed 1, got ", FormatRational(alpha)));
  }
  OutputDivergence d(DivergenceKind::kRenyi);
  d.alpha_ = std::move(alpha);
  return d;
}

std::string OutputDivergence::Describe() const {
  switch (kind_) {
    case DivergenceKind::kMax:
      return "max";
    case DivergenceKind::kSmoothedMax:
      return absl::StrCat("smoothed-max(delta=", FormatRational(*delta_), ")");
    case DivergenceKind::kRenyi:
      return absl::StrCat("renyi(alpha=", FormatRational(*alpha_), ")");
    case DivergenceKind::kTotalVariation:
      return "tv";
  }
  return "unknown";
}

std::string DivergenceKindName(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::kMax:
      return "max";
    case DivergenceKind::kSmoothedMax:
      return "smoothed-max";
    case DivergenceKind::kRenyi:
      return "renyi";
    case DivergenceKind::kTotalVariation:
      return "tv";
  }
  return "unknown";
}

absl::StatusOr<ExtendedReal> MaxDivergence(const Distribution& p,
                                           const Distribution& q) {
  if (auto s = CheckSameSpace(p, q); !s.ok()) return s;
  Rational max_ratio = 0;
  for (size_t t = 0; t < p.size(); ++t) {
    if (p[t] == 0) continue;
    if (q[t] == 0) return ExtendedReal::Infinity();
    max_ratio = std::max(max_ratio, Rational(p[t] / q[t]));
  }
  // Both sum to one, so some ratio is >= 1 and the result is >= 0.
  return ExtendedReal::Log(max_ratio);
}

absl::StatusOr<Rational> HockeyStickAtRatio(const Distribution& p,
                                            const Distribution& q,
                                            const Rational& exp_eps) {
  if (auto s = CheckSameSpace(p, q); !s.ok()) return s;
  if (exp_eps < 1) {
    return absl::InvalidArgumentError("hockey-stick requires eps >= 0");
  }
  Rational total = 0;
  for (size_t t = 0; t < p.size(); ++t) {
    Rational excess = p[t] - exp_eps * q[t];
    if (excess > 0) total += excess;
  }
  return total;
}

absl::StatusOr<ExtendedReal> HockeyStick(const Distribution& p,
                                         const Distribution& q,
                                         const ExtendedReal& eps) {
  if (auto s = CheckSameSpace(p, q); !s.ok()) return s;
  if (eps.is_negative()) {
    return absl::InvalidArgumentError("hockey-stick requires eps >= 0");
  }
  if (eps.is_infinite()) {
    return ExtendedReal::FromRational(UnmatchedMass(p, q));
  }
  if (eps.is_exact() && eps.constant() == 0 &&
      IsInteger(eps.log_coefficient()) &&
      abs(eps.log_coefficient()) <= kMaxExactRenyiOrder) {
    Rational exp_eps =
        Power(eps.log_argument(),
              Numerator(eps.log_coefficient()).convert_to<int64_t>());
    auto exact = HockeyStickAtRatio(p, q, exp_eps);
    if (!exact.ok()) return exact.status();
    return ExtendedReal::FromRational(*std::move(exact));
  }
  HighPrecision scale = exp(eps.Evaluate());
  HighPrecision total = 0;
  for (size_t t = 0; t < p.size(); ++t) {
    HighPrecision excess = ToHighPrecision(p[t]) - scale * ToHighPrecision(q[t]);
    if (excess > 0) total += excess;
  }
  return ExtendedReal::Approximate(total);
}

absl::StatusOr<ExtendedReal> SmoothedMaxDivergence(const Distribution& p,
                                                   const Distribution& q,
                                                   const Rational& delta) {
  if (auto s = CheckSameSpace(p, q); !s.ok()) return s;
  if (delta < 0 || delta >= 1) {
    return absl::InvalidArgumentError("smoothed-max delta must lie in [0, 1)");
  }
  const Rational unmatched = UnmatchedMass(p, q);
  if (unmatched > delta) return ExtendedReal::Infinity();

  // H(s) = sum_t max(P(t) - s Q(t), 0) is continuous, piecewise linear and
  // nonincreasing in s, with breakpoints at the likelihood ratios.
  std::vector<Rational> breakpoints;
  for (size_t t = 0; t < p.size(); ++t) {
    if (p[t] > 0 && q[t] > 0 && p[t] > q[t]) breakpoints.push_back(p[t] / q[t]);
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());

  auto h = [&](const Rational& s) { return *HockeyStickAtRatio(p, q, s); };
  if (h(Rational(1)) <= delta) return ExtendedReal();

  Rational lower = 1;
  for (const Rational& upper : breakpoints) {
    if (h(upper) <= delta) {
      // On (lower, upper] only outcomes with ratio >= upper are active, and
      // H(s) = A - s B there.
      Rational a = unmatched;
      Rational b = 0;
      for (size_t t = 0; t < p.size(); ++t) {
        if (q[t] > 0 && p[t] >= upper * q[t]) {
          a += p[t];
          b += q[t];
        }
      }
      Rational s = (a - delta) / b;
      return ExtendedReal::Log(std::clamp(s, lower, upper));
    }
    lower = upper;
  }
  // Unreachable: H at the largest breakpoint equals the unmatched mass.
  return absl::InternalError("smoothed-max search did not terminate");
}

absl::StatusOr<ExtendedReal> RenyiDivergence(const Distribution& p,
                                             const Distribution& q,
                                             const Rational& alpha) {
  if (auto s = CheckSameSpace(p, q); !s.ok()) return s;
  if (alpha <= 1) {
    return absl::InvalidArgumentError("renyi alpha must exceed 1");
  }
  if (UnmatchedMass(p, q) > 0) return ExtendedReal::Infinity();
  if (p == q) return ExtendedReal();

  const Rational order_minus_one = alpha - 1;
  if (IsInteger(alpha) && alpha <= kMaxExactRenyiOrder) {
    const int64_t k = Numerator(alpha).convert_to<int64_t>();
    Rational sum = 0;
    for (size_t t = 0; t < p.size(); ++t) {
      if (p[t] == 0) continue;
      sum += Power(p[t], k) / Power(q[t], k - 1);
    }
    return ExtendedReal::ScaledLog(Rational(1) / order_minus_one, sum);
  }

  // Log-sum-exp of alpha ln P + (1 - alpha) ln Q.
  const HighPrecision a = ToHighPrecision(alpha);
  std::vector<HighPrecision> terms;
  for (size_t t = 0; t < p.size(); ++t) {
    if (p[t] == 0) continue;
    terms.push_back(a * log(ToHighPrecision(p[t])) +
                    (1 - a) * log(ToHighPrecision(q[t])));
  }
  HighPrecision peak = *std::max_element(terms.begin(), terms.end());
  HighPrecision sum = 0;
  for (const HighPrecision& term : terms) sum += exp(term - peak);
  return ExtendedReal::Approximate((peak + log(sum)) /
                                   ToHighPrecision(order_minus_one));
}

absl::StatusOr<Rational> TotalVariation(const Distribution& p,
                                        const Distribution& q) {
  if (auto s = CheckSameSpace(p, q); !s.ok()) return s;
  Rational total = 0;
  for (size_t t = 0; t < p.size(); ++t) total += abs(Rational(p[t] - q[t]));
  return total / 2;
}

absl::StatusOr<ExtendedReal> Evaluate(const OutputDivergence& divergence,
                                      const Distribution& p,
                                      const Distribution& q) {
  switch (divergence.kind()) {
    case DivergenceKind::kMax:
      return MaxDivergence(p, q);
    case DivergenceKind::kSmoothedMax:
      return SmoothedMaxDivergence(p, q, *divergence.delta());
    case DivergenceKind::kRenyi:
      return RenyiDivergence(p, q, *divergence.alpha());
    case DivergenceKind::kTotalVariation: {
      auto tv = TotalVariation(p, q);
      if (!tv.ok()) return tv.status();
      return ExtendedReal::FromRational(*std::move(tv));
    }
  }
  return absl::InternalError("unknown divergence kind");
}

}  // namespace dpspec
