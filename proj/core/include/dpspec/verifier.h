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

#ifndef DPSPEC_VERIFIER_H_
#define DPSPEC_VERIFIER_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpspec/extended_real.h"
#include "dpspec/mechanisms.h"
#include "dpspec/specification.h"

namespace dpspec {

// The least budget a universe admits: the supremum over ordered pairs of
// d_out(P_x, P_x') / d_in(x, x').
struct UniverseBound {
  std::string universe_id;
  ExtendedReal tightest;
};

// A violated inequality: lhs = d_out(P_x, P_x') > rhs = budget * d_in(x, x').
struct Witness {
  std::string universe_id;
  DatasetId x = 0;
  DatasetId x_prime = 0;
  ExtendedReal lhs;
  ExtendedReal rhs;
};

struct VerificationResult {
  bool satisfied = false;
  // In multiverse order.
  std::vector<UniverseBound> per_universe_tightest;
  // Present iff !satisfied; the first violation in (universe, x, x') order.
  std::optional<Witness> witness;
  // Conventions that were exercised, e.g. a zero budget meeting an infinite
  // input distance.
  std::vector<std::string> notes;

  const ExtendedReal* TightestFor(const std::string& universe_id) const;
};

// Per-universe tightest budgets, in multiverse order.
//
// Pairs at input distance zero must have output divergence exactly zero or
// the universe's bound is infinite. Pairs at infinite input distance never
// constrain a positive budget and contribute zero.
absl::StatusOr<std::vector<UniverseBound>> TightestEpsilon(
    const Mechanism& mechanism, const DpFlavor& flavor);

// Decides whether `mechanism` satisfies `spec` by checking
//
//     d_out(P_x, P_x') <= budget(U) * d_in(x, x')
//
// for every ordered pair in every universe U. Budget-times-distance uses
// 0 * inf = 0, and an infinite budget leaves its universe unconstrained.
// Comparisons that cannot be decided at 50 significant digits count as
// violations, so rounding never produces a false "satisfied".
absl::StatusOr<VerificationResult> Satisfies(const Mechanism& mechanism,
                                             const DpSpecification& spec);

// Replaces the flavor's multiverse by the partition induced by `statistic`
// and checks `mechanism` against `budget` in every resulting universe.
// Cross-universe pairs are never examined.
struct InvariantStatistic;
absl::StatusOr<VerificationResult> VerifyInvariantRelease(
    const Mechanism& mechanism, const InvariantStatistic& statistic,
    const DpFlavor& base_flavor, const ExtendedReal& budget);

}  // namespace dpspec

#endif  // DPSPEC_VERIFIER_H_
