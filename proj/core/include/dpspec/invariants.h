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

#ifndef DPSPEC_INVARIANTS_H_
#define DPSPEC_INVARIANTS_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpspec/domain.h"
#include "dpspec/extended_real.h"
#include "dpspec/mechanisms.h"
#include "dpspec/specification.h"

namespace dpspec {

// An exact statistic released without protection. `values[x]` is the
// statistic's value on dataset x.
struct InvariantStatistic {
  std::string label;
  std::vector<std::string> values;

  static InvariantStatistic FromFunction(std::string label,
                                         const DatasetDomain& domain,
                                         const Statistic& statistic);
};

// The level sets of `statistic` as a partition of the domain. Universes
// appear in order of first dataset id and are named "<label>=<value>".
absl::StatusOr<Multiverse> PartitionByInvariant(
    const DatasetDomain& domain, const InvariantStatistic& statistic);

struct CrossUniverseMargin {
  std::string from_universe;
  std::string to_universe;
  // min over x in from, x' in to of d_out(P_x, P_x').
  ExtendedReal min_divergence;
};

// What the invariant gives away by construction: the smallest output
// divergence between rows in different universes, alongside the tightest
// within-universe budget. Informational only.
struct InvariantMarginReport {
  std::string statistic_label;
  std::vector<CrossUniverseMargin> cross_universe;
  std::vector<std::pair<std::string, ExtendedReal>> within_universe_tightest;
};

absl::StatusOr<InvariantMarginReport> ComputeInvariantMargins(
    const Mechanism& mechanism, const InvariantStatistic& statistic,
    const DpFlavor& base_flavor);

}  // namespace dpspec

#endif  // DPSPEC_INVARIANTS_H_
