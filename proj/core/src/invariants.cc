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

#include "dpspec/invariants.h"

#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpspec/verifier.h"

namespace dpspec {

InvariantStatistic InvariantStatistic::FromFunction(
    std::string label, const DatasetDomain& domain,
    const Statistic& statistic) {
  InvariantStatistic result{std::move(label), {}};
  result.values.reserve(domain.size());
  for (const Dataset& d : domain.datasets()) {
    result.values.push_back(statistic(d));
  }
  return result;
}

absl::StatusOr<Multiverse> PartitionByInvariant(
    const DatasetDomain& domain, const InvariantStatistic& statistic) {
  if (static_cast<int64_t>(statistic.values.size()) != domain.size()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "statistic \"", statistic.label, "\" has ", statistic.values.size(),
        " values but the domain has ", domain.size(), " datasets"));
  }
  Multiverse multiverse;
  std::map<std::string, size_t> index;
  for (DatasetId x = 0; x < domain.size(); ++x) {
    const std::string& value = statistic.values[x];
    auto [it, inserted] = index.emplace(value, multiverse.universes.size());
    if (inserted) {
      multiverse.universes.push_back(
          {absl::StrCat(statistic.label, "=", value), {}});
    }
    multiverse.universes[it->second].member_ids.push_back(x);
  }
  return multiverse;
}

absl::StatusOr<InvariantMarginReport> ComputeInvariantMargins(
    const Mechanism& mechanism, const InvariantStatistic& statistic,
    const DpFlavor& base_flavor) {
  if (auto s = CheckDomainMatch(mechanism, base_flavor.domain); !s.ok()) {
    return s;
  }
  auto multiverse = PartitionByInvariant(base_flavor.domain, statistic);
  if (!multiverse.ok()) return multiverse.status();

  InvariantMarginReport report;
  report.statistic_label = statistic.label;
  const auto& universes = multiverse->universes;
  for (const DataUniverse& from : universes) {
    for (const DataUniverse& to : universes) {
      if (&from == &to) continue;
      ExtendedReal smallest = ExtendedReal::Infinity();
      for (DatasetId x : from.member_ids) {
        for (DatasetId x_prime : to.member_ids) {
          auto d = Evaluate(base_flavor.divergence, mechanism.row(x),
                            mechanism.row(x_prime));
          if (!d.ok()) return d.status();
          if (Compare(*d, smallest) == Ordering::kLess) smallest = *d;
        }
      }
      report.cross_universe.push_back({from.id, to.id, smallest});
    }
  }

  DpFlavor flavor = base_flavor;
  flavor.multiverse = *std::move(multiverse);
  auto tightest = TightestEpsilon(mechanism, flavor);
  if (!tightest.ok()) return tightest.status();
  for (UniverseBound& bound : *tightest) {
    report.within_universe_tightest.emplace_back(std::move(bound.universe_id),
                                                 std::move(bound.tightest));
  }
  return report;
}

}  // namespace dpspec
