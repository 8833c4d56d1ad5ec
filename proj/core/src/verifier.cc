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

#include "dpspec/verifier.h"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dpspec/invariants.h"

namespace dpspec {
namespace {

constexpr char kZeroTimesInfinityNote[] =
    "zero budget met an infinite input distance; 0 * inf = 0 was applied";
constexpr char kInfiniteDistanceNote[] =
    "pairs at infinite input distance contribute 0 to the tightest budget";

// Memoizes output divergences for ordered pairs; universes may overlap.
class PairDivergences {
 public:
  PairDivergences(const Mechanism& mechanism,
                  const OutputDivergence& divergence)
      : mechanism_(mechanism), divergence_(divergence) {}

  absl::StatusOr<ExtendedReal> Get(DatasetId x, DatasetId x_prime) {
    const uint64_t key = static_cast<uint64_t>(x) *
                             static_cast<uint64_t>(mechanism_.num_datasets()) +
                         static_cast<uint64_t>(x_prime);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto value =
        Evaluate(divergence_, mechanism_.row(x), mechanism_.row(x_prime));
    if (!value.ok()) return value.status();
    cache_.emplace(key, *value);
    return value;
  }

 private:
  const Mechanism& mechanism_;
  const OutputDivergence& divergence_;
  std::unordered_map<uint64_t, ExtendedReal> cache_;
};

std::vector<DatasetId> SortedMembers(const DataUniverse& universe) {
  std::vector<DatasetId> members = universe.member_ids;
  std::sort(members.begin(), members.end());
  return members;
}

void AddNote(std::vector<std::string>* notes, const char* note) {
  if (std::find(notes->begin(), notes->end(), note) == notes->end()) {
    notes->push_back(note);
  }
}

// Contribution of one ordered pair to the universe's tightest budget.
ExtendedReal PairRatio(const ExtendedReal& output, const ExtendedReal& input,
                       std::vector<std::string>* notes) {
  if (input.is_zero()) {
    return output.is_zero() ? ExtendedReal() : ExtendedReal::Infinity();
  }
  if (input.is_infinite()) {
    AddNote(notes, kInfiniteDistanceNote);
    return ExtendedReal();
  }
  if (output.is_infinite()) return ExtendedReal::Infinity();
  if (auto d = input.rational(); d.has_value()) return output.Divide(*d);
  return ExtendedReal::Approximate(output.Evaluate() / input.Evaluate());
}

struct UniverseScan {
  ExtendedReal tightest;
  std::optional<Witness> witness;
};

// Scans one universe; when `budget` is set, also records the first pair
// violating budget * d_in.
absl::StatusOr<UniverseScan> ScanUniverse(const DpFlavor& flavor,
                                          const DataUniverse& universe,
                                          const ExtendedReal* budget,
                                          PairDivergences* divergences,
                                          std::vector<std::string>* notes) {
  UniverseScan scan;
  const std::vector<DatasetId> members = SortedMembers(universe);
  const bool constrained = budget != nullptr && !budget->is_infinite();
  for (DatasetId x : members) {
    for (DatasetId x_prime : members) {
      if (x == x_prime &&
          flavor.premetric.kind != PremetricKind::kExplicitMatrix) {
        continue;
      }
      auto input = InputDistance(flavor.domain, flavor.premetric, x, x_prime);
      if (!input.ok()) return input.status();
      auto output = divergences->Get(x, x_prime);
      if (!output.ok()) return output.status();
      scan.tightest = Max(scan.tightest, PairRatio(*output, *input, notes));
      if (constrained && !scan.witness.has_value()) {
        if (budget->is_zero() && input->is_infinite()) {
          AddNote(notes, kZeroTimesInfinityNote);
        }
        ExtendedReal rhs = Product(*budget, *input);
        if (!ProvablyAtMost(*output, rhs)) {
          scan.witness = Witness{universe.id, x, x_prime, *output, rhs};
        }
      }
      // Nothing left to learn from this universe.
      if (scan.tightest.is_infinite() &&
          (!constrained || scan.witness.has_value())) {
        return scan;
      }
    }
  }
  return scan;
}

absl::Status CheckFlavor(const Mechanism& mechanism, const DpFlavor& flavor) {
  if (auto s = CheckDomainMatch(mechanism, flavor.domain); !s.ok()) return s;
  ValidationReport report = ValidateFlavor(flavor);
  if (!report.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "invalid specification: ", absl::StrJoin(report.violations, "; ")));
  }
  return absl::OkStatus();
}

}  // namespace

const ExtendedReal* VerificationResult::TightestFor(
    const std::string& universe_id) const {
  for (const UniverseBound& bound : per_universe_tightest) {
    if (bound.universe_id == universe_id) return &bound.tightest;
  }
  return nullptr;
}

absl::StatusOr<std::vector<UniverseBound>> TightestEpsilon(
    const Mechanism& mechanism, const DpFlavor& flavor) {
  if (auto s = CheckFlavor(mechanism, flavor); !s.ok()) return s;
  PairDivergences divergences(mechanism, flavor.divergence);
  std::vector<std::string> notes;
  std::vector<UniverseBound> bounds;
  for (const DataUniverse& universe : flavor.multiverse.universes) {
    auto scan = ScanUniverse(flavor, universe, nullptr, &divergences, &notes);
    if (!scan.ok()) return scan.status();
    bounds.push_back({universe.id, scan->tightest});
  }
  return bounds;
}

absl::StatusOr<VerificationResult> Satisfies(const Mechanism& mechanism,
                                             const DpSpecification& spec) {
  if (auto s = CheckDomainMatch(mechanism, spec.domain()); !s.ok()) return s;
  ValidationReport report = ValidateSpec(spec);
  if (!report.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "invalid specification: ", absl::StrJoin(report.violations, "; ")));
  }
  PairDivergences divergences(mechanism, spec.flavor.divergence);
  VerificationResult result;
  for (const DataUniverse& universe : spec.multiverse().universes) {
    const ExtendedReal& budget = spec.budget.at(universe.id);
    auto scan = ScanUniverse(spec.flavor, universe, &budget, &divergences,
                             &result.notes);
    if (!scan.ok()) return scan.status();
    result.per_universe_tightest.push_back({universe.id, scan->tightest});
    if (!result.witness.has_value() && scan->witness.has_value()) {
      result.witness = scan->witness;
    }
  }
  result.satisfied = !result.witness.has_value();
  return result;
}

absl::StatusOr<VerificationResult> VerifyInvariantRelease(
    const Mechanism& mechanism, const InvariantStatistic& statistic,
    const DpFlavor& base_flavor, const ExtendedReal& budget) {
  auto multiverse = PartitionByInvariant(base_flavor.domain, statistic);
  if (!multiverse.ok()) return multiverse.status();
  DpSpecification spec{base_flavor, {}};
  spec.flavor.multiverse = *std::move(multiverse);
  spec.budget = UniformBudget(spec.multiverse(), budget);
  return Satisfies(mechanism, spec);
}

}  // namespace dpspec
