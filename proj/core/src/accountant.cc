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

#include "dpspec/accountant.h"

#include <limits>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpspec/verifier.h"

namespace dpspec {
namespace {

absl::Status CheckCoverage(const std::vector<std::string>& universe_ids,
                           const BudgetMap& budget, const std::string& label) {
  for (const std::string& id : universe_ids) {
    auto it = budget.find(id);
    if (it == budget.end()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "budget \"", label, "\" is missing universe \"", id, "\""));
    }
    if (it->second.is_negative()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "budget \"", label, "\" is negative for universe \"", id, "\""));
    }
  }
  if (budget.size() != universe_ids.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "budget \"", label, "\" names universes outside the ledger's flavor"));
  }
  return absl::OkStatus();
}

}  // namespace

BudgetLedger::BudgetLedger(std::string fingerprint,
                           std::vector<std::string> universe_ids)
    : fingerprint_(std::move(fingerprint)),
      universe_ids_(std::move(universe_ids)) {
  for (const std::string& id : universe_ids_) total_[id] = ExtendedReal();
}

BudgetLedger BudgetLedger::ForFlavor(const DpFlavor& flavor) {
  std::vector<std::string> ids;
  for (const DataUniverse& u : flavor.multiverse.universes) ids.push_back(u.id);
  return BudgetLedger(FlavorFingerprint(flavor), std::move(ids));
}

absl::StatusOr<BudgetLedger> BudgetLedger::FromEntries(
    std::string fingerprint, std::vector<std::string> universe_ids,
    std::vector<LedgerEntry> entries) {
  if (std::set<std::string>(universe_ids.begin(), universe_ids.end()).size() !=
      universe_ids.size()) {
    return absl::InvalidArgumentError("ledger lists a universe twice");
  }
  BudgetLedger ledger(fingerprint, std::move(universe_ids));
  for (LedgerEntry& entry : entries) {
    auto next = Compose(ledger, std::move(entry.label), fingerprint,
                        entry.budget);
    if (!next.ok()) return next.status();
    ledger = *std::move(next);
  }
  return ledger;
}

absl::StatusOr<BudgetLedger> Compose(const BudgetLedger& ledger,
                                     std::string label,
                                     const std::string& fingerprint,
                                     const BudgetMap& budget) {
  if (fingerprint != ledger.fingerprint()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "composition refused: budget \"", label, "\" has flavor ", fingerprint,
        " but the ledger holds ", ledger.fingerprint()));
  }
  if (auto s = CheckCoverage(ledger.universe_ids(), budget, label); !s.ok()) {
    return s;
  }
  BudgetLedger next = ledger;
  for (const std::string& id : next.universe_ids_) {
    next.total_[id] += budget.at(id);
  }
  next.entries_.push_back({std::move(label), budget});
  return next;
}

absl::StatusOr<std::vector<ProjectBudget>> Allocate(
    const BudgetMap& total,
    const std::vector<std::pair<std::string, Rational>>& weights) {
  if (weights.empty()) {
    return absl::InvalidArgumentError("no projects to allocate to");
  }
  Rational weight_sum = 0;
  for (const auto& [project, weight] : weights) {
    if (weight < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("negative weight for project \"", project, "\""));
    }
    weight_sum += weight;
  }
  if (weight_sum == 0) {
    return absl::InvalidArgumentError("all project weights are zero");
  }
  std::vector<ProjectBudget> shares;
  shares.reserve(weights.size());
  for (const auto& [project, weight] : weights) {
    ProjectBudget share{project, {}};
    const Rational fraction = weight / weight_sum;
    for (const auto& [universe, epsilon] : total) {
      share.budget[universe] = epsilon.Scale(fraction);
    }
    shares.push_back(std::move(share));
  }
  return shares;
}

bool CompositionBoundReport::holds() const {
  for (const CompositionBoundRow& row : rows) {
    if (!row.within_bound) return false;
  }
  return true;
}

absl::StatusOr<CompositionBoundReport> CheckCompositionBound(
    const Mechanism& first, const Mechanism& second, const DpFlavor& flavor) {
  auto joint = Product(first, second);
  if (!joint.ok()) return joint.status();
  auto joint_bounds = TightestEpsilon(*joint, flavor);
  if (!joint_bounds.ok()) return joint_bounds.status();
  auto first_bounds = TightestEpsilon(first, flavor);
  if (!first_bounds.ok()) return first_bounds.status();
  auto second_bounds = TightestEpsilon(second, flavor);
  if (!second_bounds.ok()) return second_bounds.status();

  CompositionBoundReport report;
  report.flavor_supported = flavor.divergence.kind() == DivergenceKind::kMax;
  if (!report.flavor_supported) {
    report.note = absl::StrCat(
        "additive composition is only checked for the max divergence; ",
        "whether ", flavor.divergence.Describe(),
        " budgets compose additively is an open question and these rows are "
        "informational");
  }
  for (size_t i = 0; i < joint_bounds->size(); ++i) {
    CompositionBoundRow row;
    row.universe_id = (*joint_bounds)[i].universe_id;
    row.joint = (*joint_bounds)[i].tightest;
    row.separate_sum = (*first_bounds)[i].tightest + (*second_bounds)[i].tightest;
    if (row.joint.is_infinite() && row.separate_sum.is_infinite()) {
      row.slack = 0;
    } else if (row.separate_sum.is_infinite()) {
      row.slack = std::numeric_limits<double>::infinity();
    } else if (row.joint.is_infinite()) {
      row.slack = -std::numeric_limits<double>::infinity();
    } else {
      row.slack = (row.separate_sum + row.joint.Negated()).ToDouble();
    }
    row.within_bound = ProvablyAtMost(row.joint, row.separate_sum) ||
                       row.slack >= -kCompositionTolerance;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace dpspec
