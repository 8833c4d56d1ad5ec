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

#ifndef DPSPEC_ACCOUNTANT_H_
#define DPSPEC_ACCOUNTANT_H_

#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpspec/mechanisms.h"
#include "dpspec/rational.h"
#include "dpspec/specification.h"

namespace dpspec {

struct LedgerEntry {
  std::string label;
  BudgetMap budget;
};

// Budgets spent under one flavor. The total is the per-universe saturating
// sum of every entry.
class BudgetLedger {
 public:
  // An empty ledger for the given flavor.
  static BudgetLedger ForFlavor(const DpFlavor& flavor);
  // Rebuilds a ledger, recomputing the total from the entries.
  static absl::StatusOr<BudgetLedger> FromEntries(
      std::string fingerprint, std::vector<std::string> universe_ids,
      std::vector<LedgerEntry> entries);

  const std::string& fingerprint() const { return fingerprint_; }
  const std::vector<std::string>& universe_ids() const { return universe_ids_; }
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  const BudgetMap& total() const { return total_; }

 private:
  friend absl::StatusOr<BudgetLedger> Compose(const BudgetLedger&,
                                              std::string,
                                              const std::string&,
                                              const BudgetMap&);

  BudgetLedger(std::string fingerprint, std::vector<std::string> universe_ids);

  std::string fingerprint_;
  std::vector<std::string> universe_ids_;
  std::vector<LedgerEntry> entries_;
  BudgetMap total_;
};

// Appends `budget` spent under the flavor with `fingerprint`. Budgets from a
// different flavor are refused rather than approximated.
absl::StatusOr<BudgetLedger> Compose(const BudgetLedger& ledger,
                                     std::string label,
                                     const std::string& fingerprint,
                                     const BudgetMap& budget);

struct ProjectBudget {
  std::string project;
  BudgetMap budget;
};

// Splits `total` across projects in proportion to their weights. For
// rational totals the shares sum back to the total exactly; an infinite
// total gives every positively weighted project an infinite share.
absl::StatusOr<std::vector<ProjectBudget>> Allocate(
    const BudgetMap& total,
    const std::vector<std::pair<std::string, Rational>>& weights);

struct CompositionBoundRow {
  std::string universe_id;
  // Tightest budget of the joint release.
  ExtendedReal joint;
  // Sum of the two separate tightest budgets.
  ExtendedReal separate_sum;
  // separate_sum - joint; +inf when only the sum is infinite.
  double slack = 0;
  bool within_bound = false;
};

struct CompositionBoundReport {
  // False unless the flavor uses the max divergence, the only flavor for
  // which additive composition is checked.
  bool flavor_supported = false;
  std::string note;
  std::vector<CompositionBoundRow> rows;

  bool holds() const;
};

inline constexpr double kCompositionTolerance = 1e-9;

// Compares the tightest budget of Product(first, second) with the sum of
// the separate tightest budgets, universe by universe.
absl::StatusOr<CompositionBoundReport> CheckCompositionBound(
    const Mechanism& first, const Mechanism& second, const DpFlavor& flavor);

}  // namespace dpspec

#endif  // DPSPEC_ACCOUNTANT_H_
