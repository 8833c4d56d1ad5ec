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

#ifndef DPSPEC_SERIALIZATION_H_
#define DPSPEC_SERIALIZATION_H_

#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpspec/accountant.h"
#include "dpspec/five_safes.h"
#include "dpspec/invariants.h"
#include "dpspec/mechanisms.h"
#include "dpspec/specification.h"
#include "dpspec/verifier.h"
#include "json.hpp"

namespace dpspec {

// Key order is preserved so emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

// Reads and parses a JSON document. Errors name the file and, for syntax
// errors, the byte offset.
absl::StatusOr<Json> ReadJsonFile(const std::string& path);

// Serialized extended reals: JSON numbers, or strings in the ExtendedReal
// text format ("inf", "p/q", "ln(3)", ...). Error messages carry `where`, a
// JSON pointer into the document.
absl::StatusOr<ExtendedReal> ExtendedRealFromJson(const Json& j,
                                                  const std::string& where);
absl::StatusOr<Rational> RationalFromJson(const Json& j,
                                          const std::string& where);

// {"exact": "ln(3)", "decimal": 1.0986122886681098}; the decimal is the
// string "inf" for infinity. Inexact values have no "exact" member.
Json ExtendedRealToJson(const ExtendedReal& value);

// Specification files: {"domain", "multiverse", "premetric", "divergence",
// "budget"}. A flavor document is the same without "budget" (any budget
// member is ignored).
absl::StatusOr<DpFlavor> FlavorFromJson(const Json& doc);
absl::StatusOr<DpSpecification> SpecFromJson(const Json& doc);
absl::StatusOr<BudgetMap> BudgetFromJson(const Json& j,
                                         const std::string& where);
Json FlavorToJson(const DpFlavor& flavor);
Json SpecToJson(const DpSpecification& spec);
Json BudgetToJson(const BudgetMap& budget);
Json MultiverseToJson(const Multiverse& multiverse,
                      const DatasetDomain& domain);

// Kernel files: {"outputs": [...], "rows": {"<dataset id>": {"<output>":
// "p/q", ...}}}. Outputs missing from a row have probability zero.
absl::StatusOr<Mechanism> KernelFromJson(const Json& doc);
Json KernelToJson(const Mechanism& mechanism);

// Statistic files: {"label": "sum", "values": {"<dataset id>": "<value>"}}.
absl::StatusOr<InvariantStatistic> StatisticFromJson(
    const Json& doc, const DatasetDomain& domain);

absl::StatusOr<SafesRegime> RegimeFromJson(const Json& doc);
Json RegimeToJson(const SafesRegime& regime);

absl::StatusOr<BudgetLedger> LedgerFromJson(const Json& doc);
Json LedgerToJson(const BudgetLedger& ledger);

Json VerificationResultToJson(const VerificationResult& result,
                              const DatasetDomain& domain);
Json UniverseBoundsToJson(const std::vector<UniverseBound>& bounds);
Json AllocationToJson(const std::vector<ProjectBudget>& shares);
Json CompositionReportToJson(const CompositionBoundReport& report);
Json MarginReportToJson(const InvariantMarginReport& report);
Json CiToJson(const CiNormAssignment& ci);
Json SafesReportToJson(const SafesReport& report);

}  // namespace dpspec

#endif  // DPSPEC_SERIALIZATION_H_
