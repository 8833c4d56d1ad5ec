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

#ifndef DPSPEC_SPECIFICATION_H_
#define DPSPEC_SPECIFICATION_H_

#include <map>
#include <string>
#include <vector>

#include "dpspec/divergences.h"
#include "dpspec/domain.h"
#include "dpspec/extended_real.h"

namespace dpspec {

// A set of datasets within which the privacy inequality is enforced.
struct DataUniverse {
  std::string id;
  std::vector<DatasetId> member_ids;
};

// A collection of data universes. Universes may overlap; pairs of datasets
// that share no universe are unconstrained.
struct Multiverse {
  std::vector<DataUniverse> universes;

  // The single universe containing every dataset of `domain`.
  static Multiverse Full(const DatasetDomain& domain,
                         std::string id = "full");

  const DataUniverse* Find(const std::string& id) const;
};

// Protection-loss budget per universe id. Infinity means the universe is
// unconstrained.
using BudgetMap = std::map<std::string, ExtendedReal>;

// The same budget for every universe of `multiverse`.
BudgetMap UniformBudget(const Multiverse& multiverse,
                        const ExtendedReal& epsilon);

// Domain, multiverse, input premetric and output divergence: the shape of a
// privacy guarantee without its strength.
struct DpFlavor {
  DatasetDomain domain;
  Multiverse multiverse;
  InputPremetric premetric;
  OutputDivergence divergence;
};

// A flavor together with a budget for each of its universes.
struct DpSpecification {
  DpFlavor flavor;
  BudgetMap budget;

  const DatasetDomain& domain() const { return flavor.domain; }
  const Multiverse& multiverse() const { return flavor.multiverse; }
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Structural checks on a flavor: universe ids, member ids, premetric
// matrix shape and entries.
ValidationReport ValidateFlavor(const DpFlavor& flavor);

// ValidateFlavor plus budget coverage and sign.
ValidationReport ValidateSpec(const DpSpecification& spec);

// Structural identity of a flavor: two flavors compose only when their
// fingerprints are equal. Rendered as
// "domain=<hex>;multiverse=<hex>;premetric=<hex>;divergence=<describe>".
std::string FlavorFingerprint(const DpFlavor& flavor);

}  // namespace dpspec

#endif  // DPSPEC_SPECIFICATION_H_
