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

#include "dpspec/specification.h"

#include <cstdint>
#include <set>
#include <string_view>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace dpspec {
namespace {

// 64-bit FNV-1a; stable across platforms and runs.
class Fnv1a {
 public:
  void Add(absl::string_view bytes) {
    for (unsigned char c : bytes) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
    // Field separator so ("ab","c") and ("a","bc") differ.
    hash_ ^= 0xff;
    hash_ *= 0x100000001b3ULL;
  }
  std::string Hex() const { return absl::StrFormat("%016x", hash_); }

 private:
  uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

Multiverse Multiverse::Full(const DatasetDomain& domain, std::string id) {
  DataUniverse universe{std::move(id), {}};
  universe.member_ids.reserve(domain.size());
  for (DatasetId x = 0; x < domain.size(); ++x) universe.member_ids.push_back(x);
  return Multiverse{{std::move(universe)}};
}

const DataUniverse* Multiverse::Find(const std::string& id) const {
  for (const DataUniverse& u : universes) {
    if (u.id == id) return &u;
  }
  return nullptr;
}

BudgetMap UniformBudget(const Multiverse& multiverse,
                        const ExtendedReal& epsilon) {
  BudgetMap budget;
  for (const DataUniverse& u : multiverse.universes) budget[u.id] = epsilon;
  return budget;
}

ValidationReport ValidateFlavor(const DpFlavor& flavor) {
  ValidationReport report;
  auto& v = report.violations;
  const DatasetDomain& domain = flavor.domain;

  if (flavor.multiverse.universes.empty()) v.push_back("multiverse is empty");
  std::set<std::string> seen;
  for (const DataUniverse& u : flavor.multiverse.universes) {
    if (!seen.insert(u.id).second) {
      v.push_back(absl::StrCat("duplicate universe id \"", u.id, "\""));
    }
    if (u.member_ids.empty()) {
      v.push_back(absl::StrCat("universe \"", u.id, "\" is empty"));
    }
    std::set<DatasetId> members;
    for (DatasetId id : u.member_ids) {
      if (!domain.contains(id)) {
        v.push_back(absl::StrCat("universe \"", u.id,
                                 "\" references dangling dataset id ", id));
      } else if (!members.insert(id).second) {
        v.push_back(absl::StrCat("universe \"", u.id,
                                 "\" lists dataset id ", id, " twice"));
      }
    }
  }

  const InputPremetric& premetric = flavor.premetric;
  if (premetric.kind == PremetricKind::kBoundedHamming &&
      domain.mode() != DomainMode::kFixedSize) {
    v.push_back("premetric mode mismatch: bounded-hamming requires a "
                "fixed-size domain");
  }
  if (premetric.kind == PremetricKind::kExplicitMatrix) {
    const auto& m = premetric.matrix;
    bool square = static_cast<int64_t>(m.size()) == domain.size();
    for (const auto& row : m) {
      square = square && static_cast<int64_t>(row.size()) == domain.size();
    }
    if (!square) {
      v.push_back(absl::StrCat("premetric matrix not total: expected ",
                               domain.size(), "x", domain.size(), " entries"));
    } else {
      for (int64_t i = 0; i < domain.size(); ++i) {
        if (!m[i][i].is_zero()) {
          v.push_back(absl::StrCat("premetric diagonal nonzero at dataset ", i));
        }
        for (int64_t j = 0; j < domain.size(); ++j) {
          if (m[i][j].is_negative()) {
            v.push_back(absl::StrCat("premetric entry (", i, ", ", j,
                                     ") is negative"));
          }
        }
      }
    }
  }
  return report;
}

ValidationReport ValidateSpec(const DpSpecification& spec) {
  ValidationReport report = ValidateFlavor(spec.flavor);
  auto& v = report.violations;
  for (const DataUniverse& u : spec.multiverse().universes) {
    auto it = spec.budget.find(u.id);
    if (it == spec.budget.end()) {
      v.push_back(absl::StrCat("budget missing for universe \"", u.id, "\""));
    } else if (it->second.is_negative()) {
      v.push_back(absl::StrCat("budget for universe \"", u.id,
                               "\" is negative"));
    }
  }
  for (const auto& [id, epsilon] : spec.budget) {
    if (spec.multiverse().Find(id) == nullptr) {
      v.push_back(absl::StrCat("budget names unknown universe \"", id, "\""));
    }
  }
  return report;
}

std::string FlavorFingerprint(const DpFlavor& flavor) {
  Fnv1a domain;
  domain.Add(DomainModeName(flavor.domain.mode()));
  domain.Add(absl::StrCat(flavor.domain.max_size()));
  for (const std::string& value : flavor.domain.alphabet()) domain.Add(value);

  Fnv1a multiverse;
  for (const DataUniverse& u : flavor.multiverse.universes) {
    multiverse.Add(u.id);
    multiverse.Add(absl::StrJoin(u.member_ids, ","));
  }

  Fnv1a premetric;
  premetric.Add(PremetricKindName(flavor.premetric.kind));
  for (const auto& row : flavor.premetric.matrix) {
    for (const ExtendedReal& entry : row) premetric.Add(entry.ToString());
  }

  return absl::StrCat("domain=", domain.Hex(),
                      ";multiverse=", multiverse.Hex(),
                      ";premetric=", premetric.Hex(),
                      ";divergence=", flavor.divergence.Describe());
}

}  // namespace dpspec
