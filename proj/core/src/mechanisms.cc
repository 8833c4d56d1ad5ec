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

#include "dpspec/mechanisms.h"

#include <cstdlib>
#include <map>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpspec {

absl::StatusOr<Mechanism> Mechanism::Create(std::vector<std::string> outputs,
                                            std::vector<Distribution> rows) {
  if (outputs.empty()) {
    return absl::InvalidArgumentError("mechanism has no output labels");
  }
  if (rows.empty()) {
    return absl::InvalidArgumentError("mechanism has no rows");
  }
  std::set<std::string> seen;
  for (const std::string& label : outputs) {
    if (!seen.insert(label).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate output label \"", label, "\""));
    }
  }
  for (size_t x = 0; x < rows.size(); ++x) {
    if (rows[x].size() != outputs.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row for dataset ", x, " has ", rows[x].size(),
          " outcomes but the mechanism has ", outputs.size(), " outputs"));
    }
  }
  return Mechanism(std::move(outputs), std::move(rows));
}

absl::Status CheckDomainMatch(const Mechanism& mechanism,
                              const DatasetDomain& domain) {
  if (mechanism.num_datasets() != domain.size()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "domain mismatch: mechanism has ", mechanism.num_datasets(),
        " rows but the domain has ", domain.size(), " datasets"));
  }
  return absl::OkStatus();
}

absl::StatusOr<Mechanism> RandomizedResponse(const DatasetDomain& domain,
                                             const Rational& keep_prob) {
  if (domain.alphabet().size() != 2 || domain.max_size() != 1 ||
      domain.mode() != DomainMode::kFixedSize) {
    return absl::InvalidArgumentError(
        "randomized response needs a fixed-size, single-record domain over "
        "two values");
  }
  if (keep_prob <= Rational(1, 2) || keep_prob >= 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "keep_prob must lie in (1/2, 1), got ", FormatRational(keep_prob)));
  }
  std::vector<Distribution> rows;
  const Rational flip = 1 - keep_prob;
  for (const Dataset& d : domain.datasets()) {
    std::vector<Rational> probs(2, flip);
    probs[d.values[0]] = keep_prob;
    auto row = Distribution::Create(std::move(probs));
    if (!row.ok()) return row.status();
    rows.push_back(*std::move(row));
  }
  return Mechanism::Create(domain.alphabet(), std::move(rows));
}

absl::StatusOr<Mechanism> GeometricCount(const DatasetDomain& domain,
                                         const CountQuery& query,
                                         const Rational& decay,
                                         int64_t clamp_low,
                                         int64_t clamp_high) {
  if (clamp_low > clamp_high) {
    return absl::InvalidArgumentError("empty clamp range");
  }
  if (decay <= 0 || decay >= 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "decay must lie in (0, 1), got ", FormatRational(decay)));
  }
  const int64_t width = clamp_high - clamp_low + 1;
  std::vector<std::string> outputs;
  outputs.reserve(width);
  for (int64_t t = clamp_low; t <= clamp_high; ++t) {
    outputs.push_back(absl::StrCat(t));
  }
  // Rows depend on x only through query(x); build each shape once.
  std::map<int64_t, Distribution> by_count;
  std::vector<Distribution> rows;
  rows.reserve(domain.size());
  for (DatasetId x = 0; x < domain.size(); ++x) {
    const int64_t count = query(domain.dataset(x));
    if (count < clamp_low || count > clamp_high) {
      return absl::InvalidArgumentError(absl::StrCat(
          "query value ", count, " at dataset ", x, " lies outside the clamp "
          "range [", clamp_low, ", ", clamp_high, "]"));
    }
    auto it = by_count.find(count);
    if (it == by_count.end()) {
      std::vector<Rational> weights;
      weights.reserve(width);
      Rational total = 0;
      for (int64_t t = clamp_low; t <= clamp_high; ++t) {
        weights.push_back(Power(decay, std::llabs(t - count)));
        total += weights.back();
      }
      for (Rational& w : weights) w /= total;
      auto row = Distribution::Create(std::move(weights));
      if (!row.ok()) return row.status();
      it = by_count.emplace(count, *std::move(row)).first;
    }
    rows.push_back(it->second);
  }
  return Mechanism::Create(std::move(outputs), std::move(rows));
}

absl::StatusOr<Mechanism> ExactRelease(const DatasetDomain& domain,
                                       const Statistic& statistic) {
  std::vector<std::string> outputs;
  std::map<std::string, size_t> index;
  std::vector<size_t> label_of(domain.size());
  for (DatasetId x = 0; x < domain.size(); ++x) {
    std::string value = statistic(domain.dataset(x));
    auto [it, inserted] = index.emplace(value, outputs.size());
    if (inserted) outputs.push_back(value);
    label_of[x] = it->second;
  }
  std::vector<Distribution> rows;
  rows.reserve(domain.size());
  for (DatasetId x = 0; x < domain.size(); ++x) {
    rows.push_back(Distribution::PointMass(outputs.size(), label_of[x]));
  }
  return Mechanism::Create(std::move(outputs), std::move(rows));
}

absl::StatusOr<Mechanism> Product(const Mechanism& first,
                                  const Mechanism& second) {
  if (first.num_datasets() != second.num_datasets()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "domain mismatch: mechanisms have ", first.num_datasets(), " and ",
        second.num_datasets(), " rows"));
  }
  std::vector<std::string> outputs;
  for (const std::string& a : first.outputs()) {
    for (const std::string& b : second.outputs()) {
      outputs.push_back(absl::StrCat("(", a, ",", b, ")"));
    }
  }
  std::vector<Distribution> rows;
  rows.reserve(first.num_datasets());
  for (DatasetId x = 0; x < first.num_datasets(); ++x) {
    std::vector<Rational> probs;
    probs.reserve(outputs.size());
    for (const Rational& a : first.row(x).probs()) {
      for (const Rational& b : second.row(x).probs()) probs.push_back(a * b);
    }
    auto row = Distribution::Create(std::move(probs));
    if (!row.ok()) return row.status();
    rows.push_back(*std::move(row));
  }
  return Mechanism::Create(std::move(outputs), std::move(rows));
}

}  // namespace dpspec
