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

#ifndef DPSPEC_MECHANISMS_H_
#define DPSPEC_MECHANISMS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpspec/divergences.h"
#include "dpspec/domain.h"
#include "dpspec/rational.h"

namespace dpspec {

// A finite data-release mechanism given as an exact stochastic kernel: one
// output distribution per dataset id, all over the same output labels.
// Mechanisms are never sampled; verification works on the kernel alone.
class Mechanism {
 public:
  static absl::StatusOr<Mechanism> Create(std::vector<std::string> outputs,
                                          std::vector<Distribution> rows);

  const std::vector<std::string>& outputs() const { return outputs_; }
  // Number of datasets the kernel is defined on.
  int64_t num_datasets() const { return static_cast<int64_t>(rows_.size()); }
  const Distribution& row(DatasetId x) const { return rows_[x]; }
  const std::vector<Distribution>& rows() const { return rows_; }

 private:
  Mechanism(std::vector<std::string> outputs, std::vector<Distribution> rows)
      : outputs_(std::move(outputs)), rows_(std::move(rows)) {}

  std::vector<std::string> outputs_;
  std::vector<Distribution> rows_;
};

// FailedPrecondition unless the mechanism has one row per dataset.
absl::Status CheckDomainMatch(const Mechanism& mechanism,
                              const DatasetDomain& domain);

// Binary randomized response on a single-record domain over two values:
// reports the true value with probability keep_prob, in (1/2, 1).
absl::StatusOr<Mechanism> RandomizedResponse(const DatasetDomain& domain,
                                             const Rational& keep_prob);

using CountQuery = std::function<int64_t(const Dataset&)>;

// Truncated geometric noise on a count: the output t in [clamp_low,
// clamp_high] has probability proportional to decay^|t - query(x)|,
// renormalized over the clamp range. query(x) must lie in the range.
absl::StatusOr<Mechanism> GeometricCount(const DatasetDomain& domain,
                                         const CountQuery& query,
                                         const Rational& decay,
                                         int64_t clamp_low,
                                         int64_t clamp_high);

using Statistic = std::function<std::string(const Dataset&)>;

// Releases statistic(x) exactly. Output labels are the distinct statistic
// values in order of first appearance by dataset id.
absl::StatusOr<Mechanism> ExactRelease(const DatasetDomain& domain,
                                       const Statistic& statistic);

// Same dataset count on both sides; outputs are "(a,b)" pairs in
// lexicographic order and each row is the independent product.
absl::StatusOr<Mechanism> Product(const Mechanism& first,
                                  const Mechanism& second);

}  // namespace dpspec

#endif  // DPSPEC_MECHANISMS_H_
