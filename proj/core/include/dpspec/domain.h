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

#ifndef DPSPEC_DOMAIN_H_
#define DPSPEC_DOMAIN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpspec/extended_real.h"

namespace dpspec {

using DatasetId = int64_t;

enum class DomainMode { kFixedSize, kUpToSize };

inline constexpr int64_t kDefaultEnumerationCap = 1'000'000;

// A dataset is a sequence of indices into the value alphabet. In fixed-size
// domains it is an ordered tuple; in up-to-size domains it is a multiset kept
// sorted ascending.
struct Dataset {
  std::vector<int> values;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// The finite set of all possible datasets, enumerated deterministically.
// Fixed-size domains list tuples in lexicographic order; up-to-size domains
// list multisets by size, then lexicographically.
class DatasetDomain {
 public:
  static absl::StatusOr<DatasetDomain> Create(
      std::vector<std::string> alphabet, int max_size, DomainMode mode,
      int64_t enumeration_cap = kDefaultEnumerationCap);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  int max_size() const { return max_size_; }
  DomainMode mode() const { return mode_; }
  int64_t size() const { return static_cast<int64_t>(datasets_.size()); }
  bool contains(DatasetId id) const { return id >= 0 && id < size(); }
  const Dataset& dataset(DatasetId id) const { return datasets_[id]; }
  const std::vector<Dataset>& datasets() const { return datasets_; }

  // "(0,1)" for tuples, "{0,1}" for multisets, using alphabet values.
  std::string Render(DatasetId id) const;

  friend bool operator==(const DatasetDomain& a, const DatasetDomain& b) {
    return a.alphabet_ == b.alphabet_ && a.max_size_ == b.max_size_ &&
           a.mode_ == b.mode_;
  }

 private:
  DatasetDomain(std::vector<std::string> alphabet, int max_size,
                DomainMode mode, std::vector<Dataset> datasets)
      : alphabet_(std::move(alphabet)),
        max_size_(max_size),
        mode_(mode),
        datasets_(std::move(datasets)) {}

  std::vector<std::string> alphabet_;
  int max_size_;
  DomainMode mode_;
  std::vector<Dataset> datasets_;
};

// Equivalent to DatasetDomain::Create.
absl::StatusOr<DatasetDomain> MakeDomain(
    std::vector<std::string> alphabet, int max_size, DomainMode mode,
    int64_t enumeration_cap = kDefaultEnumerationCap);

// Number of datasets a domain would enumerate, or -1 if it exceeds `cap`.
int64_t CountDatasets(int64_t alphabet_size, int max_size, DomainMode mode,
                      int64_t cap);

enum class PremetricKind {
  kBoundedHamming,
  kUnboundedSymmetricDifference,
  kExplicitMatrix,
};

// The input "distance" between datasets. Explicit matrices may be
// asymmetric and need not satisfy the triangle inequality.
struct InputPremetric {
  PremetricKind kind = PremetricKind::kBoundedHamming;
  // Row-major square table indexed by dataset id; explicit kind only.
  std::vector<std::vector<ExtendedReal>> matrix;

  static InputPremetric BoundedHamming() {
    return {PremetricKind::kBoundedHamming, {}};
  }
  static InputPremetric UnboundedSymmetricDifference() {
    return {PremetricKind::kUnboundedSymmetricDifference, {}};
  }
  static InputPremetric Explicit(std::vector<std::vector<ExtendedReal>> m) {
    return {PremetricKind::kExplicitMatrix, std::move(m)};
  }
};

std::string PremetricKindName(PremetricKind kind);
std::string DomainModeName(DomainMode mode);

// d(x, x'). Bounded Hamming counts differing positions and needs a
// fixed-size domain; the symmetric difference is the multiset symmetric
// difference size.
absl::StatusOr<ExtendedReal> InputDistance(const DatasetDomain& domain,
                                           const InputPremetric& premetric,
                                           DatasetId x, DatasetId x_prime);

}  // namespace dpspec

#endif  // DPSPEC_DOMAIN_H_
