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

#include "dpspec/domain.h"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dpspec {
namespace {

// a * b, or -1 when it exceeds cap.
int64_t CappedMultiply(int64_t a, int64_t b, int64_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return -1;
  int64_t product = a * b;
  return product > cap ? -1 : product;
}

void EnumerateTuples(int alphabet_size, int length, std::vector<Dataset>* out) {
  std::vector<int> current(length, 0);
  while (true) {
    out->push_back(Dataset{current});
    int position = length - 1;
    while (position >= 0 && current[position] == alphabet_size - 1) {
      current[position] = 0;
      --position;
    }
    if (position < 0) return;
    ++current[position];
  }
}

// Nondecreasing sequences of the given length, lexicographically.
void EnumerateMultisets(int alphabet_size, int length,
                        std::vector<Dataset>* out) {
  std::vector<int> current(length, 0);
  while (true) {
    out->push_back(Dataset{current});
    int position = length - 1;
    while (position >= 0 && current[position] == alphabet_size - 1) {
      --position;
    }
    if (position < 0) return;
    int next = current[position] + 1;
    for (int i = position; i < length; ++i) current[i] = next;
  }
}

}  // namespace

int64_t CountDatasets(int64_t alphabet_size, int max_size, DomainMode mode,
                      int64_t cap) {
  if (mode == DomainMode::kFixedSize) {
    int64_t count = 1;
    for (int i = 0; i < max_size; ++i) {
      count = CappedMultiply(count, alphabet_size, cap);
      if (count < 0) return -1;
    }
    return count;
  }
  // Sum over k <= max_size of C(alphabet_size + k - 1, k).
  int64_t total = 0;
  int64_t term = 1;  // C(n - 1, 0)
  for (int k = 0; k <= max_size; ++k) {
    if (k > 0) {
      // C(n + k - 1, k) = C(n + k - 2, k - 1) * (n + k - 1) / k, computed
      // exactly since the intermediate product is divisible by k.
      __int128 next = static_cast<__int128>(term) * (alphabet_size + k - 1);
      next /= k;
      if (next > cap) return -1;
      term = static_cast<int64_t>(next);
    }
    total += term;
    if (total > cap) return -1;
  }
  return total;
}

absl::StatusOr<DatasetDomain> DatasetDomain::Create(
    std::vector<std::string> alphabet, int max_size, DomainMode mode,
    int64_t enumeration_cap) {
  if (alphabet.empty()) {
    return absl::InvalidArgumentError("value alphabet must be nonempty");
  }
  std::vector<std::string> sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return absl::InvalidArgumentError("value alphabet has duplicate values");
  }
  if (max_size < 1) {
    return absl::InvalidArgumentError("max_size must be at least 1");
  }
  int64_t count = CountDatasets(static_cast<int64_t>(alphabet.size()),
                                max_size, mode, enumeration_cap);
  if (count < 0) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "enumeration too large: domain exceeds the cap of ", enumeration_cap,
        " datasets"));
  }
  std::vector<Dataset> datasets;
  datasets.reserve(count);
  const int n = static_cast<int>(alphabet.size());
  if (mode == DomainMode::kFixedSize) {
    EnumerateTuples(n, max_size, &datasets);
  } else {
    for (int k = 0; k <= max_size; ++k) EnumerateMultisets(n, k, &datasets);
  }
  return DatasetDomain(std::move(alphabet), max_size, mode,
                       std::move(datasets));
}

absl::StatusOr<DatasetDomain> MakeDomain(std::vector<std::string> alphabet,
                                         int max_size, DomainMode mode,
                                         int64_t enumeration_cap) {
  return DatasetDomain::Create(std::move(alphabet), max_size, mode,
                               enumeration_cap);
}

std::string DatasetDomain::Render(DatasetId id) const {
  const Dataset& d = datasets_[id];
  std::string body = absl::StrJoin(
      d.values, ",",
      [this](std::string* out, int v) { out->append(alphabet_[v]); });
  return mode_ == DomainMode::kFixedSize ? absl::StrCat("(", body, ")")
                                         : absl::StrCat("{", body, "}");
}

std::string PremetricKindName(PremetricKind kind) {
  switch (kind) {
    case PremetricKind::kBoundedHamming:
      return "bounded-hamming";
    case PremetricKind::kUnboundedSymmetricDifference:
      return "unbounded-symmetric-difference";
    case PremetricKind::kExplicitMatrix:
      return "explicit-matrix";
  }
  return "unknown";
}

std::string DomainModeName(DomainMode mode) {
  return mode == DomainMode::kFixedSize ? "fixed-size" : "up-to-size";
}

absl::StatusOr<ExtendedReal> InputDistance(const DatasetDomain& domain,
                                           const InputPremetric& premetric,
                                           DatasetId x, DatasetId x_prime) {
  if (!domain.contains(x) || !domain.contains(x_prime)) {
    return absl::OutOfRangeError(absl::StrCat(
        "dataset id out of range: (", x, ", ", x_prime, ") for a domain of ",
        domain.size(), " datasets"));
  }
  switch (premetric.kind) {
    case PremetricKind::kBoundedHamming: {
      if (domain.mode() != DomainMode::kFixedSize) {
        return absl::FailedPreconditionError(
            "mode mismatch: bounded-hamming requires a fixed-size domain");
      }
      const auto& a = domain.dataset(x).values;
      const auto& b = domain.dataset(x_prime).values;
      int64_t differing = 0;
      for (size_t i = 0; i < a.size(); ++i) differing += a[i] != b[i];
      return ExtendedReal::FromInteger(differing);
    }
    case PremetricKind::kUnboundedSymmetricDifference: {
      std::vector<int64_t> counts(domain.alphabet().size(), 0);
      for (int v : domain.dataset(x).values) ++counts[v];
      for (int v : domain.dataset(x_prime).values) --counts[v];
      int64_t total = 0;
      for (int64_t c : counts) total += std::llabs(c);
      return ExtendedReal::FromInteger(total);
    }
    case PremetricKind::kExplicitMatrix: {
      if (static_cast<int64_t>(premetric.matrix.size()) != domain.size() ||
          static_cast<int64_t>(premetric.matrix[x].size()) != domain.size()) {
        return absl::FailedPreconditionError(
            "explicit premetric matrix is not total over the domain");
      }
      return premetric.matrix[x][x_prime];
    }
  }
  return absl::InternalError("unknown premetric kind");
}

}  // namespace dpspec
