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

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/status_matchers.h"

namespace dpspec {
namespace {

using ::dpspec::testing::StatusIs;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

std::vector<std::string> Rendered(const DatasetDomain& domain) {
  std::vector<std::string> out;
  for (DatasetId id = 0; id < domain.size(); ++id) out.push_back(domain.Render(id));
  return out;
}

double Distance(const DatasetDomain& domain, const InputPremetric& premetric,
                DatasetId x, DatasetId y) {
  return InputDistance(domain, premetric, x, y)->ToDouble();
}

TEST(MakeDomainTest, FixedSizeTuplesInLexicographicOrder) {
  auto domain = MakeDomain({"0", "1"}, 2, DomainMode::kFixedSize);
  ASSERT_OK(domain);
  EXPECT_THAT(Rendered(*domain), ElementsAre("(0,0)", "(0,1)", "(1,0)", "(1,1)"));
}

TEST(MakeDomainTest, SingletonAlphabet) {
  auto domain = MakeDomain({"a"}, 3, DomainMode::kFixedSize);
  ASSERT_OK(domain);
  EXPECT_THAT(Rendered(*domain), ElementsAre("(a,a,a)"));
}

TEST(MakeDomainTest, UpToSizeMultisets) {
  auto domain = MakeDomain({"0", "1"}, 2, DomainMode::kUpToSize);
  ASSERT_OK(domain);
  EXPECT_THAT(Rendered(*domain),
              ElementsAre("{}", "{0}", "{1}", "{0,0}", "{0,1}", "{1,1}"));
}

// Number of multisets of size at most k over n symbols, by brute counting
// of nondecreasing sequences.
int64_t CountMultisets(int n, int k) {
  int64_t total = 0;
  std::function<void(int, int)> walk = [&](int remaining, int smallest) {
    ++total;
    if (remaining == 0) return;
    for (int v = smallest; v < n; ++v) walk(remaining - 1, v);
  };
  walk(k, 0);
  return total;
}

TEST(MakeDomainTest, CountsMatchBruteForce) {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= 4; ++k) {
      std::vector<std::string> alphabet;
      for (int i = 0; i < n; ++i) alphabet.push_back(std::to_string(i));
      auto fixed = MakeDomain(alphabet, k, DomainMode::kFixedSize);
      auto upto = MakeDomain(alphabet, k, DomainMode::kUpToSize);
      ASSERT_OK(fixed);
      ASSERT_OK(upto);
      int64_t power = 1;
      for (int i = 0; i < k; ++i) power *= n;
      EXPECT_EQ(fixed->size(), power);
      EXPECT_EQ(upto->size(), CountMultisets(n, k)) << n << " " << k;
      EXPECT_EQ(CountDatasets(n, k, DomainMode::kUpToSize, 1'000'000),
                CountMultisets(n, k));
    }
  }
}

TEST(MakeDomainTest, EnumerationIsDeterministic) {
  auto a = MakeDomain({"x", "y", "z"}, 3, DomainMode::kUpToSize);
  auto b = MakeDomain({"x", "y", "z"}, 3, DomainMode::kUpToSize);
  ASSERT_OK(a);
  ASSERT_OK(b);
  EXPECT_EQ(a->datasets(), b->datasets());
  EXPECT_EQ(*a, *b);
}

TEST(MakeDomainTest, CapNamesTheBound) {
  EXPECT_THAT(MakeDomain({"0", "1"}, 21, DomainMode::kFixedSize),
              StatusIs(absl::StatusCode::kResourceExhausted,
                       HasSubstr("1000000")));
  EXPECT_THAT(MakeDomain({"0", "1"}, 4, DomainMode::kFixedSize, 15),
              StatusIs(absl::StatusCode::kResourceExhausted, HasSubstr("15")));
  EXPECT_OK(MakeDomain({"0", "1"}, 4, DomainMode::kFixedSize, 16));
}

TEST(MakeDomainTest, RejectsBadArguments) {
  EXPECT_FALSE(MakeDomain({}, 2, DomainMode::kFixedSize).ok());
  EXPECT_FALSE(MakeDomain({"0"}, 0, DomainMode::kFixedSize).ok());
  EXPECT_FALSE(MakeDomain({"0", "0"}, 1, DomainMode::kFixedSize).ok());
}

TEST(InputDistanceTest, Examples) {
  auto tuples = MakeDomain({"0", "1"}, 2, DomainMode::kFixedSize);
  auto bags = MakeDomain({"0", "1"}, 2, DomainMode::kUpToSize);
  ASSERT_OK(tuples);
  ASSERT_OK(bags);
  const InputPremetric hamming = InputPremetric::BoundedHamming();
  const InputPremetric symdiff = InputPremetric::UnboundedSymmetricDifference();
  // (0,1) is id 1, (0,0) is id 0.
  EXPECT_EQ(Distance(*tuples, hamming, 1, 0), 1);
  EXPECT_EQ(Distance(*tuples, hamming, 1, 1), 0);
  EXPECT_EQ(Distance(*tuples, hamming, 0, 3), 2);
  // {0,1} is id 4, {0} is id 1, {0,0} id 3, {1,1} id 5.
  EXPECT_EQ(Distance(*bags, symdiff, 4, 1), 1);
  EXPECT_EQ(Distance(*bags, symdiff, 3, 5), 4);
  EXPECT_EQ(Distance(*bags, symdiff, 0, 5), 2);
}

TEST(InputDistanceTest, HammingNeedsFixedSize) {
  auto bags = MakeDomain({"0", "1"}, 2, DomainMode::kUpToSize);
  ASSERT_OK(bags);
  EXPECT_THAT(InputDistance(*bags, InputPremetric::BoundedHamming(), 0, 1),
              StatusIs(absl::StatusCode::kFailedPrecondition,
                       HasSubstr("mode mismatch")));
}

TEST(InputDistanceTest, ExplicitMatrixAndBadIds) {
  auto domain = MakeDomain({"0", "1"}, 1, DomainMode::kFixedSize);
  ASSERT_OK(domain);
  InputPremetric m = InputPremetric::Explicit(
      {{ExtendedReal(), ExtendedReal::Infinity()},
       {ExtendedReal::FromRational(Rational(1, 2)), ExtendedReal()}});
  EXPECT_TRUE(InputDistance(*domain, m, 0, 1)->is_infinite());
  EXPECT_EQ(*InputDistance(*domain, m, 1, 0),
            ExtendedReal::FromRational(Rational(1, 2)));
  EXPECT_FALSE(InputDistance(*domain, m, 0, 2).ok());
  EXPECT_FALSE(InputDistance(*domain, InputPremetric::BoundedHamming(), -1, 0).ok());
}

TEST(InputDistancePropertyTest, BuiltInPremetricsAreSymmetric) {
  // Up to 100 datasets per domain.
  const std::vector<std::tuple<int, int, DomainMode>> shapes = {
      {2, 6, DomainMode::kFixedSize}, {4, 3, DomainMode::kFixedSize},
      {3, 4, DomainMode::kFixedSize}, {10, 2, DomainMode::kFixedSize},
      {3, 6, DomainMode::kUpToSize},  {4, 4, DomainMode::kUpToSize},
      {2, 12, DomainMode::kUpToSize}};
  for (const auto& [n, k, mode] : shapes) {
    std::vector<std::string> alphabet;
    for (int i = 0; i < n; ++i) alphabet.push_back(std::to_string(i));
    auto domain = MakeDomain(alphabet, k, mode);
    ASSERT_OK(domain);
    ASSERT_LE(domain->size(), 100);
    std::vector<InputPremetric> kinds = {
        InputPremetric::UnboundedSymmetricDifference()};
    if (mode == DomainMode::kFixedSize) {
      kinds.push_back(InputPremetric::BoundedHamming());
    }
    for (const InputPremetric& premetric : kinds) {
      for (DatasetId x = 0; x < domain->size(); ++x) {
        for (DatasetId y = 0; y < domain->size(); ++y) {
          const double d = Distance(*domain, premetric, x, y);
          EXPECT_EQ(d, Distance(*domain, premetric, y, x));
          // Permuted tuples share a multiset, so only the natural pairings
          // separate distinct datasets.
          const bool natural =
              (premetric.kind == PremetricKind::kBoundedHamming) ==
              (mode == DomainMode::kFixedSize);
          if (natural) {
            EXPECT_EQ(d == 0, x == y);
          }
        }
      }
    }
  }
}

TEST(InputDistancePropertyTest, HammingTriangleInequality) {
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}, {5, 2}}) {
    std::vector<std::string> alphabet;
    for (int i = 0; i < n; ++i) alphabet.push_back(std::to_string(i));
    auto domain = MakeDomain(alphabet, k, DomainMode::kFixedSize);
    ASSERT_OK(domain);
    ASSERT_LE(domain->size(), 30);
    const InputPremetric hamming = InputPremetric::BoundedHamming();
    for (DatasetId x = 0; x < domain->size(); ++x) {
      for (DatasetId y = 0; y < domain->size(); ++y) {
        for (DatasetId z = 0; z < domain->size(); ++z) {
          EXPECT_LE(Distance(*domain, hamming, x, z),
                    Distance(*domain, hamming, x, y) +
                        Distance(*domain, hamming, y, z));
        }
      }
    }
  }
}

}  // namespace
}  // namespace dpspec
