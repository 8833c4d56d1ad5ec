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

#include "dpspec/invariants.h"

#include <set>

#include "dpspec/mechanisms.h"
#include "dpspec/verifier.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/generators.h"
#include "testing/status_matchers.h"

namespace dpspec {
namespace {

using ::dpspec::testing::Generator;
using ::testing::ElementsAre;
using ::testing::SizeIs;

int64_t SumOf(const Dataset& x) {
  int64_t sum = 0;
  for (int v : x.values) sum += v;
  return sum;
}

DatasetDomain Square() { return *MakeDomain({"0", "1"}, 2, DomainMode::kFixedSize); }

DpFlavor MaxFlavor(const DatasetDomain& domain) {
  return DpFlavor{domain, Multiverse::Full(domain),
                  InputPremetric::BoundedHamming(), OutputDivergence::Max()};
}

InvariantStatistic SumStatistic(const DatasetDomain& domain) {
  return InvariantStatistic::FromFunction(
      "sum", domain, [](const Dataset& x) { return std::to_string(SumOf(x)); });
}

TEST(PartitionByInvariantTest, SumOnSquare) {
  DatasetDomain domain = Square();
  auto multiverse = PartitionByInvariant(domain, SumStatistic(domain));
  ASSERT_OK(multiverse);
  ASSERT_THAT(multiverse->universes, SizeIs(3));
  EXPECT_EQ(multiverse->universes[0].id, "sum=0");
  EXPECT_THAT(multiverse->universes[0].member_ids, ElementsAre(0));
  EXPECT_EQ(multiverse->universes[1].id, "sum=1");
  EXPECT_THAT(multiverse->universes[1].member_ids, ElementsAre(1, 2));
  EXPECT_EQ(multiverse->universes[2].id, "sum=2");
  EXPECT_THAT(multiverse->universes[2].member_ids, ElementsAre(3));
}

TEST(PartitionByInvariantTest, ConstantAndInjective) {
  DatasetDomain domain = Square();
  auto constant = PartitionByInvariant(
      domain, InvariantStatistic::FromFunction(
                  "c", domain, [](const Dataset&) { return std::string("k"); }));
  ASSERT_OK(constant);
  ASSERT_THAT(constant->universes, SizeIs(1));
  EXPECT_THAT(constant->universes[0].member_ids, ElementsAre(0, 1, 2, 3));

  InvariantStatistic identity = InvariantStatistic::FromFunction(
      "id", domain, [](const Dataset& x) {
        return std::to_string(x.values[0]) + std::to_string(x.values[1]);
      });
  auto singletons = PartitionByInvariant(domain, identity);
  ASSERT_OK(singletons);
  EXPECT_THAT(singletons->universes, SizeIs(4));
  Generator gen(3);
  Mechanism m = gen.RandomMechanism(4, 3, 12);
  auto result =
      VerifyInvariantRelease(m, identity, MaxFlavor(domain), ExtendedReal());
  ASSERT_OK(result);
  EXPECT_TRUE(result->satisfied);
}

TEST(PartitionByInvariantTest, RejectsPartialStatistic) {
  DatasetDomain domain = Square();
  InvariantStatistic partial{"p", {"a", "b"}};
  EXPECT_FALSE(PartitionByInvariant(domain, partial).ok());
}

TEST(InvariantMarginTest, ExactReleaseLeaksEverythingAcrossUniverses) {
  DatasetDomain domain = Square();
  InvariantStatistic sum = SumStatistic(domain);
  Mechanism exact = *ExactRelease(domain, [](const Dataset& x) {
    return std::to_string(SumOf(x));
  });
  auto report = ComputeInvariantMargins(exact, sum, MaxFlavor(domain));
  ASSERT_OK(report);
  EXPECT_EQ(report->statistic_label, "sum");
  EXPECT_THAT(report->cross_universe, SizeIs(6));
  for (const CrossUniverseMargin& m : report->cross_universe) {
    EXPECT_TRUE(m.min_divergence.is_infinite()) << m.from_universe << m.to_universe;
  }
  for (const auto& [id, tightest] : report->within_universe_tightest) {
    EXPECT_TRUE(tightest.is_zero()) << id;
  }
}

TEST(InvariantMarginTest, ConstantMechanismHasZeroMargins) {
  DatasetDomain domain = Square();
  Mechanism constant = *GeometricCount(
      domain, [](const Dataset&) { return 0; }, Rational(1, 2), 0, 1);
  auto report = ComputeInvariantMargins(constant, SumStatistic(domain),
                                        MaxFlavor(domain));
  ASSERT_OK(report);
  for (const CrossUniverseMargin& m : report->cross_universe) {
    EXPECT_TRUE(m.min_divergence.is_zero());
  }
}

TEST(InvariantMarginTest, ExactTimesRandomizedResponse) {
  // Release sum exactly together with RR on the first record.
  DatasetDomain domain = Square();
  std::vector<Distribution> rows;
  for (const Dataset& x : domain.datasets()) {
    rows.push_back(x.values[0] == 0
                       ? *Distribution::Create({Rational(3, 4), Rational(1, 4)})
                       : *Distribution::Create({Rational(1, 4), Rational(3, 4)}));
  }
  Mechanism rr = *Mechanism::Create({"0", "1"}, rows);
  Mechanism exact = *ExactRelease(domain, [](const Dataset& x) {
    return std::to_string(SumOf(x));
  });
  auto report = ComputeInvariantMargins(*Product(exact, rr), SumStatistic(domain),
                                        MaxFlavor(domain));
  ASSERT_OK(report);
  for (const CrossUniverseMargin& m : report->cross_universe) {
    EXPECT_TRUE(m.min_divergence.is_infinite());
  }
  // Only sum=1 has two members: (0,1) and (1,0), at Hamming distance 2.
  ASSERT_THAT(report->within_universe_tightest, SizeIs(3));
  EXPECT_EQ(report->within_universe_tightest[1].second,
            ExtendedReal::Log(3).Divide(2));
}

TEST(InvariantPropertyTest, PartitionCorrectness) {
  Generator gen(31);
  for (int i = 0; i < 100; ++i) {
    DatasetDomain domain =
        *MakeDomain({"0", "1", "2"}, gen.Uniform(1, 3),
                    gen.Bernoulli(0.5) ? DomainMode::kFixedSize : DomainMode::kUpToSize);
    const int64_t levels = gen.Uniform(1, 5);
    InvariantStatistic s{"s", {}};
    for (DatasetId x = 0; x < domain.size(); ++x) {
      s.values.push_back(std::to_string(gen.Uniform(0, levels - 1)));
    }
    auto multiverse = PartitionByInvariant(domain, s);
    ASSERT_OK(multiverse);
    std::set<DatasetId> seen;
    for (const DataUniverse& u : multiverse->universes) {
      EXPECT_FALSE(u.member_ids.empty());
      for (DatasetId x : u.member_ids) {
        EXPECT_TRUE(seen.insert(x).second) << "dataset " << x << " twice";
        EXPECT_EQ(u.id, "s=" + s.values[x]);
      }
    }
    EXPECT_EQ(static_cast<int64_t>(seen.size()), domain.size());
  }
}

TEST(InvariantPropertyTest, RefinementNeverLoosensTheBound) {
  Generator gen(32);
  for (int i = 0; i < 100; ++i) {
    const int64_t n = gen.Uniform(2, 6);
    DatasetDomain domain = testing::LineDomain(n);
    Mechanism m = gen.RandomMechanism(n, gen.Uniform(1, 4), 12);
    InvariantStatistic coarse{"c", {}};
    InvariantStatistic fine{"f", {}};
    for (DatasetId x = 0; x < n; ++x) {
      const int64_t c = gen.Uniform(0, 1);
      coarse.values.push_back(std::to_string(c));
      fine.values.push_back(std::to_string(c) + "." +
                            std::to_string(gen.Uniform(0, 1)));
    }
    DpFlavor flavor = MaxFlavor(domain);
    auto coarse_report = ComputeInvariantMargins(m, coarse, flavor);
    auto fine_report = ComputeInvariantMargins(m, fine, flavor);
    ASSERT_OK(coarse_report);
    ASSERT_OK(fine_report);
    std::map<std::string, ExtendedReal> coarse_bound;
    for (const auto& [id, e] : coarse_report->within_universe_tightest) {
      coarse_bound[id] = e;
    }
    for (const auto& [id, e] : fine_report->within_universe_tightest) {
      // "f=c.k" refines "c=c".
      const std::string parent = "c=" + id.substr(2, 1);
      EXPECT_TRUE(ProvablyAtMost(e, coarse_bound.at(parent)))
          << id << " " << e << " vs " << coarse_bound.at(parent);
    }
  }
}

}  // namespace
}  // namespace dpspec
