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

#include "dpspec/five_safes.h"

#include "dpspec/mechanisms.h"
#include "dpspec/serialization.h"
#include "dpspec/verifier.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/generators.h"
#include "testing/golden.h"
#include "testing/status_matchers.h"

namespace dpspec {
namespace {

using ::dpspec::testing::ExpectMatchesGolden;
using ::dpspec::testing::Generator;
using ::dpspec::testing::StatusIs;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::SizeIs;

SafetyLabel LabelOf(const SafesRegime& regime, Dimension d) {
  return regime.dimension(d).label;
}

DpSpecification RrSpec(const ExtendedReal& epsilon) {
  DatasetDomain domain = *MakeDomain({"0", "1"}, 1, DomainMode::kFixedSize);
  DpFlavor flavor{domain, Multiverse::Full(domain),
                  InputPremetric::BoundedHamming(), OutputDivergence::Max()};
  return {flavor, UniformBudget(flavor.multiverse, epsilon)};
}

VerificationResult VerifyRr(const ExtendedReal& epsilon) {
  DpSpecification spec = RrSpec(epsilon);
  return *Satisfies(*RandomizedResponse(spec.domain(), Rational(3, 4)), spec);
}

TEST(PresetTest, OpenData) {
  std::vector<SafesRegime> regimes = Preset(PresetKind::kOpenData);
  ASSERT_THAT(regimes, SizeIs(1));
  const SafesRegime& r = regimes[0];
  EXPECT_EQ(r.flow(), Flow::kOutputsToPublic);
  EXPECT_EQ(LabelOf(r, Dimension::kPeople), SafetyLabel::kNone);
  EXPECT_EQ(LabelOf(r, Dimension::kProjects), SafetyLabel::kNone);
  EXPECT_EQ(LabelOf(r, Dimension::kSettings), SafetyLabel::kNone);
  EXPECT_EQ(LabelOf(r, Dimension::kData), SafetyLabel::kHigh);
  EXPECT_EQ(LabelOf(r, Dimension::kOutputs), SafetyLabel::kHigh);
  EXPECT_EQ(MapToCi(r).recipient, "general public");
}

TEST(PresetTest, Enclaves) {
  for (PresetKind kind : {PresetKind::kPhysicalEnclave, PresetKind::kVirtualEnclave}) {
    std::vector<SafesRegime> regimes = Preset(kind);
    ASSERT_THAT(regimes, SizeIs(1));
    const SafesRegime& r = regimes[0];
    EXPECT_EQ(r.flow(), Flow::kDataToResearcher);
    EXPECT_EQ(LabelOf(r, Dimension::kPeople), SafetyLabel::kHigh);
    EXPECT_EQ(LabelOf(r, Dimension::kProjects), SafetyLabel::kHigh);
    EXPECT_EQ(LabelOf(r, Dimension::kSettings), SafetyLabel::kHigh);
    EXPECT_EQ(LabelOf(r, Dimension::kData), SafetyLabel::kLow);
    EXPECT_EQ(LabelOf(r, Dimension::kOutputs), SafetyLabel::kHigh);
    EXPECT_EQ(MapToCi(r).recipient, "researchers");
  }
  // The virtual setting sits lower on the scale than the physical one.
  EXPECT_LT(Preset(PresetKind::kVirtualEnclave)[0].dimension(Dimension::kSettings).level,
            Preset(PresetKind::kPhysicalEnclave)[0].dimension(Dimension::kSettings).level);
}

TEST(PresetTest, SyntheticWithValidationHasOneRegimePerFlow) {
  std::vector<SafesRegime> regimes = Preset(PresetKind::kSyntheticWithValidation);
  ASSERT_THAT(regimes, SizeIs(2));
  EXPECT_EQ(regimes[0].flow(), Flow::kDataToResearcher);
  EXPECT_EQ(regimes[1].flow(), Flow::kOutputsToPublic);
  EXPECT_EQ(MapToCi(regimes[0]).recipient, "researchers");
  EXPECT_EQ(MapToCi(regimes[1]).recipient, "general public");
  EXPECT_EQ(LabelOf(regimes[1], Dimension::kOutputs), SafetyLabel::kHigh);
}

TEST(PresetTest, EveryLevelCarriesARationale) {
  for (PresetKind kind :
       {PresetKind::kOpenData, PresetKind::kPhysicalEnclave,
        PresetKind::kVirtualEnclave, PresetKind::kSyntheticWithValidation}) {
    for (const SafesRegime& r : Preset(kind)) {
      for (Dimension d : kAllDimensions) {
        EXPECT_FALSE(r.dimension(d).rationale.empty())
            << r.name() << " " << DimensionName(d);
      }
    }
  }
}

TEST(PresetTest, Golden) {
  for (PresetKind kind :
       {PresetKind::kOpenData, PresetKind::kPhysicalEnclave,
        PresetKind::kVirtualEnclave, PresetKind::kSyntheticWithValidation}) {
    Json doc = Json::array();
    for (const SafesRegime& r : Preset(kind)) doc.push_back(RegimeToJson(r));
    ExpectMatchesGolden("preset-" + PresetKindName(kind) + ".json",
                        doc.dump(2) + "\n");
  }
}

TEST(PresetTest, NamesRoundTrip) {
  for (PresetKind kind :
       {PresetKind::kOpenData, PresetKind::kPhysicalEnclave,
        PresetKind::kVirtualEnclave, PresetKind::kSyntheticWithValidation}) {
    EXPECT_EQ(*ParsePresetKind(PresetKindName(kind)), kind);
  }
  EXPECT_FALSE(ParsePresetKind("cloud").ok());
}

TEST(SafesRegimeTest, RejectsInconsistentLabels) {
  std::array<SafetyAssessment, 5> dims;
  for (SafetyAssessment& a : dims) a = {0.9, SafetyLabel::kHigh, "r"};
  dims[2] = {0.3, SafetyLabel::kHigh, "r"};
  EXPECT_THAT(SafesRegime::Create("r", Flow::kOutputsToPublic, dims),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       HasSubstr("label \"high\" for settings")));
  dims[2] = {1.5, SafetyLabel::kHigh, "r"};
  EXPECT_FALSE(SafesRegime::Create("r", Flow::kOutputsToPublic, dims).ok());
}

TEST(SafesRegimeTest, EvidenceTargetsOnlyDataAndOutputs) {
  std::array<SafetyAssessment, 5> dims;
  for (SafetyAssessment& a : dims) a = {0, SafetyLabel::kNone, "r"};
  DpEvidence evidence;
  evidence.targets = {Dimension::kData, Dimension::kSettings};
  EXPECT_THAT(SafesRegime::Create("r", Flow::kOutputsToPublic, dims, {}, {evidence}),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("settings")));
}

TEST(SafesRegimeTest, BandEdges) {
  EXPECT_EQ(LabelForLevel(0), SafetyLabel::kNone);
  EXPECT_EQ(LabelForLevel(0.2499), SafetyLabel::kNone);
  EXPECT_EQ(LabelForLevel(0.25), SafetyLabel::kLow);
  EXPECT_EQ(LabelForLevel(0.5), SafetyLabel::kMedium);
  EXPECT_EQ(LabelForLevel(0.75), SafetyLabel::kHigh);
  EXPECT_EQ(LabelForLevel(1), SafetyLabel::kHigh);
}

TEST(MapToCiTest, Fields) {
  CiNormAssignment ci = MapToCi(Preset(PresetKind::kPhysicalEnclave)[0]);
  EXPECT_EQ(ci.sender, "statistical agency / NSO / data custodian");
  EXPECT_THAT(ci.subject.components, ElementsAre(Dimension::kData));
  EXPECT_THAT(ci.information_type.components,
              ElementsAre(Dimension::kData, Dimension::kOutputs));
  EXPECT_TRUE(ci.information_type_determines_outputs);
  ASSERT_THAT(ci.transmission_principles, SizeIs(2));
  EXPECT_EQ(ci.transmission_principles[0].source, "projects");
  EXPECT_EQ(ci.transmission_principles[1].source, "settings");
}

TEST(MapToCiTest, MandatesGoBeyondTheFiveSafes) {
  const SafesRegime base = Preset(PresetKind::kOpenData)[0];
  SafesRegime regime = *SafesRegime::Create(base.name(), base.flow(),
                                            base.dimensions(),
                                            {"constitutional apportionment"});
  CiNormAssignment ci = MapToCi(regime);
  EXPECT_THAT(ci.unmapped_remainder, HasSubstr("constitutional apportionment"));
  ASSERT_THAT(ci.transmission_principles, SizeIs(3));
  EXPECT_EQ(ci.transmission_principles[2].source, "mandate");
}

TEST(MapToCiTest, RecipientIsDeterminedByFlow) {
  Generator gen(51);
  for (int i = 0; i < 200; ++i) {
    SafesRegime r = gen.RandomRegime();
    EXPECT_EQ(MapToCi(r).recipient, r.flow() == Flow::kDataToResearcher
                                        ? "researchers"
                                        : "general public");
  }
  for (PresetKind kind :
       {PresetKind::kOpenData, PresetKind::kPhysicalEnclave,
        PresetKind::kVirtualEnclave, PresetKind::kSyntheticWithValidation}) {
    for (const SafesRegime& base : Preset(kind)) {
      for (Flow flow : {Flow::kDataToResearcher, Flow::kOutputsToPublic}) {
        SafesRegime r = *SafesRegime::Create(base.name(), flow, base.dimensions());
        EXPECT_EQ(MapToCi(r).recipient, flow == Flow::kDataToResearcher
                                            ? "researchers"
                                            : "general public");
      }
    }
  }
}

TEST(AttachDpTest, AddsEvidenceWithoutTouchingOtherDimensions) {
  const SafesRegime base = Preset(PresetKind::kOpenData)[0];
  SafesRegime attached = AttachDp(base, VerifyRr(ExtendedReal::Log(3)), "fp");
  EXPECT_EQ(attached.dimensions(), base.dimensions());
  ASSERT_THAT(attached.dp_evidence(), SizeIs(1));
  const DpEvidence& e = attached.dp_evidence()[0];
  EXPECT_THAT(e.targets, ElementsAre(Dimension::kData, Dimension::kOutputs));
  EXPECT_TRUE(e.satisfied);
  EXPECT_EQ(e.fingerprint, "fp");
  ASSERT_THAT(e.epsilons, SizeIs(1));
  EXPECT_EQ(e.epsilons[0].tightest, ExtendedReal::Log(3));
  EXPECT_THAT(e.caveats, ElementsAre(kNatureOfDataCaveat));
  EXPECT_TRUE(base.dp_evidence().empty());
}

TEST(AttachDpTest, FailedVerificationKeepsTheWitness) {
  const SafesRegime base = Preset(PresetKind::kPhysicalEnclave)[0];
  SafesRegime attached =
      AttachDp(base, VerifyRr(ExtendedReal::FromRational(Rational(1))), "fp");
  EXPECT_EQ(attached.dimensions(), base.dimensions());
  const DpEvidence& e = attached.dp_evidence()[0];
  EXPECT_FALSE(e.satisfied);
  ASSERT_TRUE(e.witness.has_value());
  EXPECT_EQ(e.witness->lhs, ExtendedReal::Log(3));
  EXPECT_THAT(RenderText(Assess(attached)), HasSubstr("not satisfied"));
}

TEST(AttachDpTest, TwiceKeepsOrder) {
  const SafesRegime base = Preset(PresetKind::kOpenData)[0];
  SafesRegime attached = AttachDp(
      AttachDp(base, VerifyRr(ExtendedReal::Log(3)), "first"),
      VerifyRr(ExtendedReal::FromRational(Rational(1))), "second");
  ASSERT_THAT(attached.dp_evidence(), SizeIs(2));
  EXPECT_EQ(attached.dp_evidence()[0].fingerprint, "first");
  EXPECT_EQ(attached.dp_evidence()[1].fingerprint, "second");
}

TEST(AttachDpPropertyTest, PeopleProjectsSettingsAreUnchanged) {
  Generator gen(52);
  for (int i = 0; i < 100; ++i) {
    SafesRegime r = gen.RandomRegime();
    SafesRegime attached = AttachDp(
        r, VerifyRr(gen.Bernoulli(0.5) ? ExtendedReal::Log(3) : ExtendedReal()),
        "fp");
    for (Dimension d : kAllDimensions) {
      EXPECT_EQ(attached.dimension(d), r.dimension(d));
      EXPECT_EQ(attached.dimension(d).label,
                LabelForLevel(attached.dimension(d).level));
    }
    EXPECT_EQ(attached.name(), r.name());
    EXPECT_EQ(attached.flow(), r.flow());
    EXPECT_EQ(attached.mandates(), r.mandates());
  }
}

TEST(AssessTest, OpenData) {
  SafesReport report = Assess(Preset(PresetKind::kOpenData)[0]);
  EXPECT_EQ(report.ci.recipient, "general public");
  EXPECT_TRUE(report.caveats.empty());
  ASSERT_THAT(report.comparison, SizeIs(3));
  EXPECT_EQ(report.comparison[0].preset, "open-data");
  const std::string text = RenderText(report);
  EXPECT_THAT(text, HasSubstr("  projects  none "));
  EXPECT_THAT(text, HasSubstr("  settings  none "));
  EXPECT_THAT(text, HasSubstr("no aggregate score"));
  ExpectMatchesGolden("assess-open-data.txt", text);
}

TEST(AssessTest, EnclaveSettingsHigh) {
  const std::string text = RenderText(Assess(Preset(PresetKind::kPhysicalEnclave)[0]));
  EXPECT_THAT(text, HasSubstr("  settings  high "));
  EXPECT_THAT(text, HasSubstr("recipient:         researchers"));
}

TEST(AssessTest, EvidenceQuotesBothCaveats) {
  SafesRegime attached = AttachDp(Preset(PresetKind::kOpenData)[0],
                                  VerifyRr(ExtendedReal::Log(3)), "fp");
  SafesReport report = Assess(attached);
  EXPECT_THAT(report.caveats,
              ElementsAre(kNatureOfDataCaveat, kPeopleProjectsSettingsCaveat));
  const std::string text = RenderText(report);
  EXPECT_THAT(text, HasSubstr("Differential privacy is silent on the safety of "
                              "certain aspects of the outputs and the data."));
  EXPECT_THAT(text, HasSubstr("Differential privacy does not purport an "
                              "assessment of safety for people, projects, or "
                              "settings."));
  ExpectMatchesGolden("assess-open-data-with-dp.txt", text);
}

TEST(AssessTest, ComparisonFollowsTheFlow) {
  SafesReport researcher = Assess(Preset(PresetKind::kPhysicalEnclave)[0]);
  SafesReport public_release = Assess(Preset(PresetKind::kOpenData)[0]);
  // The synthetic column shows the regime for the same flow.
  EXPECT_EQ(researcher.comparison[2].labels[static_cast<size_t>(Dimension::kPeople)],
            SafetyLabel::kMedium);
  EXPECT_EQ(public_release.comparison[2].labels[static_cast<size_t>(Dimension::kPeople)],
            SafetyLabel::kNone);
}

}  // namespace
}  // namespace dpspec
