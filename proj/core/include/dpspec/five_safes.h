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

#ifndef DPSPEC_FIVE_SAFES_H_
#define DPSPEC_FIVE_SAFES_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpspec/verifier.h"

namespace dpspec {

// The two information flows a dissemination regime governs.
enum class Flow { kDataToResearcher, kOutputsToPublic };

enum class Dimension { kPeople, kProjects, kSettings, kData, kOutputs };

inline constexpr std::array<Dimension, 5> kAllDimensions = {
    Dimension::kPeople, Dimension::kProjects, Dimension::kSettings,
    Dimension::kData, Dimension::kOutputs};

// Bands on the [0, 1] safety scale: none [0, .25), low [.25, .5),
// medium [.5, .75), high [.75, 1].
enum class SafetyLabel { kNone, kLow, kMedium, kHigh };

std::string FlowName(Flow flow);
std::string DimensionName(Dimension dimension);
std::string SafetyLabelName(SafetyLabel label);
absl::StatusOr<Flow> ParseFlow(absl::string_view name);
absl::StatusOr<Dimension> ParseDimension(absl::string_view name);
absl::StatusOr<SafetyLabel> ParseSafetyLabel(absl::string_view name);

// The band containing `level`, which must lie in [0, 1].
SafetyLabel LabelForLevel(double level);

struct SafetyAssessment {
  double level = 0;
  SafetyLabel label = SafetyLabel::kNone;
  std::string rationale;

  friend bool operator==(const SafetyAssessment&,
                         const SafetyAssessment&) = default;
};

// Fixed caveats carried by every piece of differential-privacy evidence.
inline constexpr char kNatureOfDataCaveat[] =
    "Differential privacy is silent on the safety of certain aspects of the "
    "outputs and the data.";
inline constexpr char kPeopleProjectsSettingsCaveat[] =
    "Differential privacy does not purport an assessment of safety for "
    "people, projects, or settings.";

// A verification result attached to the data and outputs dimensions.
struct DpEvidence {
  std::vector<Dimension> targets;
  bool satisfied = false;
  std::string fingerprint;
  std::vector<UniverseBound> epsilons;
  std::optional<Witness> witness;
  std::vector<std::string> caveats;
};

// A dissemination regime scored on the five safety dimensions. Levels are
// ordinal and advisory; no aggregate score is ever derived from them.
class SafesRegime {
 public:
  // Validates that every label matches its level's band and that evidence
  // only targets the data and outputs dimensions.
  static absl::StatusOr<SafesRegime> Create(
      std::string name, Flow flow, std::array<SafetyAssessment, 5> dimensions,
      std::vector<std::string> mandates = {},
      std::vector<DpEvidence> evidence = {});

  const std::string& name() const { return name_; }
  Flow flow() const { return flow_; }
  const SafetyAssessment& dimension(Dimension d) const {
    return dimensions_[static_cast<size_t>(d)];
  }
  const std::array<SafetyAssessment, 5>& dimensions() const {
    return dimensions_;
  }
  // Transmission principles declared for the regime beyond the five safes,
  // such as a legal mandate to publish.
  const std::vector<std::string>& mandates() const { return mandates_; }
  const std::vector<DpEvidence>& dp_evidence() const { return evidence_; }

 private:
  friend SafesRegime AttachDp(const SafesRegime&, const VerificationResult&,
                              const std::string&);

  SafesRegime() = default;

  std::string name_;
  Flow flow_ = Flow::kDataToResearcher;
  std::array<SafetyAssessment, 5> dimensions_;
  std::vector<std::string> mandates_;
  std::vector<DpEvidence> evidence_;
};

enum class PresetKind {
  kOpenData,
  kPhysicalEnclave,
  kVirtualEnclave,
  kSyntheticWithValidation,
};

std::string PresetKindName(PresetKind kind);
absl::StatusOr<PresetKind> ParsePresetKind(absl::string_view name);

// Reference regimes. Synthetic data with a validation server yields two
// regimes, researcher access first and public release second; every other
// preset yields one.
std::vector<SafesRegime> Preset(PresetKind kind);

struct CiComponent {
  std::string description;
  std::vector<Dimension> components;
};

struct TransmissionPrinciple {
  // "projects", "settings" or "mandate".
  std::string source;
  std::string text;
};

// The regime read as contextual-integrity norm parameters.
struct CiNormAssignment {
  std::string sender;
  std::string recipient;
  CiComponent subject;
  CiComponent information_type;
  bool information_type_determines_outputs = true;
  std::vector<TransmissionPrinciple> transmission_principles;
  // Transmission-principle content the five dimensions do not capture.
  std::string unmapped_remainder;
};

inline constexpr char kCiSender[] = "statistical agency / NSO / data custodian";

CiNormAssignment MapToCi(const SafesRegime& regime);

// Appends `result` as evidence on data and outputs. People, projects and
// settings are left untouched.
SafesRegime AttachDp(const SafesRegime& regime,
                     const VerificationResult& result,
                     const std::string& fingerprint);

struct PresetColumn {
  std::string preset;
  std::array<SafetyLabel, 5> labels;
};

struct SafesReport {
  SafesRegime regime;
  CiNormAssignment ci;
  // Open data, physical enclave and the flow-matching half of synthetic data
  // with validation, for side-by-side reading.
  std::vector<PresetColumn> comparison;
  // Both fixed caveats when the regime carries evidence, otherwise empty.
  std::vector<std::string> caveats;
};

SafesReport Assess(const SafesRegime& regime);

std::string RenderText(const SafesReport& report);

}  // namespace dpspec

#endif  // DPSPEC_FIVE_SAFES_H_
