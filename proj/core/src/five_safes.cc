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

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace dpspec {
namespace {

// Representative level for each band.
constexpr double kNone = 0.0;
constexpr double kLow = 0.375;
constexpr double kMedium = 0.625;
constexpr double kHigh = 0.875;

SafetyAssessment Level(double level, std::string rationale) {
  return {level, LabelForLevel(level), std::move(rationale)};
}

SafesRegime MakePreset(std::string name, Flow flow,
                       std::array<SafetyAssessment, 5> dimensions) {
  // Preset tables are valid by construction.
  return *SafesRegime::Create(std::move(name), flow, std::move(dimensions));
}

SafesRegime OpenData() {
  return MakePreset(
      "open-data", Flow::kOutputsToPublic,
      {Level(kNone, "Unrestricted access; recipients are not identified."),
       Level(kNone, "No review of how published files are used."),
       Level(kNone, "No control over where published files are used."),
       Level(kHigh,
             "Files receive confidentiality treatment before publication."),
       Level(kHigh, "Each published file is checked as a release.")});
}

SafesRegime Enclave(std::string name, SafetyAssessment settings) {
  return MakePreset(
      std::move(name), Flow::kDataToResearcher,
      {Level(kHigh, "Access requires an approved researcher account."),
       Level(kHigh, "Access requires an approved project."),
       std::move(settings),
       Level(kLow, "Record-level data with little treatment are visible."),
       Level(kHigh, "Results are checked before they leave the environment.")});
}

std::vector<SafesRegime> SyntheticWithValidation() {
  SafesRegime researcher = MakePreset(
      "synthetic-with-validation/researcher-access", Flow::kDataToResearcher,
      {Level(kMedium,
             "Synthetic file access needs approval; checks are lighter than "
             "for an enclave."),
       Level(kHigh,
             "Each submitted program is checked before it runs on "
             "confidential data."),
       Level(0.75, "Remote server under custodian control."),
       Level(kMedium,
             "Users hold the synthetic file; confidential records stay with "
             "the custodian."),
       Level(kHigh,
             "Results computed on confidential data are checked before "
             "return.")});
  SafesRegime public_release = MakePreset(
      "synthetic-with-validation/public-release", Flow::kOutputsToPublic,
      {Level(kNone, "Anyone can read published results."),
       Level(kNone, "No review of how published results are used."),
       Level(kNone, "No control over where published results are used."),
       Level(kHigh, "Only results are published; no record-level file."),
       Level(kHigh, "Published results pass disclosure checks.")});
  return {std::move(researcher), std::move(public_release)};
}

std::string Recipient(Flow flow) {
  return flow == Flow::kDataToResearcher ? "researchers" : "general public";
}

const SafesRegime& ForFlow(const std::vector<SafesRegime>& regimes, Flow flow) {
  for (const SafesRegime& r : regimes) {
    if (r.flow() == flow) return r;
  }
  return regimes.front();
}

PresetColumn Column(std::string name, const SafesRegime& regime) {
  PresetColumn column{std::move(name), {}};
  for (Dimension d : kAllDimensions) {
    column.labels[static_cast<size_t>(d)] = regime.dimension(d).label;
  }
  return column;
}

void TrimTrailingSpaces(std::string& out) {
  out.erase(out.find_last_not_of(' ') + 1);
}

}  // namespace

std::string FlowName(Flow flow) {
  return flow == Flow::kDataToResearcher ? "data-to-researcher"
                                         : "outputs-to-public";
}

std::string DimensionName(Dimension dimension) {
  switch (dimension) {
    case Dimension::kPeople:
      return "people";
    case Dimension::kProjects:
      return "projects";
    case Dimension::kSettings:
      return "settings";
    case Dimension::kData:
      return "data";
    case Dimension::kOutputs:
      return "outputs";
  }
  return "unknown";
}

std::string SafetyLabelName(SafetyLabel label) {
  switch (label) {
    case SafetyLabel::kNone:
      return "none";
    case SafetyLabel::kLow:
      return "low";
    case SafetyLabel::kMedium:
      return "medium";
    case SafetyLabel::kHigh:
      return "high";
  }
  return "unknown";
}

absl::StatusOr<Flow> ParseFlow(absl::string_view name) {
  if (name == "data-to-researcher") return Flow::kDataToResearcher;
  if (name == "outputs-to-public") return Flow::kOutputsToPublic;
  return absl::InvalidArgumentError(absl::StrCat("unknown flow \"", name, "\""));
}

absl::StatusOr<Dimension> ParseDimension(absl::string_view name) {
  for (Dimension d : kAllDimensions) {
    if (DimensionName(d) == name) return d;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown dimension \"", name, "\""));
}

absl::StatusOr<SafetyLabel> ParseSafetyLabel(absl::string_view name) {
  for (SafetyLabel l : {SafetyLabel::kNone, SafetyLabel::kLow,
                        SafetyLabel::kMedium, SafetyLabel::kHigh}) {
    if (SafetyLabelName(l) == name) return l;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown safety label \"", name, "\""));
}

SafetyLabel LabelForLevel(double level) {
  if (level < 0.25) return SafetyLabel::kNone;
  if (level < 0.5) return SafetyLabel::kLow;
  if (level < 0.75) return SafetyLabel::kMedium;
  return SafetyLabel::kHigh;
}

absl::StatusOr<SafesRegime> SafesRegime::Create(
    std::string name, Flow flow, std::array<SafetyAssessment, 5> dimensions,
    std::vector<std::string> mandates, std::vector<DpEvidence> evidence) {
  for (Dimension d : kAllDimensions) {
    const SafetyAssessment& a = dimensions[static_cast<size_t>(d)];
    if (!(a.level >= 0 && a.level <= 1)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "level for ", DimensionName(d), " must lie in [0, 1]"));
    }
    if (a.label != LabelForLevel(a.level)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "label \"%s\" for %s does not match level %g (band \"%s\")",
          SafetyLabelName(a.label), DimensionName(d), a.level,
          SafetyLabelName(LabelForLevel(a.level))));
    }
  }
  for (const DpEvidence& e : evidence) {
    for (Dimension target : e.targets) {
      if (target != Dimension::kData && target != Dimension::kOutputs) {
        return absl::InvalidArgumentError(absl::StrCat(
            "differential privacy evidence cannot target ",
            DimensionName(target)));
      }
    }
  }
  SafesRegime regime;
  regime.name_ = std::move(name);
  regime.flow_ = flow;
  regime.dimensions_ = std::move(dimensions);
  regime.mandates_ = std::move(mandates);
  regime.evidence_ = std::move(evidence);
  return regime;
}

std::string PresetKindName(PresetKind kind) {
  switch (kind) {
    case PresetKind::kOpenData:
      return "open-data";
    case PresetKind::kPhysicalEnclave:
      return "physical-enclave";
    case PresetKind::kVirtualEnclave:
      return "virtual-enclave";
    case PresetKind::kSyntheticWithValidation:
      return "synthetic-with-validation";
  }
  return "unknown";
}

absl::StatusOr<PresetKind> ParsePresetKind(absl::string_view name) {
  for (PresetKind k :
       {PresetKind::kOpenData, PresetKind::kPhysicalEnclave,
        PresetKind::kVirtualEnclave, PresetKind::kSyntheticWithValidation}) {
    if (PresetKindName(k) == name) return k;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown preset \"", name, "\""));
}

std::vector<SafesRegime> Preset(PresetKind kind) {
  switch (kind) {
    case PresetKind::kOpenData:
      return {OpenData()};
    case PresetKind::kPhysicalEnclave:
      return {Enclave("physical-enclave",
                      Level(kHigh,
                            "Custodian-controlled facility; use is on "
                            "site."))};
    case PresetKind::kVirtualEnclave:
      return {Enclave("virtual-enclave",
                      Level(0.75,
                            "Custodian-controlled remote server; the user's "
                            "location is not controlled."))};
    case PresetKind::kSyntheticWithValidation:
      return SyntheticWithValidation();
  }
  return {};
}

CiNormAssignment MapToCi(const SafesRegime& regime) {
  CiNormAssignment ci;
  ci.sender = kCiSender;
  ci.recipient = Recipient(regime.flow());
  ci.subject = {
      "the entities the records describe",
      {Dimension::kData}};
  ci.information_type = {
      "the kinds of attributes the records hold",
      {Dimension::kData, Dimension::kOutputs}};
  ci.information_type_determines_outputs = true;
  ci.transmission_principles.push_back(
      {"projects", regime.dimension(Dimension::kProjects).rationale});
  ci.transmission_principles.push_back(
      {"settings", regime.dimension(Dimension::kSettings).rationale});
  for (const std::string& mandate : regime.mandates()) {
    ci.transmission_principles.push_back({"mandate", mandate});
  }
  ci.unmapped_remainder = regime.mandates().empty()
                              ? "none declared"
                              : absl::StrJoin(regime.mandates(), "; ");
  return ci;
}

SafesRegime AttachDp(const SafesRegime& regime,
                     const VerificationResult& result,
                     const std::string& fingerprint) {
  SafesRegime next = regime;
  DpEvidence evidence;
  evidence.targets = {Dimension::kData, Dimension::kOutputs};
  evidence.satisfied = result.satisfied;
  evidence.fingerprint = fingerprint;
  evidence.epsilons = result.per_universe_tightest;
  evidence.witness = result.witness;
  evidence.caveats = {kNatureOfDataCaveat};
  next.evidence_.push_back(std::move(evidence));
  return next;
}

SafesReport Assess(const SafesRegime& regime) {
  SafesReport report{regime, MapToCi(regime), {}, {}};
  report.comparison.push_back(
      Column("open-data", Preset(PresetKind::kOpenData).front()));
  report.comparison.push_back(
      Column("physical-enclave", Preset(PresetKind::kPhysicalEnclave).front()));
  report.comparison.push_back(Column(
      "synthetic-with-validation",
      ForFlow(Preset(PresetKind::kSyntheticWithValidation), regime.flow())));
  if (!regime.dp_evidence().empty()) {
    report.caveats = {kNatureOfDataCaveat, kPeopleProjectsSettingsCaveat};
  }
  return report;
}

std::string RenderText(const SafesReport& report) {
  const SafesRegime& regime = report.regime;
  std::string out = absl::StrCat("Regime: ", regime.name(), "\nFlow: ",
                                 FlowName(regime.flow()), "\n\nSafety levels\n");
  for (Dimension d : kAllDimensions) {
    const SafetyAssessment& a = regime.dimension(d);
    absl::StrAppendFormat(&out, "  %-9s %-7s %.3f  %s\n", DimensionName(d),
                          SafetyLabelName(a.label), a.level, a.rationale);
  }

  const CiNormAssignment& ci = report.ci;
  absl::StrAppend(&out, "\nContextual integrity parameters\n",
                  "  sender:            ", ci.sender, "\n",
                  "  recipient:         ", ci.recipient, "\n",
                  "  subject:           ", ci.subject.description,
                  " [component of data]\n",
                  "  information type:  ", ci.information_type.description,
                  " [component of data; determinant of outputs]\n",
                  "  transmission principles:\n");
  for (const TransmissionPrinciple& p : ci.transmission_principles) {
    absl::StrAppend(&out, "    - (", p.source, ") ", p.text, "\n");
  }
  absl::StrAppend(&out, "  beyond the five safes: ", ci.unmapped_remainder,
                  "\n");

  absl::StrAppend(&out, "\nComparison with reference regimes\n");
  absl::StrAppendFormat(&out, "  %-9s %-8s", "", "this");
  for (const PresetColumn& c : report.comparison) {
    absl::StrAppendFormat(&out, " %-26s", c.preset);
  }
  TrimTrailingSpaces(out);
  out += "\n";
  for (Dimension d : kAllDimensions) {
    absl::StrAppendFormat(&out, "  %-9s %-8s", DimensionName(d),
                          SafetyLabelName(regime.dimension(d).label));
    for (const PresetColumn& c : report.comparison) {
      absl::StrAppendFormat(
          &out, " %-26s",
          SafetyLabelName(c.labels[static_cast<size_t>(d)]));
    }
    TrimTrailingSpaces(out);
    out += "\n";
  }

  if (!regime.dp_evidence().empty()) {
    absl::StrAppend(&out, "\nDifferential privacy evidence (data, outputs)\n");
    for (const DpEvidence& e : regime.dp_evidence()) {
      absl::StrAppend(&out, "  - ", e.satisfied ? "satisfied" : "not satisfied",
                      " [", e.fingerprint, "]\n");
      for (const UniverseBound& b : e.epsilons) {
        absl::StrAppend(&out, "      ", b.universe_id, ": tightest epsilon ",
                        b.tightest.ToString(), " ≈ ",
                        b.tightest.ToDecimalString(), "\n");
      }
      if (e.witness.has_value()) {
        absl::StrAppend(&out, "      witness: universe ", e.witness->universe_id,
                        ", x=", e.witness->x, ", x'=", e.witness->x_prime,
                        ", ", e.witness->lhs.ToString(), " > ",
                        e.witness->rhs.ToString(), "\n");
      }
    }
    absl::StrAppend(&out, "\nCaveats\n");
    for (const std::string& caveat : report.caveats) {
      absl::StrAppend(&out, "  * ", caveat, "\n");
    }
  }
  absl::StrAppend(&out,
                  "\nLevels are ordinal and advisory; no aggregate score is "
                  "computed.\n");
  return out;
}

}  // namespace dpspec
