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

#include "dpspec/serialization.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace dpspec {
namespace {

absl::Status SchemaError(const std::string& where, absl::string_view message) {
  return absl::InvalidArgumentError(absl::StrCat(
      "schema violation at ", where.empty() ? "/" : where, ": ", message));
}

std::string Child(const std::string& where, absl::string_view key) {
  return absl::StrCat(where, "/", key);
}

std::string Child(const std::string& where, size_t index) {
  return absl::StrCat(where, "/", index);
}

absl::StatusOr<const Json*> Member(const Json& object, const std::string& key,
                                   const std::string& where) {
  if (!object.is_object()) return SchemaError(where, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) {
    return SchemaError(where, absl::StrCat("missing member \"", key, "\""));
  }
  return &*it;
}

absl::StatusOr<std::string> StringFromJson(const Json& j,
                                           const std::string& where) {
  if (!j.is_string()) return SchemaError(where, "expected a string");
  return j.get<std::string>();
}

// Labels may be written as strings or integers.
absl::StatusOr<std::string> LabelFromJson(const Json& j,
                                          const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  return SchemaError(where, "expected a string or integer label");
}

absl::StatusOr<int64_t> IntegerFromJson(const Json& j,
                                        const std::string& where) {
  if (!j.is_number_integer()) return SchemaError(where, "expected an integer");
  return j.get<int64_t>();
}

absl::StatusOr<DatasetId> DatasetIdFromKey(const std::string& key,
                                           const std::string& where) {
  DatasetId id = 0;
  if (!absl::SimpleAtoi(key, &id) || id < 0) {
    return SchemaError(where,
                       absl::StrCat("\"", key, "\" is not a dataset id"));
  }
  return id;
}

absl::StatusOr<DatasetDomain> DomainFromJson(const Json& j,
                                             const std::string& where) {
  auto alphabet_json = Member(j, "alphabet", where);
  if (!alphabet_json.ok()) return alphabet_json.status();
  if (!(*alphabet_json)->is_array()) {
    return SchemaError(Child(where, "alphabet"), "expected an array");
  }
  std::vector<std::string> alphabet;
  for (size_t i = 0; i < (*alphabet_json)->size(); ++i) {
    auto value = LabelFromJson((**alphabet_json)[i],
                               Child(Child(where, "alphabet"), i));
    if (!value.ok()) return value.status();
    alphabet.push_back(*std::move(value));
  }
  auto max_size_json = Member(j, "max_size", where);
  if (!max_size_json.ok()) return max_size_json.status();
  auto max_size = IntegerFromJson(**max_size_json, Child(where, "max_size"));
  if (!max_size.ok()) return max_size.status();
  auto mode_json = Member(j, "mode", where);
  if (!mode_json.ok()) return mode_json.status();
  auto mode_name = StringFromJson(**mode_json, Child(where, "mode"));
  if (!mode_name.ok()) return mode_name.status();
  DomainMode mode;
  if (*mode_name == "fixed-size") {
    mode = DomainMode::kFixedSize;
  } else if (*mode_name == "up-to-size") {
    mode = DomainMode::kUpToSize;
  } else {
    return SchemaError(Child(where, "mode"),
                       "expected \"fixed-size\" or \"up-to-size\"");
  }
  int64_t cap = kDefaultEnumerationCap;
  if (j.contains("enumeration_cap")) {
    auto parsed =
        IntegerFromJson(j["enumeration_cap"], Child(where, "enumeration_cap"));
    if (!parsed.ok()) return parsed.status();
    cap = *parsed;
  }
  if (*max_size < 1 || *max_size > 1'000'000) {
    return SchemaError(Child(where, "max_size"), "must lie in [1, 10^6]");
  }
  auto domain = MakeDomain(std::move(alphabet), static_cast<int>(*max_size),
                           mode, cap);
  if (!domain.ok()) {
    return absl::Status(domain.status().code(),
                        absl::StrCat(where.empty() ? "/" : where, ": ",
                                     domain.status().message()));
  }
  return domain;
}

Json DomainToJson(const DatasetDomain& domain) {
  Json j;
  j["alphabet"] = domain.alphabet();
  j["max_size"] = domain.max_size();
  j["mode"] = DomainModeName(domain.mode());
  return j;
}

absl::StatusOr<Multiverse> MultiverseFromJson(const Json& j,
                                              const DatasetDomain& domain,
                                              const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "full") {
    return Multiverse::Full(domain);
  }
  if (!j.is_array()) {
    return SchemaError(where, "expected \"full\" or an array of universes");
  }
  Multiverse multiverse;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string at = Child(where, i);
    auto id_json = Member(j[i], "id", at);
    if (!id_json.ok()) return id_json.status();
    auto id = LabelFromJson(**id_json, Child(at, "id"));
    if (!id.ok()) return id.status();
    auto members_json = Member(j[i], "members", at);
    if (!members_json.ok()) return members_json.status();
    if (!(*members_json)->is_array()) {
      return SchemaError(Child(at, "members"), "expected an array");
    }
    DataUniverse universe{*std::move(id), {}};
    for (size_t k = 0; k < (*members_json)->size(); ++k) {
      auto member = IntegerFromJson((**members_json)[k],
                                    Child(Child(at, "members"), k));
      if (!member.ok()) return member.status();
      universe.member_ids.push_back(*member);
    }
    multiverse.universes.push_back(std::move(universe));
  }
  return multiverse;
}

absl::StatusOr<InputPremetric> PremetricFromJson(const Json& j,
                                                 const std::string& where) {
  auto kind_json = Member(j, "kind", where);
  if (!kind_json.ok()) return kind_json.status();
  auto kind = StringFromJson(**kind_json, Child(where, "kind"));
  if (!kind.ok()) return kind.status();
  if (*kind == "bounded-hamming") return InputPremetric::BoundedHamming();
  if (*kind == "unbounded-symmetric-difference") {
    return InputPremetric::UnboundedSymmetricDifference();
  }
  if (*kind != "explicit-matrix") {
    return SchemaError(Child(where, "kind"),
                       absl::StrCat("unknown premetric kind \"", *kind, "\""));
  }
  auto matrix_json = Member(j, "matrix", where);
  if (!matrix_json.ok()) return matrix_json.status();
  const std::string at = Child(where, "matrix");
  if (!(*matrix_json)->is_array()) return SchemaError(at, "expected an array");
  std::vector<std::vector<ExtendedReal>> matrix;
  for (size_t i = 0; i < (*matrix_json)->size(); ++i) {
    const Json& row = (**matrix_json)[i];
    if (!row.is_array()) return SchemaError(Child(at, i), "expected an array");
    std::vector<ExtendedReal> entries;
    for (size_t k = 0; k < row.size(); ++k) {
      auto entry = ExtendedRealFromJson(row[k], Child(Child(at, i), k));
      if (!entry.ok()) return entry.status();
      entries.push_back(*std::move(entry));
    }
    matrix.push_back(std::move(entries));
  }
  return InputPremetric::Explicit(std::move(matrix));
}

Json PremetricToJson(const InputPremetric& premetric) {
  Json j;
  j["kind"] = PremetricKindName(premetric.kind);
  if (premetric.kind == PremetricKind::kExplicitMatrix) {
    Json rows = Json::array();
    for (const auto& row : premetric.matrix) {
      Json entries = Json::array();
      for (const ExtendedReal& e : row) entries.push_back(e.ToString());
      rows.push_back(std::move(entries));
    }
    j["matrix"] = std::move(rows);
  }
  return j;
}

absl::StatusOr<OutputDivergence> DivergenceFromJson(const Json& j,
                                                    const std::string& where) {
  auto kind_json = Member(j, "kind", where);
  if (!kind_json.ok()) return kind_json.status();
  auto kind = StringFromJson(**kind_json, Child(where, "kind"));
  if (!kind.ok()) return kind.status();
  const bool has_delta = j.contains("delta");
  const bool has_alpha = j.contains("alpha");
  if (*kind == "max" || *kind == "tv") {
    if (has_delta || has_alpha) {
      return SchemaError(where, absl::StrCat("divergence \"", *kind,
                                             "\" takes no parameters"));
    }
    return *kind == "max" ? OutputDivergence::Max()
                          : OutputDivergence::TotalVariation();
  }
  if (*kind == "smoothed-max") {
    if (!has_delta || has_alpha) {
      return SchemaError(where, "smoothed-max takes exactly \"delta\"");
    }
    auto delta = RationalFromJson(j["delta"], Child(where, "delta"));
    if (!delta.ok()) return delta.status();
    auto divergence = OutputDivergence::SmoothedMax(*delta);
    if (!divergence.ok()) {
      return SchemaError(Child(where, "delta"), divergence.status().message());
    }
    return divergence;
  }
  if (*kind == "renyi") {
    if (!has_alpha || has_delta) {
      return SchemaError(where, "renyi takes exactly \"alpha\"");
    }
    auto alpha = RationalFromJson(j["alpha"], Child(where, "alpha"));
    if (!alpha.ok()) return alpha.status();
    auto divergence = OutputDivergence::Renyi(*alpha);
    if (!divergence.ok()) {
      return SchemaError(Child(where, "alpha"), divergence.status().message());
    }
    return divergence;
  }
  return SchemaError(Child(where, "kind"),
                     absl::StrCat("unknown divergence kind \"", *kind, "\""));
}

Json DivergenceToJson(const OutputDivergence& divergence) {
  Json j;
  j["kind"] = DivergenceKindName(divergence.kind());
  if (divergence.delta().has_value()) {
    j["delta"] = FormatRational(*divergence.delta());
  }
  if (divergence.alpha().has_value()) {
    j["alpha"] = FormatRational(*divergence.alpha());
  }
  return j;
}

Json WitnessToJson(const Witness& w, const DatasetDomain* domain) {
  Json j;
  j["universe"] = w.universe_id;
  j["x"] = w.x;
  j["x_prime"] = w.x_prime;
  if (domain != nullptr) {
    j["x_dataset"] = domain->Render(w.x);
    j["x_prime_dataset"] = domain->Render(w.x_prime);
  }
  j["lhs"] = ExtendedRealToJson(w.lhs);
  j["rhs"] = ExtendedRealToJson(w.rhs);
  return j;
}

absl::StatusOr<ExtendedReal> ValueFromReportJson(const Json& j,
                                                 const std::string& where) {
  if (j.is_object() && j.contains("exact")) {
    return ExtendedRealFromJson(j["exact"], Child(where, "exact"));
  }
  if (j.is_object() && j.contains("decimal")) {
    return ExtendedRealFromJson(j["decimal"], Child(where, "decimal"));
  }
  return ExtendedRealFromJson(j, where);
}

absl::StatusOr<Witness> WitnessFromJson(const Json& j,
                                        const std::string& where) {
  Witness w;
  auto universe = Member(j, "universe", where);
  if (!universe.ok()) return universe.status();
  auto id = StringFromJson(**universe, Child(where, "universe"));
  if (!id.ok()) return id.status();
  w.universe_id = *id;
  for (auto [key, target] : {std::pair{"x", &w.x}, {"x_prime", &w.x_prime}}) {
    auto member = Member(j, key, where);
    if (!member.ok()) return member.status();
    auto value = IntegerFromJson(**member, Child(where, key));
    if (!value.ok()) return value.status();
    *target = *value;
  }
  for (auto [key, target] : {std::pair{"lhs", &w.lhs}, {"rhs", &w.rhs}}) {
    auto member = Member(j, key, where);
    if (!member.ok()) return member.status();
    auto value = ValueFromReportJson(**member, Child(where, key));
    if (!value.ok()) return value.status();
    *target = *value;
  }
  return w;
}

}  // namespace

absl::StatusOr<Json> ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("file not found: ", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    return absl::InvalidArgumentError(absl::StrCat(
        path, ": malformed JSON at byte ", e.byte, ": ", e.what()));
  }
}

absl::StatusOr<ExtendedReal> ExtendedRealFromJson(const Json& j,
                                                  const std::string& where) {
  if (j.is_number_integer()) {
    return ExtendedReal::FromRational(Rational(j.get<int64_t>()));
  }
  if (j.is_number()) {
    return ExtendedReal::FromRational(RationalFromDouble(j.get<double>()));
  }
  if (j.is_string()) {
    auto value = ExtendedReal::Parse(j.get<std::string>());
    if (!value.ok()) return SchemaError(where, value.status().message());
    return value;
  }
  return SchemaError(where, "expected a number or a string");
}

absl::StatusOr<Rational> RationalFromJson(const Json& j,
                                          const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<int64_t>());
  if (j.is_number()) return RationalFromDouble(j.get<double>());
  if (j.is_string()) {
    auto value = ParseRational(j.get<std::string>());
    if (!value.ok()) return SchemaError(where, value.status().message());
    return value;
  }
  return SchemaError(where, "expected a rational as a number or \"p/q\"");
}

Json ExtendedRealToJson(const ExtendedReal& value) {
  Json j;
  if (value.is_exact()) j["exact"] = value.ToString();
  if (value.is_infinite()) {
    j["decimal"] = "inf";
  } else {
    j["decimal"] = value.ToDouble();
  }
  return j;
}

absl::StatusOr<DpFlavor> FlavorFromJson(const Json& doc) {
  if (!doc.is_object()) return SchemaError("", "expected an object");
  auto domain_json = Member(doc, "domain", "");
  if (!domain_json.ok()) return domain_json.status();
  auto domain = DomainFromJson(**domain_json, "/domain");
  if (!domain.ok()) return domain.status();
  auto multiverse_json = Member(doc, "multiverse", "");
  if (!multiverse_json.ok()) return multiverse_json.status();
  auto multiverse =
      MultiverseFromJson(**multiverse_json, *domain, "/multiverse");
  if (!multiverse.ok()) return multiverse.status();
  auto premetric_json = Member(doc, "premetric", "");
  if (!premetric_json.ok()) return premetric_json.status();
  auto premetric = PremetricFromJson(**premetric_json, "/premetric");
  if (!premetric.ok()) return premetric.status();
  auto divergence_json = Member(doc, "divergence", "");
  if (!divergence_json.ok()) return divergence_json.status();
  auto divergence = DivergenceFromJson(**divergence_json, "/divergence");
  if (!divergence.ok()) return divergence.status();
  return DpFlavor{*std::move(domain), *std::move(multiverse),
                  *std::move(premetric), *std::move(divergence)};
}

absl::StatusOr<BudgetMap> BudgetFromJson(const Json& j,
                                         const std::string& where) {
  if (!j.is_object()) {
    return SchemaError(where, "expected an object of universe budgets");
  }
  BudgetMap budget;
  for (const auto& [id, value] : j.items()) {
    auto epsilon = ExtendedRealFromJson(value, Child(where, id));
    if (!epsilon.ok()) return epsilon.status();
    budget[id] = *std::move(epsilon);
  }
  return budget;
}

absl::StatusOr<DpSpecification> SpecFromJson(const Json& doc) {
  auto flavor = FlavorFromJson(doc);
  if (!flavor.ok()) return flavor.status();
  auto budget_json = Member(doc, "budget", "");
  if (!budget_json.ok()) return budget_json.status();
  DpSpecification spec{*std::move(flavor), {}};
  if ((*budget_json)->is_object()) {
    auto budget = BudgetFromJson(**budget_json, "/budget");
    if (!budget.ok()) return budget.status();
    spec.budget = *std::move(budget);
  } else {
    // A bare value applies to every universe.
    auto epsilon = ExtendedRealFromJson(**budget_json, "/budget");
    if (!epsilon.ok()) return epsilon.status();
    spec.budget = UniformBudget(spec.multiverse(), *epsilon);
  }
  return spec;
}

Json BudgetToJson(const BudgetMap& budget) {
  Json j = Json::object();
  for (const auto& [id, epsilon] : budget) j[id] = epsilon.ToString();
  return j;
}

Json MultiverseToJson(const Multiverse& multiverse,
                      const DatasetDomain& domain) {
  Json universes = Json::array();
  for (const DataUniverse& u : multiverse.universes) {
    Json datasets = Json::array();
    for (DatasetId id : u.member_ids) datasets.push_back(domain.Render(id));
    Json entry;
    entry["id"] = u.id;
    entry["members"] = u.member_ids;
    entry["datasets"] = std::move(datasets);
    universes.push_back(std::move(entry));
  }
  return universes;
}

Json FlavorToJson(const DpFlavor& flavor) {
  Json j;
  j["domain"] = DomainToJson(flavor.domain);
  Json universes = Json::array();
  for (const DataUniverse& u : flavor.multiverse.universes) {
    Json entry;
    entry["id"] = u.id;
    entry["members"] = u.member_ids;
    universes.push_back(std::move(entry));
  }
  j["multiverse"] = std::move(universes);
  j["premetric"] = PremetricToJson(flavor.premetric);
  j["divergence"] = DivergenceToJson(flavor.divergence);
  return j;
}

Json SpecToJson(const DpSpecification& spec) {
  Json j = FlavorToJson(spec.flavor);
  j["budget"] = BudgetToJson(spec.budget);
  return j;
}

absl::StatusOr<Mechanism> KernelFromJson(const Json& doc) {
  auto outputs_json = Member(doc, "outputs", "");
  if (!outputs_json.ok()) return outputs_json.status();
  if (!(*outputs_json)->is_array() || (*outputs_json)->empty()) {
    return SchemaError("/outputs", "expected a nonempty array");
  }
  std::vector<std::string> outputs;
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < (*outputs_json)->size(); ++i) {
    auto label = LabelFromJson((**outputs_json)[i], Child("/outputs", i));
    if (!label.ok()) return label.status();
    if (!index.emplace(*label, outputs.size()).second) {
      return SchemaError(Child("/outputs", i),
                         absl::StrCat("duplicate output \"", *label, "\""));
    }
    outputs.push_back(*std::move(label));
  }
  auto rows_json = Member(doc, "rows", "");
  if (!rows_json.ok()) return rows_json.status();
  if (!(*rows_json)->is_object() || (*rows_json)->empty()) {
    return SchemaError("/rows", "expected a nonempty object keyed by dataset id");
  }
  std::map<DatasetId, std::vector<Rational>> by_id;
  for (const auto& [key, row] : (*rows_json)->items()) {
    const std::string at = Child("/rows", key);
    auto id = DatasetIdFromKey(key, at);
    if (!id.ok()) return id.status();
    if (!row.is_object()) return SchemaError(at, "expected an object");
    std::vector<Rational> probs(outputs.size(), Rational(0));
    for (const auto& [label, value] : row.items()) {
      auto it = index.find(label);
      if (it == index.end()) {
        return SchemaError(Child(at, label),
                           absl::StrCat("unknown output \"", label, "\""));
      }
      auto p = RationalFromJson(value, Child(at, label));
      if (!p.ok()) return p.status();
      if (*p < 0) {
        return absl::InvalidArgumentError(absl::StrCat(
            "non-stochastic row for dataset ", *id, ": negative probability ",
            FormatRational(*p), " for output \"", label, "\""));
      }
      probs[it->second] = *p;
    }
    if (!by_id.emplace(*id, std::move(probs)).second) {
      return SchemaError(at, "duplicate dataset id");
    }
  }
  std::vector<Distribution> rows;
  DatasetId expected = 0;
  for (auto& [id, probs] : by_id) {
    if (id != expected) {
      return SchemaError("/rows",
                         absl::StrCat("missing row for dataset ", expected));
    }
    ++expected;
    Rational total = 0;
    for (const Rational& p : probs) total += p;
    if (total != 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "non-stochastic row for dataset ", id, ": probabilities sum to ",
          FormatRational(total)));
    }
    rows.push_back(*Distribution::Create(std::move(probs)));
  }
  return Mechanism::Create(std::move(outputs), std::move(rows));
}

Json KernelToJson(const Mechanism& mechanism) {
  Json j;
  j["outputs"] = mechanism.outputs();
  Json rows = Json::object();
  for (DatasetId x = 0; x < mechanism.num_datasets(); ++x) {
    Json row = Json::object();
    for (size_t t = 0; t < mechanism.outputs().size(); ++t) {
      row[mechanism.outputs()[t]] = FormatRational(mechanism.row(x)[t]);
    }
    rows[absl::StrCat(x)] = std::move(row);
  }
  j["rows"] = std::move(rows);
  return j;
}

absl::StatusOr<InvariantStatistic> StatisticFromJson(
    const Json& doc, const DatasetDomain& domain) {
  auto label_json = Member(doc, "label", "");
  if (!label_json.ok()) return label_json.status();
  auto label = LabelFromJson(**label_json, "/label");
  if (!label.ok()) return label.status();
  auto values_json = Member(doc, "values", "");
  if (!values_json.ok()) return values_json.status();
  if (!(*values_json)->is_object()) {
    return SchemaError("/values", "expected an object keyed by dataset id");
  }
  InvariantStatistic statistic{*std::move(label),
                               std::vector<std::string>(domain.size())};
  std::vector<bool> seen(domain.size(), false);
  for (const auto& [key, value] : (*values_json)->items()) {
    const std::string at = Child("/values", key);
    auto id = DatasetIdFromKey(key, at);
    if (!id.ok()) return id.status();
    if (!domain.contains(*id)) {
      return SchemaError(at, absl::StrCat("dataset id ", *id,
                                          " is outside the domain"));
    }
    auto v = LabelFromJson(value, at);
    if (!v.ok()) return v.status();
    statistic.values[*id] = *std::move(v);
    seen[*id] = true;
  }
  for (DatasetId x = 0; x < domain.size(); ++x) {
    if (!seen[x]) {
      return SchemaError("/values",
                         absl::StrCat("statistic is not total: no value for "
                                      "dataset ",
                                      x));
    }
  }
  return statistic;
}

absl::StatusOr<SafesRegime> RegimeFromJson(const Json& doc) {
  auto name_json = Member(doc, "name", "");
  if (!name_json.ok()) return name_json.status();
  auto name = StringFromJson(**name_json, "/name");
  if (!name.ok()) return name.status();
  auto flow_json = Member(doc, "flow", "");
  if (!flow_json.ok()) return flow_json.status();
  auto flow_name = StringFromJson(**flow_json, "/flow");
  if (!flow_name.ok()) return flow_name.status();
  auto flow = ParseFlow(*flow_name);
  if (!flow.ok()) return SchemaError("/flow", flow.status().message());

  auto dims_json = Member(doc, "dimensions", "");
  if (!dims_json.ok()) return dims_json.status();
  std::array<SafetyAssessment, 5> dimensions;
  for (Dimension d : kAllDimensions) {
    const std::string key = DimensionName(d);
    const std::string at = Child("/dimensions", key);
    auto entry = Member(**dims_json, key, "/dimensions");
    if (!entry.ok()) return entry.status();
    auto level_json = Member(**entry, "level", at);
    if (!level_json.ok()) return level_json.status();
    if (!(*level_json)->is_number()) {
      return SchemaError(Child(at, "level"), "expected a number");
    }
    SafetyAssessment& a = dimensions[static_cast<size_t>(d)];
    a.level = (*level_json)->get<double>();
    if (!(a.level >= 0 && a.level <= 1)) {
      return SchemaError(Child(at, "level"), "must lie in [0, 1]");
    }
    a.label = LabelForLevel(a.level);
    if ((*entry)->contains("label")) {
      auto label_name = StringFromJson((**entry)["label"], Child(at, "label"));
      if (!label_name.ok()) return label_name.status();
      auto label = ParseSafetyLabel(*label_name);
      if (!label.ok()) return SchemaError(Child(at, "label"), label.status().message());
      if (*label != a.label) {
        return SchemaError(Child(at, "label"),
                           absl::StrCat("label \"", *label_name,
                                        "\" does not match the level's band \"",
                                        SafetyLabelName(a.label), "\""));
      }
    }
    if ((*entry)->contains("rationale")) {
      auto rationale =
          StringFromJson((**entry)["rationale"], Child(at, "rationale"));
      if (!rationale.ok()) return rationale.status();
      a.rationale = *std::move(rationale);
    }
  }

  std::vector<std::string> mandates;
  if (doc.contains("mandates")) {
    const Json& m = doc["mandates"];
    if (!m.is_array()) return SchemaError("/mandates", "expected an array");
    for (size_t i = 0; i < m.size(); ++i) {
      auto text = StringFromJson(m[i], Child("/mandates", i));
      if (!text.ok()) return text.status();
      mandates.push_back(*std::move(text));
    }
  }

  std::vector<DpEvidence> evidence;
  if (doc.contains("dp_evidence")) {
    const Json& list = doc["dp_evidence"];
    if (!list.is_array()) return SchemaError("/dp_evidence", "expected an array");
    for (size_t i = 0; i < list.size(); ++i) {
      const std::string at = Child("/dp_evidence", i);
      const Json& e = list[i];
      DpEvidence item;
      auto targets = Member(e, "targets", at);
      if (!targets.ok()) return targets.status();
      if (!(*targets)->is_array()) {
        return SchemaError(Child(at, "targets"), "expected an array");
      }
      for (size_t k = 0; k < (*targets)->size(); ++k) {
        auto t = StringFromJson((**targets)[k], Child(Child(at, "targets"), k));
        if (!t.ok()) return t.status();
        auto dim = ParseDimension(*t);
        if (!dim.ok()) {
          return SchemaError(Child(Child(at, "targets"), k),
                             dim.status().message());
        }
        item.targets.push_back(*dim);
      }
      auto satisfied = Member(e, "satisfied", at);
      if (!satisfied.ok()) return satisfied.status();
      if (!(*satisfied)->is_boolean()) {
        return SchemaError(Child(at, "satisfied"), "expected a boolean");
      }
      item.satisfied = (*satisfied)->get<bool>();
      if (e.contains("fingerprint")) {
        auto fp = StringFromJson(e["fingerprint"], Child(at, "fingerprint"));
        if (!fp.ok()) return fp.status();
        item.fingerprint = *std::move(fp);
      }
      if (e.contains("epsilons")) {
        const Json& eps = e["epsilons"];
        if (!eps.is_array()) {
          return SchemaError(Child(at, "epsilons"), "expected an array");
        }
        for (size_t k = 0; k < eps.size(); ++k) {
          const std::string eat = Child(Child(at, "epsilons"), k);
          auto universe = Member(eps[k], "universe", eat);
          if (!universe.ok()) return universe.status();
          auto id = StringFromJson(**universe, Child(eat, "universe"));
          if (!id.ok()) return id.status();
          auto tightest = Member(eps[k], "tightest", eat);
          if (!tightest.ok()) return tightest.status();
          auto value = ValueFromReportJson(**tightest, Child(eat, "tightest"));
          if (!value.ok()) return value.status();
          item.epsilons.push_back({*std::move(id), *std::move(value)});
        }
      }
      if (e.contains("witness") && !e["witness"].is_null()) {
        auto w = WitnessFromJson(e["witness"], Child(at, "witness"));
        if (!w.ok()) return w.status();
        item.witness = *std::move(w);
      }
      if (e.contains("caveats")) {
        const Json& c = e["caveats"];
        if (!c.is_array()) {
          return SchemaError(Child(at, "caveats"), "expected an array");
        }
        for (size_t k = 0; k < c.size(); ++k) {
          auto text = StringFromJson(c[k], Child(Child(at, "caveats"), k));
          if (!text.ok()) return text.status();
          item.caveats.push_back(*std::move(text));
        }
      }
      evidence.push_back(std::move(item));
    }
  }
  return SafesRegime::Create(*std::move(name), *flow, std::move(dimensions),
                             std::move(mandates), std::move(evidence));
}

Json RegimeToJson(const SafesRegime& regime) {
  Json j;
  j["name"] = regime.name();
  j["flow"] = FlowName(regime.flow());
  Json dims;
  for (Dimension d : kAllDimensions) {
    const SafetyAssessment& a = regime.dimension(d);
    Json entry;
    entry["level"] = a.level;
    entry["label"] = SafetyLabelName(a.label);
    entry["rationale"] = a.rationale;
    dims[DimensionName(d)] = std::move(entry);
  }
  j["dimensions"] = std::move(dims);
  j["mandates"] = regime.mandates();
  Json evidence = Json::array();
  for (const DpEvidence& e : regime.dp_evidence()) {
    Json item;
    Json targets = Json::array();
    for (Dimension d : e.targets) targets.push_back(DimensionName(d));
    item["targets"] = std::move(targets);
    item["satisfied"] = e.satisfied;
    item["fingerprint"] = e.fingerprint;
    item["epsilons"] = UniverseBoundsToJson(e.epsilons);
    item["witness"] =
        e.witness.has_value() ? WitnessToJson(*e.witness, nullptr) : Json();
    item["caveats"] = e.caveats;
    evidence.push_back(std::move(item));
  }
  j["dp_evidence"] = std::move(evidence);
  return j;
}

absl::StatusOr<BudgetLedger> LedgerFromJson(const Json& doc) {
  auto fp_json = Member(doc, "fingerprint", "");
  if (!fp_json.ok()) return fp_json.status();
  auto fingerprint = StringFromJson(**fp_json, "/fingerprint");
  if (!fingerprint.ok()) return fingerprint.status();
  auto universes_json = Member(doc, "universes", "");
  if (!universes_json.ok()) return universes_json.status();
  if (!(*universes_json)->is_array()) {
    return SchemaError("/universes", "expected an array");
  }
  std::vector<std::string> universes;
  for (size_t i = 0; i < (*universes_json)->size(); ++i) {
    auto id = StringFromJson((**universes_json)[i], Child("/universes", i));
    if (!id.ok()) return id.status();
    universes.push_back(*std::move(id));
  }
  auto entries_json = Member(doc, "entries", "");
  if (!entries_json.ok()) return entries_json.status();
  if (!(*entries_json)->is_array()) {
    return SchemaError("/entries", "expected an array");
  }
  std::vector<LedgerEntry> entries;
  for (size_t i = 0; i < (*entries_json)->size(); ++i) {
    const std::string at = Child("/entries", i);
    const Json& e = (**entries_json)[i];
    auto label_json = Member(e, "label", at);
    if (!label_json.ok()) return label_json.status();
    auto label = StringFromJson(**label_json, Child(at, "label"));
    if (!label.ok()) return label.status();
    auto budget_json = Member(e, "budget", at);
    if (!budget_json.ok()) return budget_json.status();
    auto budget = BudgetFromJson(**budget_json, Child(at, "budget"));
    if (!budget.ok()) return budget.status();
    entries.push_back({*std::move(label), *std::move(budget)});
  }
  auto ledger = BudgetLedger::FromEntries(*std::move(fingerprint),
                                          std::move(universes),
                                          std::move(entries));
  if (!ledger.ok()) return ledger.status();
  if (doc.contains("total")) {
    auto stored = BudgetFromJson(doc["total"], "/total");
    if (!stored.ok()) return stored.status();
    for (const auto& [id, epsilon] : ledger->total()) {
      auto it = stored->find(id);
      if (it == stored->end() || it->second != epsilon) {
        return SchemaError("/total",
                           absl::StrCat("stored total for universe \"", id,
                                        "\" does not match the entries"));
      }
    }
  }
  return ledger;
}

Json LedgerToJson(const BudgetLedger& ledger) {
  Json j;
  j["fingerprint"] = ledger.fingerprint();
  j["universes"] = ledger.universe_ids();
  Json entries = Json::array();
  for (const LedgerEntry& e : ledger.entries()) {
    Json entry;
    entry["label"] = e.label;
    entry["budget"] = BudgetToJson(e.budget);
    entries.push_back(std::move(entry));
  }
  j["entries"] = std::move(entries);
  j["total"] = BudgetToJson(ledger.total());
  return j;
}

Json UniverseBoundsToJson(const std::vector<UniverseBound>& bounds) {
  Json list = Json::array();
  for (const UniverseBound& b : bounds) {
    Json entry;
    entry["universe"] = b.universe_id;
    entry["tightest"] = ExtendedRealToJson(b.tightest);
    list.push_back(std::move(entry));
  }
  return list;
}

Json VerificationResultToJson(const VerificationResult& result,
                              const DatasetDomain& domain) {
  Json j;
  j["satisfied"] = result.satisfied;
  j["per_universe_tightest"] = UniverseBoundsToJson(result.per_universe_tightest);
  j["witness"] = result.witness.has_value()
                     ? WitnessToJson(*result.witness, &domain)
                     : Json();
  j["notes"] = result.notes;
  return j;
}

Json AllocationToJson(const std::vector<ProjectBudget>& shares) {
  Json list = Json::array();
  for (const ProjectBudget& share : shares) {
    Json entry;
    entry["project"] = share.project;
    Json budget = Json::object();
    for (const auto& [id, epsilon] : share.budget) {
      budget[id] = ExtendedRealToJson(epsilon);
    }
    entry["budget"] = std::move(budget);
    list.push_back(std::move(entry));
  }
  return list;
}

Json CompositionReportToJson(const CompositionBoundReport& report) {
  Json j;
  j["flavor_supported"] = report.flavor_supported;
  j["holds"] = report.holds();
  j["note"] = report.note;
  Json rows = Json::array();
  for (const CompositionBoundRow& row : report.rows) {
    Json entry;
    entry["universe"] = row.universe_id;
    entry["joint"] = ExtendedRealToJson(row.joint);
    entry["separate_sum"] = ExtendedRealToJson(row.separate_sum);
    if (std::isfinite(row.slack)) {
      entry["slack"] = row.slack;
    } else {
      entry["slack"] = row.slack > 0 ? "inf" : "-inf";
    }
    entry["within_bound"] = row.within_bound;
    rows.push_back(std::move(entry));
  }
  j["rows"] = std::move(rows);
  return j;
}

Json MarginReportToJson(const InvariantMarginReport& report) {
  Json j;
  j["statistic"] = report.statistic_label;
  Json cross = Json::array();
  for (const CrossUniverseMargin& m : report.cross_universe) {
    Json entry;
    entry["from"] = m.from_universe;
    entry["to"] = m.to_universe;
    entry["min_divergence"] = ExtendedRealToJson(m.min_divergence);
    cross.push_back(std::move(entry));
  }
  j["cross_universe"] = std::move(cross);
  Json within = Json::array();
  for (const auto& [id, tightest] : report.within_universe_tightest) {
    Json entry;
    entry["universe"] = id;
    entry["tightest"] = ExtendedRealToJson(tightest);
    within.push_back(std::move(entry));
  }
  j["within_universe_tightest"] = std::move(within);
  return j;
}

Json CiToJson(const CiNormAssignment& ci) {
  auto component = [](const CiComponent& c) {
    Json j;
    j["description"] = c.description;
    Json dims = Json::array();
    for (Dimension d : c.components) dims.push_back(DimensionName(d));
    j["components"] = std::move(dims);
    return j;
  };
  Json j;
  j["sender"] = ci.sender;
  j["recipient"] = ci.recipient;
  j["subject"] = component(ci.subject);
  j["information_type"] = component(ci.information_type);
  j["information_type"]["determinant_of_outputs"] =
      ci.information_type_determines_outputs;
  Json principles = Json::array();
  for (const TransmissionPrinciple& p : ci.transmission_principles) {
    Json entry;
    entry["source"] = p.source;
    entry["text"] = p.text;
    principles.push_back(std::move(entry));
  }
  j["transmission_principles"] = std::move(principles);
  j["unmapped_remainder"] = ci.unmapped_remainder;
  return j;
}

Json SafesReportToJson(const SafesReport& report) {
  Json j;
  j["regime"] = RegimeToJson(report.regime);
  j["ci"] = CiToJson(report.ci);
  Json comparison = Json::array();
  for (const PresetColumn& c : report.comparison) {
    Json entry;
    entry["preset"] = c.preset;
    Json labels;
    for (Dimension d : kAllDimensions) {
      labels[DimensionName(d)] = SafetyLabelName(c.labels[static_cast<size_t>(d)]);
    }
    entry["labels"] = std::move(labels);
    comparison.push_back(std::move(entry));
  }
  j["comparison"] = std::move(comparison);
  j["caveats"] = report.caveats;
  return j;
}

}  // namespace dpspec
