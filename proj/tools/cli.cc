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

#include "dpspec_tools/cli.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "dpspec/accountant.h"
#include "dpspec/extended_real.h"
#include "dpspec/five_safes.h"
#include "dpspec/invariants.h"
#include "dpspec/mechanisms.h"
#include "dpspec/serialization.h"
#include "dpspec/specification.h"
#include "dpspec/verifier.h"

namespace dpspec {
namespace {

struct Options {
  std::string format = "text";
  std::string out_path;
  std::string mechanism_path;
  std::string spec_path;
  std::string flavor_path;
  std::string ledger_path;
  std::string budget_path;
  std::string epsilon;
  std::string label;
  std::vector<std::string> weights;
  std::string statistic_path;
  std::string regime_path;
  std::string preset;

  bool structured() const { return format == "structured"; }
};

// Errors carry the file they came from so the user can find the problem.
absl::Status InFile(const std::string& path, const absl::Status& status) {
  if (absl::StrContains(status.message(), path)) return status;
  return absl::Status(status.code(), absl::StrCat(path, ": ", status.message()));
}

template <typename T, typename Parser>
absl::StatusOr<T> LoadFile(const std::string& path, Parser parse) {
  auto doc = ReadJsonFile(path);
  if (!doc.ok()) return doc.status();
  absl::StatusOr<T> value = parse(*doc);
  if (!value.ok()) return InFile(path, value.status());
  return value;
}

absl::StatusOr<Mechanism> LoadMechanism(const std::string& path) {
  return LoadFile<Mechanism>(path,
                             [](const Json& doc) { return KernelFromJson(doc); });
}

absl::StatusOr<DpSpecification> LoadSpec(const std::string& path) {
  return LoadFile<DpSpecification>(
      path, [](const Json& doc) -> absl::StatusOr<DpSpecification> {
        auto spec = SpecFromJson(doc);
        if (!spec.ok()) return spec.status();
        ValidationReport report = ValidateSpec(*spec);
        if (!report.ok()) {
          return absl::InvalidArgumentError(absl::StrCat(
              "invalid specification: ", absl::StrJoin(report.violations, "; ")));
        }
        return spec;
      });
}

absl::StatusOr<DpFlavor> LoadFlavor(const std::string& path) {
  return LoadFile<DpFlavor>(path, [](const Json& doc) -> absl::StatusOr<DpFlavor> {
    auto flavor = FlavorFromJson(doc);
    if (!flavor.ok()) return flavor.status();
    ValidationReport report = ValidateFlavor(*flavor);
    if (!report.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "invalid specification: ", absl::StrJoin(report.violations, "; ")));
    }
    return flavor;
  });
}

absl::Status MatchDomains(const Mechanism& mechanism, const DatasetDomain& domain,
                          const Options& options, const std::string& spec_path) {
  absl::Status status = CheckDomainMatch(mechanism, domain);
  if (status.ok()) return status;
  return absl::Status(status.code(),
                      absl::StrCat(options.mechanism_path, " vs ", spec_path,
                                   ": ", status.message()));
}

// "ln(3) ≈ 1.098612"; integers and infinity print bare.
std::string Show(const ExtendedReal& value) {
  if (value.is_infinite()) return "inf";
  if (!value.is_exact()) return absl::StrCat("≈ ", value.ToDecimalString());
  std::string exact = value.ToString();
  if (value.rational().has_value() && IsInteger(*value.rational())) {
    return exact;
  }
  return absl::StrCat(exact, " ≈ ", value.ToDecimalString());
}

std::string ShowBudget(const BudgetMap& budget) {
  std::vector<std::string> parts;
  for (const auto& [id, epsilon] : budget) {
    parts.push_back(absl::StrCat(id, " = ", Show(epsilon)));
  }
  return absl::StrJoin(parts, ", ");
}

std::string WitnessText(const Witness& w, const DatasetDomain& domain) {
  return absl::StrCat("witness: universe ", w.universe_id, ", x = ", w.x, " ",
                      domain.Render(w.x), ", x' = ", w.x_prime, " ",
                      domain.Render(w.x_prime), ": divergence ", Show(w.lhs),
                      " exceeds bound ", Show(w.rhs), "\n");
}

std::string Dump(const Json& doc) { return doc.dump(2) + "\n"; }

struct Outcome {
  int exit_code = kExitOk;
  std::string body;
};

absl::StatusOr<Outcome> RunVerify(const Options& options) {
  auto mechanism = LoadMechanism(options.mechanism_path);
  if (!mechanism.ok()) return mechanism.status();
  auto spec = LoadSpec(options.spec_path);
  if (!spec.ok()) return spec.status();
  absl::Status match =
      MatchDomains(*mechanism, spec->domain(), options, options.spec_path);
  if (!match.ok()) return match;
  auto result = Satisfies(*mechanism, *spec);
  if (!result.ok()) return InFile(options.spec_path, result.status());

  Outcome outcome;
  outcome.exit_code = result->satisfied ? kExitOk : kExitNotSatisfied;
  if (options.structured()) {
    Json doc;
    doc["command"] = "verify";
    doc["fingerprint"] = FlavorFingerprint(spec->flavor);
    doc["budget"] = BudgetToJson(spec->budget);
    Json result_json = VerificationResultToJson(*result, spec->domain());
    for (auto& [key, value] : result_json.items()) doc[key] = value;
    outcome.body = Dump(doc);
    return outcome;
  }
  std::string text = result->satisfied ? "satisfied\n" : "not satisfied\n";
  for (const UniverseBound& bound : result->per_universe_tightest) {
    absl::StrAppend(&text, "universe ", bound.universe_id,
                    ": tightest epsilon ", Show(bound.tightest), ", budget ",
                    Show(spec->budget.at(bound.universe_id)), "\n");
  }
  if (result->witness.has_value()) {
    absl::StrAppend(&text, WitnessText(*result->witness, spec->domain()));
  }
  for (const std::string& note : result->notes) {
    absl::StrAppend(&text, "note: ", note, "\n");
  }
  outcome.body = std::move(text);
  return outcome;
}

absl::StatusOr<Outcome> RunEpsilon(const Options& options) {
  auto mechanism = LoadMechanism(options.mechanism_path);
  if (!mechanism.ok()) return mechanism.status();
  auto flavor = LoadFlavor(options.flavor_path);
  if (!flavor.ok()) return flavor.status();
  absl::Status match =
      MatchDomains(*mechanism, flavor->domain, options, options.flavor_path);
  if (!match.ok()) return match;
  auto bounds = TightestEpsilon(*mechanism, *flavor);
  if (!bounds.ok()) return InFile(options.flavor_path, bounds.status());

  Outcome outcome;
  if (options.structured()) {
    Json doc;
    doc["command"] = "epsilon";
    doc["fingerprint"] = FlavorFingerprint(*flavor);
    doc["per_universe_tightest"] = UniverseBoundsToJson(*bounds);
    outcome.body = Dump(doc);
    return outcome;
  }
  if (bounds->size() == 1) {
    outcome.body = Show(bounds->front().tightest) + "\n";
    return outcome;
  }
  for (const UniverseBound& bound : *bounds) {
    absl::StrAppend(&outcome.body, bound.universe_id, ": ",
                    Show(bound.tightest), "\n");
  }
  return outcome;
}

absl::StatusOr<BudgetMap> LoadBudgetFile(const std::string& path) {
  return LoadFile<BudgetMap>(
      path, [](const Json& doc) { return BudgetFromJson(doc, ""); });
}

std::string LedgerText(const BudgetLedger& ledger) {
  std::string text = absl::StrCat("fingerprint ", ledger.fingerprint(), "\n");
  for (const LedgerEntry& entry : ledger.entries()) {
    absl::StrAppend(&text, "entry ", entry.label, ": ", ShowBudget(entry.budget),
                    "\n");
  }
  absl::StrAppend(&text, "total: ", ShowBudget(ledger.total()), "\n");
  return text;
}

absl::StatusOr<Outcome> RunCompose(const Options& options) {
  auto flavor = LoadFlavor(options.flavor_path);
  if (!flavor.ok()) return flavor.status();
  BudgetLedger ledger = BudgetLedger::ForFlavor(*flavor);
  if (!options.ledger_path.empty()) {
    auto loaded = LoadFile<BudgetLedger>(
        options.ledger_path, [](const Json& doc) { return LedgerFromJson(doc); });
    if (!loaded.ok()) return loaded.status();
    ledger = *std::move(loaded);
  }
  BudgetMap budget;
  if (!options.budget_path.empty()) {
    auto loaded = LoadBudgetFile(options.budget_path);
    if (!loaded.ok()) return loaded.status();
    budget = *std::move(loaded);
  } else {
    auto epsilon = ExtendedReal::Parse(options.epsilon);
    if (!epsilon.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("--epsilon: ", epsilon.status().message()));
    }
    budget = UniformBudget(flavor->multiverse, *epsilon);
  }
  auto composed =
      Compose(ledger, options.label, FlavorFingerprint(*flavor), budget);
  if (!composed.ok()) return composed.status();

  Outcome outcome;
  outcome.body = options.structured() ? Dump(LedgerToJson(*composed))
                                      : LedgerText(*composed);
  return outcome;
}

absl::StatusOr<std::pair<std::string, Rational>> ParseWeight(
    const std::string& text) {
  std::vector<std::string> parts = absl::StrSplit(text, absl::MaxSplits('=', 1));
  if (parts.size() != 2 || parts[0].empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("--weight \"", text, "\": expected project=weight"));
  }
  auto weight = ParseRational(parts[1]);
  if (!weight.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "--weight \"", text, "\": ", weight.status().message()));
  }
  return std::pair{parts[0], *weight};
}

absl::StatusOr<Outcome> RunAllocate(const Options& options) {
  BudgetMap total;
  if (!options.ledger_path.empty()) {
    auto ledger = LoadFile<BudgetLedger>(
        options.ledger_path, [](const Json& doc) { return LedgerFromJson(doc); });
    if (!ledger.ok()) return ledger.status();
    total = ledger->total();
  } else if (!options.budget_path.empty()) {
    auto loaded = LoadBudgetFile(options.budget_path);
    if (!loaded.ok()) return loaded.status();
    total = *std::move(loaded);
  } else {
    if (options.flavor_path.empty()) {
      return absl::InvalidArgumentError(
          "--epsilon needs --spec-sans-budget to name the universes");
    }
    auto flavor = LoadFlavor(options.flavor_path);
    if (!flavor.ok()) return flavor.status();
    auto epsilon = ExtendedReal::Parse(options.epsilon);
    if (!epsilon.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("--epsilon: ", epsilon.status().message()));
    }
    total = UniformBudget(flavor->multiverse, *epsilon);
  }
  std::vector<std::pair<std::string, Rational>> weights;
  for (const std::string& text : options.weights) {
    auto weight = ParseWeight(text);
    if (!weight.ok()) return weight.status();
    weights.push_back(*std::move(weight));
  }
  auto shares = Allocate(total, weights);
  if (!shares.ok()) return shares.status();

  Outcome outcome;
  if (options.structured()) {
    Json doc;
    doc["command"] = "allocate";
    doc["total"] = BudgetToJson(total);
    doc["allocations"] = AllocationToJson(*shares);
    outcome.body = Dump(doc);
    return outcome;
  }
  absl::StrAppend(&outcome.body, "total: ", ShowBudget(total), "\n");
  for (const ProjectBudget& share : *shares) {
    absl::StrAppend(&outcome.body, "project ", share.project, ": ",
                    ShowBudget(share.budget), "\n");
  }
  return outcome;
}

absl::StatusOr<Outcome> RunUniverses(const Options& options) {
  auto flavor = LoadFlavor(options.flavor_path);
  if (!flavor.ok()) return flavor.status();
  const DatasetDomain& domain = flavor->domain;
  auto statistic = LoadFile<InvariantStatistic>(
      options.statistic_path,
      [&domain](const Json& doc) { return StatisticFromJson(doc, domain); });
  if (!statistic.ok()) return statistic.status();
  auto multiverse = PartitionByInvariant(domain, *statistic);
  if (!multiverse.ok()) return InFile(options.statistic_path, multiverse.status());

  std::optional<InvariantMarginReport> margins;
  if (!options.mechanism_path.empty()) {
    auto mechanism = LoadMechanism(options.mechanism_path);
    if (!mechanism.ok()) return mechanism.status();
    absl::Status match =
        MatchDomains(*mechanism, domain, options, options.flavor_path);
    if (!match.ok()) return match;
    auto report = ComputeInvariantMargins(*mechanism, *statistic, *flavor);
    if (!report.ok()) return report.status();
    margins = *std::move(report);
  }

  Outcome outcome;
  if (options.structured()) {
    Json doc;
    doc["command"] = "universes";
    doc["statistic"] = statistic->label;
    doc["universes"] = MultiverseToJson(*multiverse, domain);
    if (margins.has_value()) doc["margins"] = MarginReportToJson(*margins);
    outcome.body = Dump(doc);
    return outcome;
  }
  for (const DataUniverse& u : multiverse->universes) {
    std::vector<std::string> members;
    for (DatasetId id : u.member_ids) members.push_back(domain.Render(id));
    absl::StrAppend(&outcome.body, "universe ", u.id, ": ",
                    absl::StrJoin(members, " "), "\n");
  }
  if (margins.has_value()) {
    for (const auto& [id, tightest] : margins->within_universe_tightest) {
      absl::StrAppend(&outcome.body, "within ", id, ": tightest epsilon ",
                      Show(tightest), "\n");
    }
    for (const CrossUniverseMargin& m : margins->cross_universe) {
      absl::StrAppend(&outcome.body, "across ", m.from_universe, " -> ",
                      m.to_universe, ": minimum divergence ",
                      Show(m.min_divergence), "\n");
    }
  }
  return outcome;
}

Outcome AssessOutcome(const std::string& command,
                      const std::vector<SafesRegime>& regimes,
                      const Options& options) {
  Outcome outcome;
  if (options.structured()) {
    Json reports = Json::array();
    for (const SafesRegime& regime : regimes) {
      SafesReport report = Assess(regime);
      Json entry = SafesReportToJson(report);
      entry["text"] = RenderText(report);
      reports.push_back(std::move(entry));
    }
    Json doc;
    doc["command"] = command;
    doc["reports"] = std::move(reports);
    outcome.body = Dump(doc);
    return outcome;
  }
  std::vector<std::string> texts;
  for (const SafesRegime& regime : regimes) {
    texts.push_back(RenderText(Assess(regime)));
  }
  outcome.body = absl::StrJoin(texts, "\n");
  return outcome;
}

absl::StatusOr<SafesRegime> LoadRegime(const std::string& path) {
  return LoadFile<SafesRegime>(path,
                               [](const Json& doc) { return RegimeFromJson(doc); });
}

absl::StatusOr<Outcome> RunAssess(const Options& options) {
  if (!options.preset.empty()) {
    auto kind = ParsePresetKind(options.preset);
    if (!kind.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("--preset: ", kind.status().message()));
    }
    return AssessOutcome("assess", Preset(*kind), options);
  }
  auto regime = LoadRegime(options.regime_path);
  if (!regime.ok()) return regime.status();
  return AssessOutcome("assess", {*std::move(regime)}, options);
}

absl::StatusOr<Outcome> RunReport(const Options& options) {
  auto regime = LoadRegime(options.regime_path);
  if (!regime.ok()) return regime.status();
  auto mechanism = LoadMechanism(options.mechanism_path);
  if (!mechanism.ok()) return mechanism.status();
  auto spec = LoadSpec(options.spec_path);
  if (!spec.ok()) return spec.status();
  absl::Status match =
      MatchDomains(*mechanism, spec->domain(), options, options.spec_path);
  if (!match.ok()) return match;
  auto result = Satisfies(*mechanism, *spec);
  if (!result.ok()) return InFile(options.spec_path, result.status());
  SafesRegime attached =
      AttachDp(*regime, *result, FlavorFingerprint(spec->flavor));
  Outcome outcome = AssessOutcome("report", {attached}, options);
  outcome.exit_code = result->satisfied ? kExitOk : kExitNotSatisfied;
  return outcome;
}

void AddCommon(CLI::App* command, Options& options) {
  command->add_option("--format", options.format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  command->add_option("--out", options.out_path,
                      "write the report to this file instead of stdout");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options options;
  CLI::App app{"Verify discrete mechanisms against privacy specifications.",
               "dpspec"};
  app.require_subcommand(1, 1);

  CLI::App* verify =
      app.add_subcommand("verify", "check a mechanism against a specification");
  verify->add_option("--mechanism", options.mechanism_path)->required();
  verify->add_option("--spec", options.spec_path)->required();
  AddCommon(verify, options);

  CLI::App* epsilon =
      app.add_subcommand("epsilon", "tightest budget per universe");
  epsilon->add_option("--mechanism", options.mechanism_path)->required();
  epsilon->add_option("--spec-sans-budget", options.flavor_path)->required();
  AddCommon(epsilon, options);

  CLI::App* compose =
      app.add_subcommand("compose", "append a budget to a ledger");
  compose->add_option("--spec-sans-budget", options.flavor_path)->required();
  compose->add_option("--ledger", options.ledger_path,
                      "existing ledger; a new one is started when omitted");
  compose->add_option("--label", options.label)->required();
  CLI::Option* compose_budget =
      compose->add_option("--budget", options.budget_path, "budget map file");
  CLI::Option* compose_epsilon = compose->add_option(
      "--epsilon", options.epsilon, "same budget for every universe");
  compose_budget->excludes(compose_epsilon);
  compose->callback([&]() {
    if (compose_budget->count() + compose_epsilon->count() != 1) {
      throw CLI::ValidationError("compose", "one of --budget or --epsilon is required");
    }
  });
  AddCommon(compose, options);

  CLI::App* allocate =
      app.add_subcommand("allocate", "split a total budget across projects");
  CLI::Option* allocate_ledger =
      allocate->add_option("--ledger", options.ledger_path);
  CLI::Option* allocate_budget =
      allocate->add_option("--budget", options.budget_path);
  CLI::Option* allocate_epsilon =
      allocate->add_option("--epsilon", options.epsilon);
  allocate->add_option("--spec-sans-budget", options.flavor_path);
  allocate->add_option("--weight", options.weights, "project=weight")
      ->required();
  allocate->callback([&]() {
    if (allocate_ledger->count() + allocate_budget->count() +
            allocate_epsilon->count() != 1) {
      throw CLI::ValidationError(
          "allocate", "exactly one of --ledger, --budget or --epsilon is required");
    }
  });
  AddCommon(allocate, options);

  CLI::App* universes =
      app.add_subcommand("universes", "partition induced by an invariant");
  universes->add_option("--spec-sans-budget", options.flavor_path)->required();
  universes->add_option("--statistic", options.statistic_path)->required();
  universes->add_option("--mechanism", options.mechanism_path,
                        "also report cross-universe margins");
  AddCommon(universes, options);

  CLI::App* assess = app.add_subcommand("assess", "Five Safes report");
  CLI::Option* assess_regime = assess->add_option("--regime", options.regime_path);
  CLI::Option* assess_preset = assess->add_option("--preset", options.preset);
  assess->callback([&]() {
    if (assess_regime->count() + assess_preset->count() != 1) {
      throw CLI::ValidationError("assess",
                                 "exactly one of --regime or --preset is required");
    }
  });
  AddCommon(assess, options);

  CLI::App* report = app.add_subcommand(
      "report", "verify, attach the evidence to a regime, and assess it");
  report->add_option("--regime", options.regime_path)->required();
  report->add_option("--mechanism", options.mechanism_path)->required();
  report->add_option("--spec", options.spec_path)->required();
  AddCommon(report, options);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  absl::StatusOr<Outcome> outcome;
  if (verify->parsed()) {
    outcome = RunVerify(options);
  } else if (epsilon->parsed()) {
    outcome = RunEpsilon(options);
  } else if (compose->parsed()) {
    outcome = RunCompose(options);
  } else if (allocate->parsed()) {
    outcome = RunAllocate(options);
  } else if (universes->parsed()) {
    outcome = RunUniverses(options);
  } else if (assess->parsed()) {
    outcome = RunAssess(options);
  } else {
    outcome = RunReport(options);
  }
  if (!outcome.ok()) {
    err << "error: " << outcome.status().message() << "\n";
    return kExitUsage;
  }
  if (options.out_path.empty()) {
    out << outcome->body;
  } else {
    std::ofstream file(options.out_path, std::ios::binary);
    file << outcome->body;
    if (!file) {
      err << "error: cannot write " << options.out_path << "\n";
      return kExitUsage;
    }
  }
  return outcome->exit_code;
}

}  // namespace dpspec
