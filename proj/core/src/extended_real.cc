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

#include "dpspec/extended_real.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/strip.h"

namespace dpspec {
namespace {

// Exponents beyond these bounds make exact recombination of logarithms too
// expensive; the sum is then carried as an approximation.
constexpr int64_t kMaxCombineExponent = 4096;
constexpr int64_t kMaxCombineBits = 1 << 16;

struct LogTerm {
  Rational coefficient;
  Rational argument;
};

// c1 ln r1 + c2 ln r2 as a single g ln r, when the exponents stay small.
std::optional<LogTerm> CombineLogs(const LogTerm& a, const LogTerm& b) {
  if (a.coefficient == 0) return b;
  if (b.coefficient == 0) return a;
  if (a.argument == b.argument) {
    return LogTerm{a.coefficient + b.coefficient, a.argument};
  }
  Rational g = RationalGcd(a.coefficient, b.coefficient);
  Rational ea = a.coefficient / g;
  Rational eb = b.coefficient / g;
  // Both are integers by construction of g.
  Integer na = Numerator(ea);
  Integer nb = Numerator(eb);
  if (abs(na) > kMaxCombineExponent || abs(nb) > kMaxCombineExponent) {
    return std::nullopt;
  }
  int64_t ia = na.convert_to<int64_t>();
  int64_t ib = nb.convert_to<int64_t>();
  int64_t bits = std::abs(ia) * BitSize(a.argument) +
                 std::abs(ib) * BitSize(b.argument);
  if (bits > kMaxCombineBits) return std::nullopt;
  return LogTerm{g, Power(a.argument, ia) * Power(b.argument, ib)};
}

HighPrecision Threshold(const HighPrecision& a, const HighPrecision& b) {
  HighPrecision scale = 1;
  if (abs(a) > scale) scale = abs(a);
  if (abs(b) > scale) scale = abs(b);
  return scale * HighPrecision("1e-40");
}

Ordering SignOf(const HighPrecision& diff, const HighPrecision& threshold) {
  if (diff > threshold) return Ordering::kGreater;
  if (diff < -threshold) return Ordering::kLess;
  return Ordering::kUndetermined;
}

Ordering SignOf(const Rational& value) {
  if (value > 0) return Ordering::kGreater;
  if (value < 0) return Ordering::kLess;
  return Ordering::kEqual;
}

std::string FormatLogTerm(const Rational& coefficient,
                          const Rational& argument) {
  std::string term = absl::StrCat("ln(", FormatRational(argument), ")");
  Rational magnitude = abs(coefficient);
  Integer num = Numerator(magnitude);
  Integer den = Denominator(magnitude);
  std::string out = coefficient < 0 ? "-" : "";
  if (num != 1) absl::StrAppend(&out, num.str(), "*");
  absl::StrAppend(&out, term);
  if (den != 1) absl::StrAppend(&out, "/", den.str());
  return out;
}

// Parses "[coef*]ln(r)[/den]" with an optional leading sign.
absl::StatusOr<LogTerm> ParseLogTerm(absl::string_view text) {
  text = absl::StripAsciiWhitespace(text);
  bool negative = absl::ConsumePrefix(&text, "-");
  Rational coefficient = 1;
  size_t ln = text.find("ln(");
  if (ln == absl::string_view::npos) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ln(...) in \"", text, "\""));
  }
  if (ln > 0) {
    absl::string_view prefix = absl::StripAsciiWhitespace(text.substr(0, ln));
    if (!absl::ConsumeSuffix(&prefix, "*")) {
      return absl::InvalidArgumentError(
          absl::StrCat("expected '*' before ln in \"", text, "\""));
    }
    auto parsed = ParseRational(prefix);
    if (!parsed.ok()) return parsed.status();
    coefficient = *parsed;
  }
  absl::string_view rest = text.substr(ln + 3);
  size_t close = rest.find(')');
  if (close == absl::string_view::npos) {
    return absl::InvalidArgumentError(
        absl::StrCat("unbalanced parenthesis in \"", text, "\""));
  }
  auto argument = ParseRational(rest.substr(0, close));
  if (!argument.ok()) return argument.status();
  if (*argument <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("logarithm of a nonpositive number in \"", text, "\""));
  }
  absl::string_view tail = absl::StripAsciiWhitespace(rest.substr(close + 1));
  if (!tail.empty()) {
    if (!absl::ConsumePrefix(&tail, "/")) {
      return absl::InvalidArgumentError(
          absl::StrCat("unexpected trailing text in \"", text, "\""));
    }
    auto divisor = ParseRational(tail);
    if (!divisor.ok()) return divisor.status();
    if (*divisor <= 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("nonpositive divisor in \"", text, "\""));
    }
    coefficient /= *divisor;
  }
  if (negative) coefficient = -coefficient;
  return LogTerm{coefficient, *argument};
}

}  // namespace

ExtendedReal ExtendedReal::Infinity() {
  ExtendedReal value;
  value.infinite_ = true;
  return value;
}

ExtendedReal ExtendedReal::FromRational(Rational value) {
  ExtendedReal result;
  result.constant_ = std::move(value);
  return result;
}

ExtendedReal ExtendedReal::Log(Rational argument) {
  return ScaledLog(Rational(1), std::move(argument));
}

ExtendedReal ExtendedReal::ScaledLog(Rational coefficient, Rational argument) {
  ExtendedReal result;
  result.log_coefficient_ = std::move(coefficient);
  result.log_argument_ = std::move(argument);
  result.Canonicalize();
  return result;
}

ExtendedReal ExtendedReal::Approximate(HighPrecision value) {
  ExtendedReal result;
  result.exact_ = false;
  result.approximation_ = std::move(value);
  return result;
}

void ExtendedReal::Canonicalize() {
  if (log_coefficient_ == 0 || log_argument_ == 1) {
    log_coefficient_ = 0;
    log_argument_ = 1;
    return;
  }
  if (log_argument_ < 1) {
    log_argument_ = 1 / log_argument_;
    log_coefficient_ = -log_coefficient_;
  }
}

absl::StatusOr<ExtendedReal> ExtendedReal::Parse(absl::string_view text) {
  text = absl::StripAsciiWhitespace(text);
  std::string lowered = absl::AsciiStrToLower(text);
  if (lowered == "inf" || lowered == "+inf" || lowered == "infinity" ||
      text == "∞") {
    return Infinity();
  }
  if (!absl::StrContains(text, "ln(")) {
    auto rational = ParseRational(text);
    if (!rational.ok()) return rational.status();
    return FromRational(*std::move(rational));
  }
  // Split off a trailing "+ c" / "- c" after the closing parenthesis and any
  // "/den" divisor.
  size_t close = text.rfind(')');
  size_t split = absl::string_view::npos;
  for (size_t i = close + 1; i < text.size(); ++i) {
    if (text[i] == '+' || text[i] == '-') {
      split = i;
      break;
    }
  }
  auto term = ParseLogTerm(text.substr(0, split));
  if (!term.ok()) return term.status();
  ExtendedReal result = ScaledLog(term->coefficient, term->argument);
  if (split != absl::string_view::npos) {
    absl::string_view magnitude =
        absl::StripAsciiWhitespace(text.substr(split + 1));
    if (magnitude.empty() || magnitude[0] == '+' || magnitude[0] == '-') {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed constant term in \"", text, "\""));
    }
    auto constant = ParseRational(magnitude);
    if (!constant.ok()) return constant.status();
    result.constant_ = text[split] == '-' ? Rational(-*constant) : *constant;
  }
  return result;
}

bool ExtendedReal::is_zero() const {
  return !infinite_ && exact_ && constant_ == 0 && log_coefficient_ == 0;
}

bool ExtendedReal::is_negative() const {
  return Compare(*this, ExtendedReal()) == Ordering::kLess;
}

std::optional<Rational> ExtendedReal::rational() const {
  if (infinite_ || !exact_ || log_coefficient_ != 0) return std::nullopt;
  return constant_;
}

HighPrecision ExtendedReal::Evaluate() const {
  if (!exact_) return approximation_;
  HighPrecision value = ToHighPrecision(constant_);
  if (log_coefficient_ != 0) {
    value += ToHighPrecision(log_coefficient_) *
             log(ToHighPrecision(log_argument_));
  }
  return value;
}

double ExtendedReal::ToDouble() const {
  if (infinite_) return std::numeric_limits<double>::infinity();
  return Evaluate().convert_to<double>();
}

std::string ExtendedReal::ToString() const {
  if (infinite_) return "inf";
  if (!exact_) {
    char buffer[64];
    auto [end, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), ToDouble());
    return std::string(buffer, end);
  }
  if (log_coefficient_ == 0) return FormatRational(constant_);
  std::string out = FormatLogTerm(log_coefficient_, log_argument_);
  if (constant_ > 0) absl::StrAppend(&out, " + ", FormatRational(constant_));
  if (constant_ < 0) {
    absl::StrAppend(&out, " - ", FormatRational(Rational(-constant_)));
  }
  return out;
}

std::string ExtendedReal::ToDecimalString(int decimals) const {
  if (infinite_) return "inf";
  return absl::StrFormat("%.*f", decimals, ToDouble());
}

ExtendedReal ExtendedReal::operator+(const ExtendedReal& other) const {
  if (infinite_ || other.infinite_) return Infinity();
  if (exact_ && other.exact_) {
    auto combined =
        CombineLogs(LogTerm{log_coefficient_, log_argument_},
                    LogTerm{other.log_coefficient_, other.log_argument_});
    if (combined.has_value()) {
      ExtendedReal result =
          ScaledLog(combined->coefficient, combined->argument);
      result.constant_ = constant_ + other.constant_;
      return result;
    }
  }
  return Approximate(Evaluate() + other.Evaluate());
}

ExtendedReal ExtendedReal::Negated() const {
  if (infinite_) return *this;
  ExtendedReal result = *this;
  result.constant_ = -constant_;
  result.log_coefficient_ = -log_coefficient_;
  result.approximation_ = -approximation_;
  return result;
}

ExtendedReal ExtendedReal::Scale(const Rational& factor) const {
  if (factor == 0) return ExtendedReal();
  if (infinite_) return *this;
  ExtendedReal result = *this;
  result.constant_ *= factor;
  result.log_coefficient_ *= factor;
  result.approximation_ *= ToHighPrecision(factor);
  result.Canonicalize();
  return result;
}

ExtendedReal ExtendedReal::Divide(const Rational& divisor) const {
  return Scale(Rational(1) / divisor);
}

Ordering Compare(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return Ordering::kEqual;
    return a.is_infinite() ? Ordering::kGreater : Ordering::kLess;
  }
  if (a.is_exact() && b.is_exact()) {
    ExtendedReal diff = a + b.Negated();
    if (diff.is_exact()) {
      if (diff.log_coefficient() == 0) return SignOf(diff.constant());
      // The argument is > 1 after canonicalization.
      if (diff.constant() == 0) return SignOf(diff.log_coefficient());
      // A nonzero rational plus a nonzero multiple of the log of a rational
      // other than 1 is never zero, so enough precision always decides.
    }
  }
  HighPrecision va = a.Evaluate();
  HighPrecision vb = b.Evaluate();
  return SignOf(va - vb, Threshold(va, vb));
}

bool ProvablyAtMost(const ExtendedReal& a, const ExtendedReal& b) {
  Ordering order = Compare(a, b);
  return order == Ordering::kLess || order == Ordering::kEqual;
}

const ExtendedReal& Max(const ExtendedReal& a, const ExtendedReal& b) {
  return Compare(b, a) == Ordering::kGreater ? b : a;
}

ExtendedReal Product(const ExtendedReal& budget,
                     const ExtendedReal& distance) {
  if (budget.is_zero() || distance.is_zero()) return ExtendedReal();
  if (budget.is_infinite() || distance.is_infinite()) {
    return ExtendedReal::Infinity();
  }
  if (auto d = distance.rational(); d.has_value()) return budget.Scale(*d);
  if (auto e = budget.rational(); e.has_value()) return distance.Scale(*e);
  return ExtendedReal::Approximate(budget.Evaluate() * distance.Evaluate());
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& value) {
  return os << value.ToString();
}

}  // namespace dpspec
