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

#include "dpspec/rational.h"

#include <charconv>
#include <cstdlib>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/strip.h"

namespace dpspec {
namespace {

bool AllDigits(absl::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!absl::ascii_isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// GMP reads a leading zero as an octal prefix, so strip them first.
Integer DecimalInteger(absl::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits));
}

// Reads an unsigned decimal literal "123", "1.25", "1.5e-3" exactly.
absl::StatusOr<Rational> ParseDecimal(absl::string_view text) {
  absl::string_view mantissa = text;
  int64_t exponent = 0;
  if (size_t e = text.find_first_of("eE"); e != absl::string_view::npos) {
    mantissa = text.substr(0, e);
    absl::string_view exp_text = text.substr(e + 1);
    bool negative = absl::ConsumePrefix(&exp_text, "-");
    if (!negative) absl::ConsumePrefix(&exp_text, "+");
    if (!AllDigits(exp_text) || !absl::SimpleAtoi(exp_text, &exponent) ||
        exponent > 4096) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed exponent in number \"", text, "\""));
    }
    if (negative) exponent = -exponent;
  }
  std::string digits;
  absl::string_view integral = mantissa;
  absl::string_view fractional;
  if (size_t dot = mantissa.find('.'); dot != absl::string_view::npos) {
    integral = mantissa.substr(0, dot);
    fractional = mantissa.substr(dot + 1);
  }
  if ((integral.empty() && fractional.empty()) ||
      (!integral.empty() && !AllDigits(integral)) ||
      (!fractional.empty() && !AllDigits(fractional))) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed number \"", text, "\""));
  }
  digits = absl::StrCat(integral, fractional);
  exponent -= static_cast<int64_t>(fractional.size());
  Rational result(DecimalInteger(digits));
  if (exponent > 0) {
    result *= Power(Rational(10), exponent);
  } else if (exponent < 0) {
    result /= Power(Rational(10), -exponent);
  }
  return result;
}

}  // namespace

absl::StatusOr<Rational> ParseRational(absl::string_view text) {
  text = absl::StripAsciiWhitespace(text);
  bool negative = absl::ConsumePrefix(&text, "-");
  if (!negative) absl::ConsumePrefix(&text, "+");
  if (text.empty()) {
    return absl::InvalidArgumentError("empty rational literal");
  }
  Rational result;
  if (size_t slash = text.find('/'); slash != absl::string_view::npos) {
    absl::string_view num = absl::StripAsciiWhitespace(text.substr(0, slash));
    absl::string_view den = absl::StripAsciiWhitespace(text.substr(slash + 1));
    if (!AllDigits(num) || !AllDigits(den)) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed rational \"", text, "\""));
    }
    Integer d = DecimalInteger(den);
    if (d == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("zero denominator in \"", text, "\""));
    }
    result = Rational(DecimalInteger(num), d);
  } else {
    auto decimal = ParseDecimal(text);
    if (!decimal.ok()) return decimal.status();
    result = *decimal;
  }
  return negative ? Rational(-result) : result;
}

Rational RationalFromDouble(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  // to_chars cannot fail for a finite double with a 64-byte buffer.
  auto parsed = ParseRational(absl::string_view(buffer, end - buffer));
  return parsed.ok() ? *parsed : Rational(0);
}

std::string FormatRational(const Rational& value) {
  if (IsInteger(value)) return Numerator(value).str();
  return absl::StrCat(Numerator(value).str(), "/", Denominator(value).str());
}

Integer Numerator(const Rational& value) {
  return boost::multiprecision::numerator(value);
}

Integer Denominator(const Rational& value) {
  return boost::multiprecision::denominator(value);
}

bool IsInteger(const Rational& value) { return Denominator(value) == 1; }

Rational RationalGcd(const Rational& a, const Rational& b) {
  Integer num = boost::multiprecision::gcd(Numerator(a) * Denominator(b),
                                           Numerator(b) * Denominator(a));
  return Rational(abs(num), Denominator(a) * Denominator(b));
}

Rational Power(const Rational& base, int64_t exponent) {
  if (exponent < 0) return Rational(1) / Power(base, -exponent);
  auto e = static_cast<unsigned>(exponent);
  return Rational(boost::multiprecision::pow(Numerator(base), e),
                  boost::multiprecision::pow(Denominator(base), e));
}

int64_t BitSize(const Rational& value) {
  auto bits = [](const Integer& v) -> int64_t {
    return v == 0 ? 0 : static_cast<int64_t>(msb(abs(v))) + 1;
  };
  return bits(Numerator(value)) + bits(Denominator(value));
}

HighPrecision ToHighPrecision(const Rational& value) {
  return HighPrecision(value);
}

}  // namespace dpspec
