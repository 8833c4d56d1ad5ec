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

#ifndef DPSPEC_RATIONAL_H_
#define DPSPEC_RATIONAL_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace dpspec {

// Exact rational number. All probabilities, distances, weights and the
// rational parts of budgets use this type.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Working precision for logarithms and exponentials evaluated at the
// boundary between exact and floating-point arithmetic.
using HighPrecision = boost::multiprecision::mpfr_float_50;

// Parses "p", "p/q", "-p/q" or a plain decimal literal such as "0.25" or
// "1e-3" into an exact rational. Decimal literals are read exactly.
absl::StatusOr<Rational> ParseRational(absl::string_view text);

// Converts a double exactly through its shortest round-trip decimal
// representation, so 0.1 becomes 1/10 rather than the binary expansion.
Rational RationalFromDouble(double value);

// Canonical "p/q" (or "p" for integers) rendering.
std::string FormatRational(const Rational& value);

Integer Numerator(const Rational& value);
Integer Denominator(const Rational& value);

bool IsInteger(const Rational& value);

// Greatest common divisor of two rationals: the largest positive g such that
// a/g and b/g are both integers. Requires a and b not both zero.
Rational RationalGcd(const Rational& a, const Rational& b);

// base^exponent for an integer exponent (negative allowed when base != 0).
Rational Power(const Rational& base, int64_t exponent);

// Number of bits in numerator plus denominator; used to bound exact work.
int64_t BitSize(const Rational& value);

HighPrecision ToHighPrecision(const Rational& value);

}  // namespace dpspec

#endif  // DPSPEC_RATIONAL_H_
