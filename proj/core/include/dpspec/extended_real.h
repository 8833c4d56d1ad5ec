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

#ifndef DPSPEC_EXTENDED_REAL_H_
#define DPSPEC_EXTENDED_REAL_H_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpspec/rational.h"

namespace dpspec {

// A nonnegative-or-signed real number extended with +infinity.
//
// Finite values are kept in the closed form
//
//     constant + coefficient * ln(argument)
//
// with rational constant, coefficient and argument whenever the arithmetic
// that produced them allows it. Values for which no closed form exists (for
// example a Rényi divergence of non-integer order) are carried as a 50-digit
// approximation and marked inexact.
//
// Arithmetic saturates at infinity: inf + a = inf, and 0 * inf = 0 when
// scaling infinity by a rational.
class ExtendedReal {
 public:
  // Exact zero.
  ExtendedReal() = default;

  static ExtendedReal Infinity();
  static ExtendedReal FromRational(Rational value);
  static ExtendedReal FromInteger(int64_t value) {
    return FromRational(Rational(value));
  }
  // ln(argument); argument must be positive.
  static ExtendedReal Log(Rational argument);
  // coefficient * ln(argument); argument must be positive.
  static ExtendedReal ScaledLog(Rational coefficient, Rational argument);
  // An inexact finite value.
  static ExtendedReal Approximate(HighPrecision value);

  // Parses the forms produced by ToString(): "inf", "3", "-1/2", "0.25",
  // "ln(3)", "ln(6)/2", "2*ln(3)", "3*ln(7/3)/4", "ln(3) - 1/1000000".
  static absl::StatusOr<ExtendedReal> Parse(absl::string_view text);

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  bool is_exact() const { return infinite_ || exact_; }
  // True only for an exact zero.
  bool is_zero() const;
  bool is_negative() const;

  // Set when the value is exact and has no logarithm term.
  std::optional<Rational> rational() const;

  // Closed-form parts; meaningful only when is_exact() and finite.
  const Rational& constant() const { return constant_; }
  const Rational& log_coefficient() const { return log_coefficient_; }
  const Rational& log_argument() const { return log_argument_; }

  // Finite values only.
  HighPrecision Evaluate() const;
  // +inf for infinity.
  double ToDouble() const;

  // Exact closed form when available, otherwise a round-trip decimal.
  std::string ToString() const;
  // Fixed-point rendering with the given number of decimals, "inf" for
  // infinity.
  std::string ToDecimalString(int decimals = 6) const;

  ExtendedReal operator+(const ExtendedReal& other) const;
  ExtendedReal& operator+=(const ExtendedReal& other) {
    return *this = *this + other;
  }
  // Finite values only; infinity negates to itself.
  ExtendedReal Negated() const;
  // factor * value; 0 * inf = 0.
  ExtendedReal Scale(const Rational& factor) const;
  // value / divisor for divisor > 0.
  ExtendedReal Divide(const Rational& divisor) const;

 private:
  void Canonicalize();

  bool infinite_ = false;
  bool exact_ = true;
  Rational constant_ = 0;
  Rational log_coefficient_ = 0;
  Rational log_argument_ = 1;
  HighPrecision approximation_ = 0;
};

enum class Ordering { kLess, kEqual, kGreater, kUndetermined };

// Total order on extended reals. Exact closed forms are compared exactly when
// the difference reduces to a single rational or a single logarithm, and
// otherwise at 50 significant digits; kUndetermined is returned when two
// values agree to within that precision and equality cannot be proven.
Ordering Compare(const ExtendedReal& a, const ExtendedReal& b);

// a <= b, treating an undetermined comparison as false.
bool ProvablyAtMost(const ExtendedReal& a, const ExtendedReal& b);

inline bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
  return Compare(a, b) == Ordering::kEqual;
}
inline bool operator!=(const ExtendedReal& a, const ExtendedReal& b) {
  return !(a == b);
}
inline bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
  return Compare(a, b) == Ordering::kLess;
}

// Larger of the two; ties and undetermined comparisons keep `a`.
const ExtendedReal& Max(const ExtendedReal& a, const ExtendedReal& b);

// budget * distance with the convention 0 * inf = inf * 0 = 0.
ExtendedReal Product(const ExtendedReal& budget, const ExtendedReal& distance);

std::ostream& operator<<(std::ostream& os, const ExtendedReal& value);

}  // namespace dpspec

#endif  // DPSPEC_EXTENDED_REAL_H_
