#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace fiq {

/// Exact rational used for every probability in the library.
using Rational = mpq_class;

/// Probability that a bit equals 1: an exact rational in [0, 1], kept in
/// lowest terms.
class Propensity {
 public:
  /// The zero propensity (bit is deterministically 0).
  Propensity() = default;

  /// Throws RangeError when the value lies outside [0, 1].
  explicit Propensity(const Rational& value);

  static Propensity zero() { return Propensity(); }
  static Propensity one();
  static Propensity half();

  const Rational& value() const noexcept { return value_; }

  /// 1 - p.
  Propensity complement() const;

  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_one() const noexcept { return cmp(value_, 1) == 0; }
  bool is_deterministic() const noexcept { return is_zero() || is_one(); }

  double to_double() const { return value_.get_d(); }

  /// "a/b", or "0" / "1" for the deterministic cases.
  std::string to_string() const;

  friend bool operator==(const Propensity& a, const Propensity& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Propensity& a, const Propensity& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational value_{0};
};

/// Builds numerator/denominator, reduced. Throws ArgumentError on a zero
/// denominator and RangeError when the quotient is outside [0, 1].
Propensity make_propensity(const mpz_class& numerator, const mpz_class& denominator);
Propensity make_propensity(long numerator, long denominator);

}  // namespace fiq
