#include <fiq/error.hpp>
#include <fiq/propensity.hpp>

namespace fiq {

Propensity::Propensity(const Rational& value) : value_(value) {
  value_.canonicalize();
  if (sgn(value_) < 0 || cmp(value_, 1) > 0) {
    throw RangeError("propensity " + value_.get_str() + " is outside [0, 1]");
  }
}

Propensity Propensity::one() { return Propensity(Rational(1)); }

Propensity Propensity::half() { return Propensity(Rational(1, 2)); }

Propensity Propensity::complement() const { return Propensity(Rational(1 - value_)); }

std::string Propensity::to_string() const { return value_.get_str(); }

Propensity make_propensity(const mpz_class& numerator, const mpz_class& denominator) {
  if (sgn(denominator) == 0) {
    throw ArgumentError("propensity denominator is zero");
  }
  Rational value(numerator, denominator);
  value.canonicalize();
  return Propensity(value);
}

Propensity make_propensity(long numerator, long denominator) {
  return make_propensity(mpz_class(numerator), mpz_class(denominator));
}

}  // namespace fiq
