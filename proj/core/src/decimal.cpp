#include <fiq/error.hpp>
#include <fiq/io.hpp>

#include <cmath>

namespace fiq::io {

namespace {

mpz_class pow10(long n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(n));
  return r;
}

// True when 10^e <= num/den.
bool at_least_pow10(const mpz_class& num, const mpz_class& den, long e) {
  return e >= 0 ? num >= den * pow10(e) : num * pow10(-e) >= den;
}

}  // namespace

std::string format_decimal(const Rational& value, int significant) {
  if (significant < 1) throw ArgumentError("at least one significant digit is required");
  if (sgn(value) == 0) return "0";

  Rational a = abs(value);
  const mpz_class& num = a.get_num();
  const mpz_class& den = a.get_den();

  // exponent = floor(log10(a)), found exactly from an estimate.
  const auto bits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                    static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  long exponent = static_cast<long>(std::floor(static_cast<double>(bits) * std::log10(2.0)));
  while (!at_least_pow10(num, den, exponent)) --exponent;
  while (at_least_pow10(num, den, exponent + 1)) ++exponent;

  // digits = round(a * 10^(significant - 1 - exponent)), half away from zero.
  const long k = significant - 1 - exponent;
  mpz_class n = k >= 0 ? num * pow10(k) : num;
  mpz_class d = k >= 0 ? den : den * pow10(-k);
  mpz_class digits = (2 * n + d) / (2 * d);
  if (digits == pow10(significant)) {
    digits /= 10;
    ++exponent;
  }

  std::string s = digits.get_str();
  while (s.size() > 1 && s.back() == '0') s.pop_back();

  std::string out = sgn(value) < 0 ? "-" : "";
  if (exponent < -4 || exponent >= significant) {
    out += s.substr(0, 1);
    if (s.size() > 1) out += "." + s.substr(1);
    const long mag = exponent < 0 ? -exponent : exponent;
    out += exponent < 0 ? "e-" : "e+";
    if (mag < 10) out += '0';
    out += std::to_string(mag);
  } else if (exponent >= 0) {
    const auto int_len = static_cast<std::size_t>(exponent + 1);
    if (s.size() <= int_len) {
      out += s + std::string(int_len - s.size(), '0');
    } else {
      out += s.substr(0, int_len) + "." + s.substr(int_len);
    }
  } else {
    out += "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + s;
  }
  return out;
}

}  // namespace fiq::io
