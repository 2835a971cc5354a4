#include <fiq/error.hpp>
#include <fiq/joint_law.hpp>

#include <algorithm>

namespace fiq {

BitPattern::BitPattern(Window window, std::vector<std::uint8_t> bits) : window_(window), bits_(std::move(bits)) {
  if (bits_.size() != window_.width()) {
    throw ArgumentError("bit pattern width does not match its window");
  }
  for (auto b : bits_) {
    if (b > 1) throw ArgumentError("bit pattern entries must be 0 or 1");
  }
}

BitPattern BitPattern::from_scaled(const mpz_class& scaled, Window window) {
  if (sgn(scaled) < 0) {
    throw ArgumentError("bit patterns encode non-negative values only");
  }
  const std::size_t width = window.width();
  if (mpz_sizeinbase(scaled.get_mpz_t(), 2) > width && sgn(scaled) != 0) {
    throw ArgumentError("value " + scaled.get_str() + " does not fit in the window");
  }
  std::vector<std::uint8_t> bits(width);
  for (std::size_t i = 0; i < width; ++i) {
    bits[width - 1 - i] = static_cast<std::uint8_t>(mpz_tstbit(scaled.get_mpz_t(), i));
  }
  return BitPattern(window, std::move(bits));
}

int BitPattern::at(long position) const {
  if (!window_.contains(position)) {
    throw ArgumentError("position " + std::to_string(position) + " is outside the window");
  }
  return bits_[static_cast<std::size_t>(position - window_.top_position())];
}

mpz_class BitPattern::scaled_value() const {
  mpz_class v = 0;
  for (auto b : bits_) {
    v <<= 1;
    v += b;
  }
  return v;
}

std::string BitPattern::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < window_.integer_bits; ++i) s += static_cast<char>('0' + bits_[i]);
  if (window_.integer_bits == 0) s += '0';
  s += '.';
  for (std::size_t i = window_.integer_bits; i < bits_.size(); ++i) s += static_cast<char>('0' + bits_[i]);
  return s;
}

const char* to_string(TailNote note) noexcept {
  switch (note) {
    case TailNote::uniform_independent:
      return "uniform_independent";
    case TailNote::fair_marginals_only:
      return "fair_marginals_only";
    case TailNote::zero:
      return "zero";
  }
  return "?";
}

JointLaw::JointLaw(Window window, std::vector<std::pair<BitPattern, Propensity>> support, TailNote note)
    : window_(window), support_(std::move(support)), note_(note) {
  std::sort(support_.begin(), support_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Rational total = 0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const auto& [pattern, p] = support_[i];
    if (!(pattern.window() == window_)) {
      throw ArgumentError("pattern " + pattern.to_string() + " does not belong to the law's window");
    }
    if (p.is_zero()) {
      throw ArgumentError("joint law support entries must have positive probability");
    }
    if (i > 0 && support_[i - 1].first == pattern) {
      throw ArgumentError("duplicate pattern " + pattern.to_string() + " in joint law");
    }
    total += p.value();
  }
  if (cmp(total, 1) != 0) {
    throw ArgumentError("joint law probabilities sum to " + total.get_str() + ", not 1");
  }
}

JointLaw JointLaw::from_scaled(std::size_t fractional_depth, const std::map<mpz_class, Rational>& masses,
                               TailNote note) {
  std::size_t integer_bits = 0;
  for (const auto& [key, mass] : masses) {
    if (sgn(mass) == 0) continue;
    const mpz_class integer_part = key >> static_cast<mp_bitcnt_t>(fractional_depth);
    if (sgn(integer_part) > 0) {
      integer_bits = std::max(integer_bits, mpz_sizeinbase(integer_part.get_mpz_t(), 2));
    }
  }
  const Window window{integer_bits, fractional_depth};
  std::vector<std::pair<BitPattern, Propensity>> support;
  support.reserve(masses.size());
  for (const auto& [key, mass] : masses) {
    if (sgn(mass) == 0) continue;
    support.emplace_back(BitPattern::from_scaled(key, window), Propensity(mass));
  }
  return JointLaw(window, std::move(support), note);
}

std::map<mpz_class, Rational> JointLaw::scaled_masses() const {
  std::map<mpz_class, Rational> out;
  for (const auto& [pattern, p] : support_) out.emplace(pattern.scaled_value(), p.value());
  return out;
}

Rational total_variation(const JointLaw& a, const JointLaw& b) {
  if (a.window().fractional_depth != b.window().fractional_depth) {
    throw ArgumentError("total variation needs laws over the same fractional depth");
  }
  std::map<mpz_class, Rational> diff = a.scaled_masses();
  for (const auto& [key, mass] : b.scaled_masses()) diff[key] -= mass;
  Rational sum = 0;
  for (const auto& [key, d] : diff) sum += abs(d);
  return sum / 2;
}

}  // namespace fiq
