#pragma once

#include <fiq/propensity.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fiq {

/// Bit positions covered by a joint law: integer positions 0, -1, ...,
/// -(integer_bits - 1) and fractional positions 1..fractional_depth.
struct Window {
  std::size_t integer_bits = 0;
  std::size_t fractional_depth = 0;

  std::size_t width() const noexcept { return integer_bits + fractional_depth; }
  /// Most significant position in the window (1 when there are no integer bits).
  long top_position() const noexcept { return 1 - static_cast<long>(integer_bits); }
  bool contains(long position) const noexcept {
    return position >= top_position() && position <= static_cast<long>(fractional_depth);
  }

  friend bool operator==(const Window&, const Window&) = default;
};

/// One realization of the bits in a window, most significant bit first.
class BitPattern {
 public:
  BitPattern() = default;
  BitPattern(Window window, std::vector<std::uint8_t> bits);

  /// The pattern whose value is scaled / 2^fractional_depth. Throws
  /// ArgumentError if the value needs more than window.integer_bits integer bits.
  static BitPattern from_scaled(const mpz_class& scaled, Window window);

  const Window& window() const noexcept { return window_; }
  std::size_t width() const noexcept { return bits_.size(); }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  /// Bit at a position inside the window.
  int at(long position) const;

  /// Value scaled by 2^fractional_depth.
  mpz_class scaled_value() const;

  /// Integer bits, a point, then the fractional bits ("0" before the point
  /// when there are no integer bits).
  std::string to_string() const;

  friend bool operator==(const BitPattern&, const BitPattern&) = default;
  /// Same-window patterns order by value.
  friend std::strong_ordering operator<=>(const BitPattern& a, const BitPattern& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  Window window_;
  std::vector<std::uint8_t> bits_;
};

/// How the bits beyond the window behave.
enum class TailNote {
  uniform_independent,   // fair and independent of the window
  fair_marginals_only,   // each bit fair, but jointly correlated with the window
  zero,                  // deterministically 0
};

const char* to_string(TailNote note) noexcept;

/// Exact probability law over the bit patterns of a window.
///
/// Invariants: probabilities are positive and sum to exactly 1, patterns are
/// distinct and belong to the window. The support is kept sorted by value.
class JointLaw {
 public:
  JointLaw(Window window, std::vector<std::pair<BitPattern, Propensity>> support, TailNote note);

  /// Builds a law from masses keyed by value * 2^fractional_depth. The
  /// integer window is sized to the largest value with positive mass.
  static JointLaw from_scaled(std::size_t fractional_depth,
                              const std::map<mpz_class, Rational>& masses, TailNote note);

  const Window& window() const noexcept { return window_; }
  const std::vector<std::pair<BitPattern, Propensity>>& support() const noexcept { return support_; }
  TailNote tail_note() const noexcept { return note_; }

  /// Masses keyed by scaled value, the window-independent form of the law.
  std::map<mpz_class, Rational> scaled_masses() const;

  friend bool operator==(const JointLaw&, const JointLaw&) = default;

 private:
  Window window_;
  std::vector<std::pair<BitPattern, Propensity>> support_;
  TailNote note_;
};

/// Half the L1 distance between two laws over the same fractional depth.
/// Patterns are matched by value, so integer windows may differ.
Rational total_variation(const JointLaw& a, const JointLaw& b);

}  // namespace fiq
