#pragma once

#include <fiq/propensity.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fiq {

/// What lies beyond the explicit propensities: fair bits (1/2 each, no
/// information) or deterministic zeros.
enum class Tail { fair, zero };

const char* to_string(Tail tail) noexcept;

/// Propensity of a single tail bit.
Propensity tail_value(Tail tail);

/// A finite information quantity 0.Q1 Q2 Q3 ... in [0, 1].
///
/// Position k >= 1 has weight 2^-k and propensity q_k for k <= M; every
/// deeper position follows the tail. An empty list with a fair tail is the
/// totally unknown quantity.
class Fiq {
 public:
  Fiq() = default;
  explicit Fiq(std::vector<Propensity> propensities, Tail tail = Tail::fair,
               std::optional<std::string> unit_label = std::nullopt);

  /// M, the number of explicit positions.
  std::size_t depth() const noexcept { return propensities_.size(); }
  const std::vector<Propensity>& propensities() const noexcept { return propensities_; }
  Tail tail() const noexcept { return tail_; }
  const std::optional<std::string>& unit_label() const noexcept { return unit_label_; }

  /// Propensity at fractional position k >= 1 (tail value beyond M).
  Propensity at(std::size_t position) const;

  Fiq with_unit(std::optional<std::string> label) const;

  friend bool operator==(const Fiq&, const Fiq&) = default;

 private:
  std::vector<Propensity> propensities_;
  Tail tail_ = Tail::fair;
  std::optional<std::string> unit_label_;
};

/// Validates raw rationals into a Fiq. Trailing explicit 1/2 entries are
/// kept as given. Throws RangeError for entries outside [0, 1].
Fiq fiq_validate(std::span<const Rational> raw, Tail tail,
                 std::optional<std::string> unit_label = std::nullopt);

/// Marginal bit propensities over integer and fractional positions.
///
/// Integer position j <= 0 has weight 2^-j and is stored at index -j;
/// integer positions past the list are deterministically 0. Fractional
/// positions behave as in Fiq.
class WideMarginal {
 public:
  WideMarginal() = default;
  WideMarginal(std::vector<Propensity> integer_propensities,
               std::vector<Propensity> fractional_propensities, Tail tail);
  // Implicit: every Fiq is a WideMarginal without integer bits.
  WideMarginal(const Fiq& q);  // NOLINT(google-explicit-constructor)

  const std::vector<Propensity>& integer_propensities() const noexcept { return integer_; }
  const std::vector<Propensity>& fractional_propensities() const noexcept { return fractional_; }
  Tail tail() const noexcept { return tail_; }

  std::size_t integer_bits() const noexcept { return integer_.size(); }
  std::size_t fractional_depth() const noexcept { return fractional_.size(); }

  /// Propensity at any position (integer: j <= 0, fractional: k >= 1).
  Propensity at(long position) const;

  /// Structural equality: same lists and tail.
  friend bool operator==(const WideMarginal&, const WideMarginal&) = default;

 private:
  std::vector<Propensity> integer_;
  std::vector<Propensity> fractional_;
  Tail tail_ = Tail::fair;
};

/// True when both describe the same propensity at every position, whatever
/// the explicit list lengths.
bool equivalent(const WideMarginal& a, const WideMarginal& b);

}  // namespace fiq
