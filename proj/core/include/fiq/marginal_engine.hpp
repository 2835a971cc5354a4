#pragma once

// Per-bit propensity propagation. Every addition treats the addends' bits
// as independent, including the shifted copies summed by
// mul_constant_marginal, which in reality share bits.

#include <fiq/number.hpp>

#include <cstdint>

namespace fiq {

/// Carry entering the deepest explicit position.
enum class CarryModel {
  truncate_zero,          // carry-in 0
  fair_tail_fixed_point,  // carry-in 1/2, the fixed point for two fair tails
};

/// Order in which the shifted copies of a multiplication are accumulated.
enum class ShiftOrder {
  increasing_significance,
  decreasing_significance,
};

const char* to_string(CarryModel model) noexcept;
const char* to_string(ShiftOrder order) noexcept;

/// fair_tail_fixed_point for fair tails, truncate_zero otherwise.
CarryModel default_carry_model(Tail a, Tail b) noexcept;

struct AdderRow {
  int sum;
  int carry;
  friend bool operator==(const AdderRow&, const AdderRow&) = default;
};

/// Binary full adder. Throws ArgumentError if an input is not 0 or 1.
AdderRow adder_truth_row(int q_bit, int r_bit, int carry_in);

/// Propensity of the sum bit: q + r + c - 2(qr + qc + rc) + 4qrc.
Propensity propagate_sum(const Propensity& q, const Propensity& r, const Propensity& carry_in);

/// Propensity of the carry out: qr + qc + rc - 2qrc.
Propensity propagate_carry(const Propensity& q, const Propensity& r, const Propensity& carry_in);

/// Adds two marginals from the deepest explicit position upward.
///
/// A shorter operand is padded with its own tail value. Under
/// fair_tail_fixed_point both tails must be fair (ContractError otherwise)
/// and the result tail is fair. Under truncate_zero the carry-in is 0 and
/// the result tail is fair if either input tail is fair. A nonzero final
/// carry becomes a new integer position; zero-propensity leading integer
/// positions are trimmed.
WideMarginal add_marginal(const WideMarginal& q, const WideMarginal& r, CarryModel model);

/// Multiplies by 2^places: the propensity at position k moves to k - places.
WideMarginal shift(const WideMarginal& q, std::size_t places);

/// Multiplication by a positive integer as a left-associated chain of
/// add_marginal over shifted copies, one per set bit of factor.
/// Throws ArgumentError for factor 0.
WideMarginal mul_constant_marginal(const Fiq& q, std::uint64_t factor, CarryModel model,
                                   ShiftOrder order = ShiftOrder::increasing_significance);

}  // namespace fiq
