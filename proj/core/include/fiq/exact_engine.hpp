#pragma once

// Exact joint laws of arithmetic results.
//
// Explicit indeterminate bits are enumerated jointly; the infinite fair tail
// enters as an exactly characterized carry into the deepest explicit
// position:
//   - two fair tails added: carry is Bernoulli(1/2), independent of the rest;
//   - one fair tail times L: carry is uniform on {0, ..., L-1}, and the
//     remaining fraction is again uniform and independent.

#include <fiq/joint_law.hpp>
#include <fiq/number.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>

namespace fiq {

enum class TailCarrySpec {
  none,                   // zero tails, or a fair tail added to a zero one
  bernoulli_half,         // two independent fair tails added
  uniform_0_to_Lminus1,   // a fair tail multiplied by L
};

const char* to_string(TailCarrySpec spec) noexcept;

TailCarrySpec tail_carry_for_add(Tail q, Tail r) noexcept;
TailCarrySpec tail_carry_for_mul(Tail q) noexcept;

struct ExactLimits {
  /// Maximum number of explicit bits with propensity strictly inside (0, 1).
  unsigned max_indeterminate_bits = 24;
};

/// Joint law of Q + R for independent Q and R. The window covers all integer
/// positions and fractional positions 1..window_depth, which defaults to
/// max(M_Q, M_R) and may not exceed it.
JointLaw joint_add(const Fiq& q, const Fiq& r, std::optional<std::size_t> window_depth = std::nullopt,
                   const ExactLimits& limits = {});

/// Joint law of L * Q. The window defaults to the explicit depth of Q and may
/// not exceed it.
JointLaw joint_mul_constant(const Fiq& q, std::uint64_t factor,
                            std::optional<std::size_t> window_depth = std::nullopt,
                            const ExactLimits& limits = {});

/// Pr[bit at position = 1]. Throws ArgumentError outside the window.
Propensity marginal_of(const JointLaw& law, long position);

/// Total probability of the patterns consistent with position -> bit.
Propensity pattern_propensity(const JointLaw& law, const std::map<long, int>& assignment);

/// Per-position marginals of the whole window. The tail is fair unless the
/// law's tail note is zero.
WideMarginal project_to_marginal(const JointLaw& law);

struct IndependenceDefect {
  Rational max_defect;
  bool independent;
};

/// max over assignments a of |Pr[a] - prod_i Pr[bit_i = a_i]| for the given
/// positions (at least two, distinct, inside the window).
IndependenceDefect independence_defect(const JointLaw& law, std::span<const long> positions);

}  // namespace fiq
