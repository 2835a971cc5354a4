#pragma once

#include <fiq/exact_engine.hpp>
#include <fiq/joint_law.hpp>
#include <fiq/marginal_engine.hpp>
#include <fiq/number.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fiq {

/// Tolerance for comparisons between real-valued information metrics.
inline constexpr double kEntropyTolerance = 1e-9;

/// Binary entropy in bits, with H(0) = H(1) = 0.
double bit_entropy(const Propensity& q);

/// Sum over explicit positions of 1 - H(q_k); the fair tail adds nothing.
double information_content(const WideMarginal& q);

/// Shannon entropy of the window law, in bits.
double joint_entropy(const JointLaw& law);

/// Sum of the per-position entropies of the window's marginals, in bits.
double marginal_entropy_sum(const JointLaw& law);

struct PairDefect {
  long first;
  long second;
  Rational defect;
};

/// Everything the unit-change audit of Q' = L * Q reports.
struct AuditReport {
  Fiq input;
  std::uint64_t factor = 1;
  CarryModel model = CarryModel::fair_tail_fixed_point;
  std::optional<std::string> unit_label;

  WideMarginal marginal_engine;
  WideMarginal exact_marginals;
  JointLaw exact_law;
  std::vector<PairDefect> pair_defects;

  double joint_entropy_bits = 0;
  double marginal_entropy_sum_bits = 0;
  double information_before = 0;
  /// Both measured over the positions of exact_law.window().
  double information_after_marginal_engine = 0;
  double information_after_exact = 0;

  bool marginals_disagree = false;
  bool dependence_detected = false;

  /// Information a per-bit description of Q' cannot hold:
  /// marginal_entropy_sum_bits - joint_entropy_bits.
  double dependence_information_bits() const { return marginal_entropy_sum_bits - joint_entropy_bits; }
};

/// Runs both engines on L * Q and compares them. Without new_unit, a labelled
/// input gets "<unit>/L".
AuditReport unit_change_audit(const Fiq& q, std::uint64_t factor,
                              std::optional<std::string> new_unit = std::nullopt,
                              const ExactLimits& limits = {});

/// Distribution of sum_k Q_k 2^-k over equal bins, bits taken independent
/// and the tail truncated at depth.
struct Histogram {
  unsigned depth = 0;
  std::uint64_t bin_count = 0;
  std::vector<Rational> masses;

  /// Bound on bin-mass error from truncating at depth: 2^-depth * bins / 2.
  Rational truncation_bound() const;
};

/// bins must be a power of two no larger than 2^depth (ArgumentError).
Histogram digit_histogram(const Fiq& q, unsigned depth, std::uint64_t bins);

}  // namespace fiq
