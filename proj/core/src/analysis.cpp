#include <fiq/analysis.hpp>
#include <fiq/error.hpp>

#include <bit>
#include <cmath>
#include <stdexcept>

namespace fiq {

double bit_entropy(const Propensity& q) {
  if (q.is_deterministic()) return 0.0;
  const double p = q.to_double();
  // log1p keeps the complement accurate for p near 0.
  const double log_p = std::log2(p);
  const double log_not_p = std::log1p(-p) / std::log(2.0);
  return -p * log_p - (1 - p) * log_not_p;
}

double information_content(const WideMarginal& q) {
  double bits = 0;
  for (const auto& p : q.integer_propensities()) bits += 1 - bit_entropy(p);
  for (const auto& p : q.fractional_propensities()) bits += 1 - bit_entropy(p);
  return bits;
}

double joint_entropy(const JointLaw& law) {
  double h = 0;
  for (const auto& [pattern, p] : law.support()) {
    const double v = p.to_double();
    h -= v * std::log2(v);
  }
  return h;
}

double marginal_entropy_sum(const JointLaw& law) {
  double h = 0;
  for (long pos = law.window().top_position(); pos <= static_cast<long>(law.window().fractional_depth); ++pos) {
    h += bit_entropy(marginal_of(law, pos));
  }
  return h;
}

namespace {

// Information over the positions of w, reading positions outside the
// marginal's explicit range from its tail.
double information_over(const WideMarginal& m, const Window& w) {
  double bits = 0;
  for (long pos = w.top_position(); pos <= static_cast<long>(w.fractional_depth); ++pos) {
    bits += 1 - bit_entropy(m.at(pos));
  }
  return bits;
}

}  // namespace

AuditReport unit_change_audit(const Fiq& q, std::uint64_t factor, std::optional<std::string> new_unit,
                              const ExactLimits& limits) {
  if (factor == 0) throw ArgumentError("multiplication factor must be a positive integer");

  AuditReport report{.input = q,
                     .factor = factor,
                     .model = default_carry_model(q.tail(), q.tail()),
                     .unit_label = std::move(new_unit),
                     .marginal_engine = {},
                     .exact_marginals = {},
                     .exact_law = joint_mul_constant(q, factor, std::nullopt, limits),
                     .pair_defects = {}};
  if (!report.unit_label && q.unit_label()) {
    report.unit_label = *q.unit_label() + "/" + std::to_string(factor);
  }

  report.marginal_engine = mul_constant_marginal(q, factor, report.model);
  report.exact_marginals = project_to_marginal(report.exact_law);
  report.marginals_disagree = !equivalent(report.marginal_engine, report.exact_marginals);

  const Window& w = report.exact_law.window();
  for (long i = w.top_position(); i <= static_cast<long>(w.fractional_depth); ++i) {
    for (long j = i + 1; j <= static_cast<long>(w.fractional_depth); ++j) {
      const long pair[] = {i, j};
      IndependenceDefect d = independence_defect(report.exact_law, pair);
      if (!d.independent) report.dependence_detected = true;
      report.pair_defects.push_back({i, j, std::move(d.max_defect)});
    }
  }

  report.joint_entropy_bits = joint_entropy(report.exact_law);
  report.marginal_entropy_sum_bits = marginal_entropy_sum(report.exact_law);
  if (report.joint_entropy_bits > report.marginal_entropy_sum_bits + kEntropyTolerance) {
    throw std::logic_error("joint entropy exceeds the sum of marginal entropies");
  }

  report.information_before = information_content(q);
  report.information_after_marginal_engine = information_over(report.marginal_engine, w);
  report.information_after_exact = information_over(report.exact_marginals, w);
  return report;
}

Rational Histogram::truncation_bound() const {
  Rational bound(mpz_class(bin_count), mpz_class(2) * (mpz_class(1) << depth));
  bound.canonicalize();
  return bound;
}

Histogram digit_histogram(const Fiq& q, unsigned depth, std::uint64_t bins) {
  if (depth == 0) throw ArgumentError("histogram depth must be positive");
  if (bins == 0 || !std::has_single_bit(bins)) throw ArgumentError("bin count must be a power of two");
  const auto bin_bits = static_cast<unsigned>(std::countr_zero(bins));
  if (bin_bits > depth) throw ArgumentError("more bins than distinct values at this depth");
  if (bin_bits > 26) throw ResourceError("bin count too large");

  // Bin i collects the values whose leading bin_bits digits spell i; deeper
  // digits never cross a bin edge.
  std::vector<Rational> masses{Rational(1)};
  for (unsigned k = 1; k <= bin_bits; ++k) {
    const Rational p = q.at(k).value();
    const Rational not_p = 1 - p;
    std::vector<Rational> next(masses.size() * 2);
    for (std::size_t i = 0; i < masses.size(); ++i) {
      next[2 * i] = masses[i] * not_p;
      next[2 * i + 1] = masses[i] * p;
    }
    masses = std::move(next);
  }
  return Histogram{depth, bins, std::move(masses)};
}

}  // namespace fiq
