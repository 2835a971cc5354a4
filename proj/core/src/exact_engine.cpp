#include <fiq/error.hpp>
#include <fiq/exact_engine.hpp>

#include <algorithm>
#include <set>
#include <string>

namespace fiq {

namespace {

// An explicit bit whose realization is random: it adds `weight` (value scaled
// by 2^D) with probability `p`.
struct RandomBit {
  mpz_class weight;
  Rational p;
};

// Realizations of the explicit region: a deterministic base plus independent
// random bits, with a tail carry uniform on [0, tail_span) added at scale 1.
struct Enumeration {
  std::size_t depth = 0;
  mpz_class base = 0;
  std::vector<RandomBit> bits;
  std::uint64_t tail_span = 1;
};

void collect_bits(const Fiq& q, std::size_t depth, const mpz_class& multiplier, Enumeration& e) {
  for (std::size_t k = 1; k <= depth; ++k) {
    const Propensity p = q.at(k);
    if (p.is_zero()) continue;
    mpz_class weight = multiplier << static_cast<mp_bitcnt_t>(depth - k);
    if (p.is_one()) {
      e.base += weight;
    } else {
      e.bits.push_back({std::move(weight), p.value()});
    }
  }
}

void check_limits(const Enumeration& e, const ExactLimits& limits) {
  if (e.bits.size() > limits.max_indeterminate_bits) {
    throw ResourceError(std::to_string(e.bits.size()) + " indeterminate bits exceed the enumeration limit of " +
                        std::to_string(limits.max_indeterminate_bits));
  }
}

std::size_t resolve_window(std::optional<std::size_t> window_depth, std::size_t depth) {
  const std::size_t w = window_depth.value_or(depth);
  if (w > depth) {
    throw ArgumentError("window depth " + std::to_string(w) + " exceeds the explicit depth " + std::to_string(depth) +
                        "; deeper result bits are not represented exactly");
  }
  return w;
}

// Adds mass * (share of [value, value + span) falling in each window cell).
void deposit(std::map<mpz_class, Rational>& masses, const mpz_class& value, std::uint64_t span, mp_bitcnt_t drop,
             const Rational& mass, std::uint64_t max_cells) {
  const mpz_class last = value + (span - 1);
  const mpz_class first_key = value >> drop;
  const mpz_class last_key = last >> drop;
  if (last_key - first_key >= max_cells) {
    throw ResourceError("tail carry spreads over too many window cells");
  }
  const mpz_class cell = mpz_class(1) << drop;
  for (mpz_class key = first_key; key <= last_key; ++key) {
    const mpz_class lo = std::max<mpz_class>(key * cell, value);
    const mpz_class hi = std::min<mpz_class>((key + 1) * cell - 1, last);
    Rational share(mpz_class(hi - lo + 1), mpz_class(span));
    share.canonicalize();
    masses[key] += mass * share;
  }
}

JointLaw enumerate(const Enumeration& e, std::size_t window, TailNote note, const ExactLimits& limits) {
  check_limits(e, limits);
  const auto drop = static_cast<mp_bitcnt_t>(e.depth - window);
  const std::uint64_t max_cells = std::uint64_t{1} << std::min(limits.max_indeterminate_bits, 62u);

  std::map<mpz_class, Rational> masses;
  // Depth-first over the random bits; weights multiply along the path.
  struct Frame {
    std::size_t index;
    mpz_class value;
    Rational mass;
  };
  std::vector<Frame> stack;
  stack.push_back({0, e.base, Rational(1)});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.index == e.bits.size()) {
      deposit(masses, f.value, e.tail_span, drop, f.mass, max_cells);
      continue;
    }
    const RandomBit& bit = e.bits[f.index];
    stack.push_back({f.index + 1, f.value + bit.weight, f.mass * bit.p});
    stack.push_back({f.index + 1, std::move(f.value), f.mass * (1 - bit.p)});
  }
  return JointLaw::from_scaled(window, masses, note);
}

void require_position(const JointLaw& law, long position) {
  if (!law.window().contains(position)) {
    throw ArgumentError("position " + std::to_string(position) + " is outside the law's window [" +
                        std::to_string(law.window().top_position()) + ", " +
                        std::to_string(law.window().fractional_depth) + "]");
  }
}

}  // namespace

const char* to_string(TailCarrySpec spec) noexcept {
  switch (spec) {
    case TailCarrySpec::none:
      return "none";
    case TailCarrySpec::bernoulli_half:
      return "bernoulli_half";
    case TailCarrySpec::uniform_0_to_Lminus1:
      return "uniform_0_to_Lminus1";
  }
  return "?";
}

TailCarrySpec tail_carry_for_add(Tail q, Tail r) noexcept {
  // A single fair tail added to a zero one stays below 2^-D: no carry.
  return q == Tail::fair && r == Tail::fair ? TailCarrySpec::bernoulli_half : TailCarrySpec::none;
}

TailCarrySpec tail_carry_for_mul(Tail q) noexcept {
  return q == Tail::fair ? TailCarrySpec::uniform_0_to_Lminus1 : TailCarrySpec::none;
}

JointLaw joint_add(const Fiq& q, const Fiq& r, std::optional<std::size_t> window_depth, const ExactLimits& limits) {
  Enumeration e;
  e.depth = std::max(q.depth(), r.depth());
  const std::size_t window = resolve_window(window_depth, e.depth);
  collect_bits(q, e.depth, 1, e);
  collect_bits(r, e.depth, 1, e);

  const TailCarrySpec carry = tail_carry_for_add(q.tail(), r.tail());
  e.tail_span = carry == TailCarrySpec::bernoulli_half ? 2 : 1;

  const bool any_fair = q.tail() == Tail::fair || r.tail() == Tail::fair;
  return enumerate(e, window, any_fair ? TailNote::fair_marginals_only : TailNote::zero, limits);
}

JointLaw joint_mul_constant(const Fiq& q, std::uint64_t factor, std::optional<std::size_t> window_depth,
                            const ExactLimits& limits) {
  if (factor == 0) {
    throw ArgumentError("multiplication factor must be a positive integer");
  }
  Enumeration e;
  e.depth = q.depth();
  const std::size_t window = resolve_window(window_depth, e.depth);
  mpz_class multiplier;
  mpz_import(multiplier.get_mpz_t(), 1, 1, sizeof(factor), 0, 0, &factor);
  collect_bits(q, e.depth, multiplier, e);

  const TailCarrySpec carry = tail_carry_for_mul(q.tail());
  e.tail_span = carry == TailCarrySpec::uniform_0_to_Lminus1 ? factor : 1;
  return enumerate(e, window, q.tail() == Tail::fair ? TailNote::uniform_independent : TailNote::zero, limits);
}

Propensity marginal_of(const JointLaw& law, long position) {
  require_position(law, position);
  Rational p = 0;
  for (const auto& [pattern, mass] : law.support()) {
    if (pattern.at(position) == 1) p += mass.value();
  }
  return Propensity(p);
}

Propensity pattern_propensity(const JointLaw& law, const std::map<long, int>& assignment) {
  for (const auto& [position, bit] : assignment) {
    require_position(law, position);
    if (bit != 0 && bit != 1) throw ArgumentError("assigned values must be bits");
  }
  Rational p = 0;
  for (const auto& [pattern, mass] : law.support()) {
    const bool consistent = std::all_of(assignment.begin(), assignment.end(),
                                        [&](const auto& entry) { return pattern.at(entry.first) == entry.second; });
    if (consistent) p += mass.value();
  }
  return Propensity(p);
}

WideMarginal project_to_marginal(const JointLaw& law) {
  const Window& w = law.window();
  std::vector<Propensity> integer;
  for (std::size_t i = 0; i < w.integer_bits; ++i) integer.push_back(marginal_of(law, -static_cast<long>(i)));
  std::vector<Propensity> fractional;
  for (std::size_t k = 1; k <= w.fractional_depth; ++k) fractional.push_back(marginal_of(law, static_cast<long>(k)));
  return WideMarginal(std::move(integer), std::move(fractional),
                      law.tail_note() == TailNote::zero ? Tail::zero : Tail::fair);
}

IndependenceDefect independence_defect(const JointLaw& law, std::span<const long> positions) {
  const std::set<long> distinct(positions.begin(), positions.end());
  if (distinct.size() < 2) {
    throw ArgumentError("independence defect needs at least two distinct positions");
  }
  if (distinct.size() > 20) {
    throw ResourceError("independence defect over more than 20 positions");
  }
  const std::vector<long> pos(distinct.begin(), distinct.end());
  std::vector<Rational> ones;
  for (long p : pos) ones.push_back(marginal_of(law, p).value());

  // Joint mass per assignment, indexed by the bits of pos in order.
  std::vector<Rational> joint(std::size_t{1} << pos.size());
  for (const auto& [pattern, mass] : law.support()) {
    std::size_t index = 0;
    for (long p : pos) index = (index << 1) | static_cast<std::size_t>(pattern.at(p));
    joint[index] += mass.value();
  }

  Rational worst = 0;
  for (std::size_t index = 0; index < joint.size(); ++index) {
    Rational product = 1;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const bool bit = (index >> (pos.size() - 1 - i)) & 1;
      product *= bit ? ones[i] : Rational(1 - ones[i]);
    }
    const Rational d = abs(joint[index] - product);
    if (d > worst) worst = d;
  }
  return {worst, sgn(worst) == 0};
}

}  // namespace fiq
