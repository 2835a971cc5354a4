#include <fiq/error.hpp>
#include <fiq/oracle.hpp>

#include <bit>
#include <cmath>
#include <random>
#include <string>

namespace fiq::oracle {

namespace {

// Explicit bits of one operand over positions 1..depth, as 64-bit integers
// scaled by 2^depth.
struct Operand {
  std::uint64_t fixed = 0;              // bits that are certainly 1
  std::vector<std::uint64_t> masks;     // one per indeterminate bit
  std::vector<Rational> propensities;   // matching masks
  unsigned extension = 0;               // explicit fair bits replacing the tail
};

Operand split(const Fiq& q, std::size_t depth, unsigned extension_depth) {
  Operand op;
  for (std::size_t k = 1; k <= depth; ++k) {
    const Propensity p = q.at(k);
    const std::uint64_t mask = std::uint64_t{1} << (depth - k);
    if (p.is_one()) {
      op.fixed |= mask;
    } else if (!p.is_zero()) {
      op.masks.push_back(mask);
      op.propensities.push_back(p.value());
    }
  }
  op.extension = q.tail() == Tail::fair ? extension_depth : 0;
  return op;
}

// Realization number `index` of the indeterminate bits and its probability.
std::pair<std::uint64_t, Rational> realize(const Operand& op, std::uint64_t index) {
  std::uint64_t x = op.fixed;
  Rational weight = 1;
  for (std::size_t i = 0; i < op.masks.size(); ++i) {
    if ((index >> i) & 1) {
      x |= op.masks[i];
      weight *= op.propensities[i];
    } else {
      weight *= 1 - op.propensities[i];
    }
  }
  return {x, weight};
}

std::size_t checked_window(std::optional<std::size_t> window_depth, std::size_t depth) {
  const std::size_t w = window_depth.value_or(depth);
  if (w > depth) {
    throw ArgumentError("window depth " + std::to_string(w) + " exceeds the explicit depth " + std::to_string(depth));
  }
  return w;
}

void check_extension(unsigned extension_depth) {
  if (extension_depth < 1 || extension_depth > 62) {
    throw ArgumentError("extension depth must be between 1 and 62");
  }
}

void check_width(std::size_t bits) {
  if (bits > 63) {
    throw ResourceError("oracle values need " + std::to_string(bits) + " bits; at most 63 are supported");
  }
}

unsigned bit_length(std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v)); }

Rational power_of_two_inverse(unsigned n) {
  Rational r(mpz_class(1), mpz_class(1) << n);
  r.canonicalize();
  return r;
}

mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

// Run-length tally of keys that arrive in non-decreasing order.
class RunTally {
 public:
  void add(std::uint64_t key, std::uint64_t count) {
    if (!runs_.empty() && runs_.back().first == key) {
      runs_.back().second += count;
    } else {
      runs_.emplace_back(key, count);
    }
  }
  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& runs() const { return runs_; }

 private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> runs_;
};

void accumulate(std::map<mpz_class, Rational>& masses, const RunTally& tally, const Rational& weight,
                const Rational& unit) {
  for (const auto& [key, count] : tally.runs()) {
    masses[to_mpz(key)] += weight * unit * to_mpz(count);
  }
}

}  // namespace

void OracleConfig::validate() const {
  if (extension_depth < 1) throw ArgumentError("extension_depth must be at least 1");
  if (sample_count < 1) throw ArgumentError("sample_count must be at least 1");
}

JointLaw truncation_law_mul(const Fiq& q, std::uint64_t factor, std::optional<std::size_t> window_depth,
                            unsigned extension_depth, unsigned cap) {
  if (factor == 0) throw ArgumentError("multiplication factor must be a positive integer");
  check_extension(extension_depth);
  const std::size_t depth = q.depth();
  const std::size_t window = checked_window(window_depth, depth);
  const Operand op = split(q, depth, extension_depth);
  if (op.masks.size() + op.extension > cap) {
    throw ResourceError("oracle enumeration of " + std::to_string(op.masks.size() + op.extension) +
                        " bits exceeds the cap of " + std::to_string(cap));
  }
  check_width(depth + op.extension + bit_length(factor));

  const unsigned drop = static_cast<unsigned>(op.extension + depth - window);
  const std::uint64_t tail_values = std::uint64_t{1} << op.extension;
  const Rational unit = power_of_two_inverse(op.extension);

  std::map<mpz_class, Rational> masses;
  for (std::uint64_t index = 0; index < (std::uint64_t{1} << op.masks.size()); ++index) {
    const auto [x, weight] = realize(op, index);
    const std::uint64_t scaled = x << op.extension;
    RunTally tally;
    for (std::uint64_t u = 0; u < tail_values; ++u) {
      tally.add((factor * (scaled | u)) >> drop, 1);
    }
    accumulate(masses, tally, weight, unit);
  }
  return JointLaw::from_scaled(window, masses, TailNote::zero);
}

JointLaw truncation_law_add(const Fiq& q, const Fiq& r, std::optional<std::size_t> window_depth,
                            unsigned extension_depth, unsigned cap) {
  check_extension(extension_depth);
  const std::size_t depth = std::max(q.depth(), r.depth());
  const std::size_t window = checked_window(window_depth, depth);
  Operand a = split(q, depth, extension_depth);
  Operand b = split(r, depth, extension_depth);
  // Only one extension is looped over; the other collapses into carry classes.
  if (a.extension == 0 && b.extension != 0) std::swap(a, b);

  const std::size_t enumerated = a.masks.size() + b.masks.size() + a.extension;
  if (enumerated > cap) {
    throw ResourceError("oracle enumeration of " + std::to_string(enumerated) + " bits exceeds the cap of " +
                        std::to_string(cap));
  }
  const unsigned scale = a.extension;
  check_width(depth + scale + 1);

  const unsigned drop = static_cast<unsigned>(scale + depth - window);
  const std::uint64_t span = std::uint64_t{1} << scale;
  const Rational unit = power_of_two_inverse(a.extension + b.extension);

  std::map<mpz_class, Rational> masses;
  for (std::uint64_t ia = 0; ia < (std::uint64_t{1} << a.masks.size()); ++ia) {
    const auto [xa, wa] = realize(a, ia);
    for (std::uint64_t ib = 0; ib < (std::uint64_t{1} << b.masks.size()); ++ib) {
      const auto [xb, wb] = realize(b, ib);
      const std::uint64_t explicit_sum = (xa << scale) + (xb << scale);
      RunTally tally;
      for (std::uint64_t u = 0; u < span; ++u) {
        if (b.extension == 0) {
          tally.add((explicit_sum + u) >> drop, 1);
          continue;
        }
        // The 2^scale values v of b's extension split into those that keep
        // u + v below 2^scale and those that carry; the window cannot tell
        // members of a class apart, so one representative stands for each.
        tally.add((explicit_sum + u) >> drop, span - u);
        if (u > 0) tally.add((explicit_sum + u + (span - 1)) >> drop, u);
      }
      accumulate(masses, tally, Rational(wa * wb), unit);
    }
  }
  return JointLaw::from_scaled(window, masses, TailNote::zero);
}

SampleResult sample_law(const Fiq& q, const OperationSpec& op, const OracleConfig& config,
                        std::optional<std::size_t> window_depth) {
  config.validate();
  check_extension(config.extension_depth);

  const Fiq* addend = nullptr;
  std::uint64_t factor = 1;
  if (const auto* add = std::get_if<AddOp>(&op)) {
    addend = &add->addend;
  } else {
    factor = std::get<MulOp>(op).factor;
    if (factor == 0) throw ArgumentError("multiplication factor must be a positive integer");
  }

  const std::size_t depth = addend ? std::max(q.depth(), addend->depth()) : q.depth();
  const std::size_t window = checked_window(window_depth, depth);
  const unsigned ext = config.extension_depth;
  check_width(depth + ext + (addend ? 1 : bit_length(factor)));

  struct Draws {
    std::uint64_t fixed;
    std::vector<std::uint64_t> masks;
    std::vector<std::uint64_t> thresholds;
    bool fair_tail;
  };
  const auto prepare = [&](const Fiq& f) {
    const Operand o = split(f, depth, ext);
    Draws d{o.fixed, o.masks, {}, f.tail() == Tail::fair};
    for (const Rational& p : o.propensities) {
      const mpz_class t = (p.get_num() << 64) / p.get_den();
      d.thresholds.push_back(t.get_ui());
    }
    return d;
  };
  std::vector<Draws> operands{prepare(q)};
  if (addend) operands.push_back(prepare(*addend));

  std::mt19937_64 rng(config.seed);
  const unsigned drop = static_cast<unsigned>(ext + depth - window);
  SampleResult result;
  result.samples = config.sample_count;
  result.fractional_depth = window;

  for (std::uint64_t s = 0; s < config.sample_count; ++s) {
    std::uint64_t total = 0;
    for (const Draws& d : operands) {
      std::uint64_t x = d.fixed;
      for (std::size_t i = 0; i < d.masks.size(); ++i) {
        if (rng() < d.thresholds[i]) x |= d.masks[i];
      }
      std::uint64_t value = x << ext;
      if (d.fair_tail) value |= rng() >> (64 - ext);
      total += value;
    }
    if (!addend) total *= factor;
    ++result.pattern_counts[total >> drop];
  }

  std::size_t integer_bits = 0;
  for (const auto& [key, count] : result.pattern_counts) {
    integer_bits = std::max<std::size_t>(integer_bits, bit_length(key >> window));
  }
  const auto n = static_cast<double>(config.sample_count);
  for (long position = 1 - static_cast<long>(integer_bits); position <= static_cast<long>(window); ++position) {
    const auto bit_index = static_cast<unsigned>(static_cast<long>(window) - position);
    std::uint64_t ones = 0;
    for (const auto& [key, count] : result.pattern_counts) {
      if ((key >> bit_index) & 1) ones += count;
    }
    const double p = static_cast<double>(ones) / n;
    result.positions.push_back({position, ones, p, kConfidenceZ * std::sqrt(p * (1 - p) / n)});
  }
  return result;
}

}  // namespace fiq::oracle
