#pragma once

// Brute-force references for the engines.
//
// Fair tails are replaced by extension_depth explicit fair bits followed by
// a zero tail, and every realization is evaluated with plain 64-bit integer
// arithmetic on value * 2^(D + E). Nothing here calls into the engines.
//
// Sampling uses std::mt19937_64 seeded with the 64-bit seed; its output
// sequence is fixed by the C++ standard. A bit with propensity q is 1 when
// the next 64-bit draw is below floor(q * 2^64) (exact for dyadic q); an
// E-bit fair extension takes the top E bits of one draw.

#include <fiq/joint_law.hpp>
#include <fiq/number.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace fiq::oracle {

struct OracleConfig {
  unsigned extension_depth = 16;
  std::uint64_t sample_count = 1'000'000;
  std::uint64_t seed = 0;

  /// Throws ArgumentError unless extension_depth >= 1 and sample_count >= 1.
  void validate() const;
};

/// Limit on explicit indeterminate bits plus extension bits per operand.
inline constexpr unsigned kDefaultEnumerationCap = 24;

/// Truncated law of Q + R. Window semantics match fiq::joint_add.
JointLaw truncation_law_add(const Fiq& q, const Fiq& r, std::optional<std::size_t> window_depth,
                            unsigned extension_depth, unsigned cap = kDefaultEnumerationCap);

/// Truncated law of L * Q. Window semantics match fiq::joint_mul_constant.
JointLaw truncation_law_mul(const Fiq& q, std::uint64_t factor, std::optional<std::size_t> window_depth,
                            unsigned extension_depth, unsigned cap = kDefaultEnumerationCap);

struct AddOp {
  Fiq addend;
};
struct MulOp {
  std::uint64_t factor = 1;
};
using OperationSpec = std::variant<AddOp, MulOp>;

struct PositionEstimate {
  long position;
  std::uint64_t ones;
  double estimate;
  /// 4 * sqrt(p(1-p)/n).
  double half_width;
};

struct SampleResult {
  std::uint64_t samples = 0;
  std::size_t fractional_depth = 0;
  /// Most significant position first.
  std::vector<PositionEstimate> positions;
  /// Tally per window pattern, keyed by value * 2^fractional_depth.
  std::map<std::uint64_t, std::uint64_t> pattern_counts;
};

inline constexpr double kConfidenceZ = 4.0;

SampleResult sample_law(const Fiq& q, const OperationSpec& op, const OracleConfig& config,
                        std::optional<std::size_t> window_depth = std::nullopt);

}  // namespace fiq::oracle
