#pragma once

// Text formats: the JSON .fiq document, joint-law and marginal tables,
// histogram CSV, and audit reports.

#include <fiq/analysis.hpp>
#include <fiq/joint_law.hpp>
#include <fiq/number.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fiq::io {

/// Parses "a/b" or a non-negative integer, reduced. Throws ParseError.
Rational parse_rational(std::string_view text);

/// "a/b" in lowest terms, or just the numerator when the denominator is 1.
std::string format_rational(const Rational& value);

/// Decimal rounded to `significant` digits (half away from zero), printf
/// %g-style. Exact: no binary floating point is involved.
std::string format_decimal(const Rational& value, int significant = 12);

/// Parses a .fiq document:
///   {"propensities": ["0", "0", "1/2"], "tail": "fair", "unit": "m"}
/// "unit" is optional. Throws ParseError (syntax, malformed rational, unknown
/// tail) or RangeError (propensity outside [0, 1]); messages name the line
/// or field.
Fiq parse_fiq(std::string_view text);

/// Canonical document text; parse_fiq(serialize_fiq(q)) == q.
std::string serialize_fiq(const Fiq& q);

/// Reads and parses a file. Throws ResourceError if it cannot be read.
Fiq load_fiq(const std::filesystem::path& path);

/// Left-aligned columns separated by two spaces, one line per row.
std::string render_table(const std::vector<std::vector<std::string>>& rows);

std::string emit_joint_law(const JointLaw& law);
std::string emit_marginal(const WideMarginal& marginal);
std::string emit_histogram_csv(const Histogram& histogram);
std::string emit_audit_text(const AuditReport& report);
/// Same fields as emit_audit_text, as a JSON document.
std::string emit_audit_json(const AuditReport& report);

}  // namespace fiq::io
