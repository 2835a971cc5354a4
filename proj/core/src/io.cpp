#include <fiq/error.hpp>
#include <fiq/io.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fiq::io {

namespace {

using ordered_json = nlohmann::ordered_json;

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 12);
  return std::string(buf, res.ptr);
}

// Exact decimal expansion of i / 2^bits.
std::string format_dyadic(std::uint64_t i, unsigned bits) {
  if (bits == 0) return std::to_string(i);
  mpz_class scaled;
  mpz_ui_pow_ui(scaled.get_mpz_t(), 5, bits);
  scaled *= static_cast<unsigned long>(i);
  std::string s = scaled.get_str();
  if (s.size() <= bits) s = std::string(bits + 1 - s.size(), '0') + s;
  s.insert(s.size() - bits, ".");
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::vector<long> positions_of(const WideMarginal& m) {
  std::vector<long> out;
  for (long pos = 1 - static_cast<long>(m.integer_bits()); pos <= static_cast<long>(m.fractional_depth()); ++pos) {
    if (pos == 0 && m.integer_bits() == 0) continue;
    out.push_back(pos);
  }
  return out;
}

ordered_json marginal_json(const WideMarginal& m) {
  ordered_json positions = ordered_json::array();
  for (long pos : positions_of(m)) {
    positions.push_back({{"position", pos}, {"propensity", format_rational(m.at(pos).value())}});
  }
  return {{"integer_bits", m.integer_bits()},
          {"fractional_depth", m.fractional_depth()},
          {"tail", to_string(m.tail())},
          {"positions", positions}};
}

std::string marginal_lines(const WideMarginal& m, const std::string& indent) {
  std::vector<std::vector<std::string>> rows;
  for (long pos : positions_of(m)) {
    const Rational p = m.at(pos).value();
    rows.push_back({indent + "position " + std::to_string(pos) + ":", format_rational(p), format_decimal(p)});
  }
  rows.push_back({indent + "tail:", to_string(m.tail())});
  return render_table(rows);
}

std::string propensity_list(const std::vector<Propensity>& props) {
  std::string s = "[";
  for (std::size_t i = 0; i < props.size(); ++i) {
    if (i) s += ", ";
    s += format_rational(props[i].value());
  }
  return s + "]";
}

}  // namespace

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()));
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(widths[c] - row[c].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational \"" + std::string(text) + "\" (expected \"a/b\" or an integer)");
  }
  const mpz_class numerator{std::string(num)};
  const mpz_class denominator{std::string(den)};
  if (sgn(denominator) == 0) {
    throw ParseError("malformed rational \"" + std::string(text) + "\" (zero denominator)");
  }
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) { return value.get_str(); }

Fiq parse_fiq(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid FIQ document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("invalid FIQ document: top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "propensities" && key != "tail" && key != "unit") {
      throw ParseError("invalid FIQ document: unknown field \"" + key + "\"");
    }
  }

  if (!doc.contains("propensities") || !doc["propensities"].is_array()) {
    throw ParseError("field \"propensities\": expected an array of rational strings");
  }
  std::vector<Propensity> props;
  const auto& list = doc["propensities"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string field = "field \"propensities[" + std::to_string(i) + "]\": ";
    if (!list[i].is_string()) {
      throw ParseError(field + "expected a string such as \"1/2\"");
    }
    Rational r;
    try {
      r = parse_rational(list[i].get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(field + e.what());
    }
    try {
      props.emplace_back(r);
    } catch (const RangeError& e) {
      throw RangeError(field + e.what());
    }
  }

  if (!doc.contains("tail") || !doc["tail"].is_string()) {
    throw ParseError("field \"tail\": expected \"fair\" or \"zero\"");
  }
  const auto tail_text = doc["tail"].get<std::string>();
  Tail tail;
  if (tail_text == "fair") {
    tail = Tail::fair;
  } else if (tail_text == "zero") {
    tail = Tail::zero;
  } else {
    throw ParseError("field \"tail\": unknown value \"" + tail_text + "\" (expected \"fair\" or \"zero\")");
  }

  std::optional<std::string> unit;
  if (doc.contains("unit")) {
    if (!doc["unit"].is_string()) throw ParseError("field \"unit\": expected a string");
    unit = doc["unit"].get<std::string>();
  }
  return Fiq(std::move(props), tail, std::move(unit));
}

std::string serialize_fiq(const Fiq& q) {
  ordered_json doc;
  doc["propensities"] = ordered_json::array();
  for (const auto& p : q.propensities()) doc["propensities"].push_back(format_rational(p.value()));
  doc["tail"] = to_string(q.tail());
  if (q.unit_label()) doc["unit"] = *q.unit_label();
  return doc.dump(2) + "\n";
}

Fiq load_fiq(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_fiq(text.str());
  } catch (const RangeError& e) {
    throw RangeError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string emit_joint_law(const JointLaw& law) {
  const Window& w = law.window();
  std::string out = "# joint law: integer_bits=" + std::to_string(w.integer_bits) +
                    " fractional_depth=" + std::to_string(w.fractional_depth) +
                    " tail=" + to_string(law.tail_note()) + "\n";
  std::vector<std::vector<std::string>> rows{{"pattern", "probability", "decimal"}};
  Rational total = 0;
  for (const auto& [pattern, p] : law.support()) {
    rows.push_back({pattern.to_string(), format_rational(p.value()), format_decimal(p.value())});
    total += p.value();
  }
  rows.push_back({"total", format_rational(total), format_decimal(total)});
  return out + render_table(rows);
}

std::string emit_marginal(const WideMarginal& m) {
  std::string out = "# marginal: integer_bits=" + std::to_string(m.integer_bits()) +
                    " fractional_depth=" + std::to_string(m.fractional_depth()) + " tail=" + to_string(m.tail()) +
                    "\n";
  std::vector<std::vector<std::string>> rows{{"position", "propensity", "decimal"}};
  for (long pos : positions_of(m)) {
    const Rational p = m.at(pos).value();
    rows.push_back({std::to_string(pos), format_rational(p), format_decimal(p)});
  }
  return out + render_table(rows);
}

std::string emit_histogram_csv(const Histogram& h) {
  const auto bin_bits = static_cast<unsigned>(std::countr_zero(h.bin_count));
  std::string out = "bin_start,bin_end,mass_rational,mass_decimal\n";
  for (std::uint64_t i = 0; i < h.masses.size(); ++i) {
    out += format_dyadic(i, bin_bits) + "," + format_dyadic(i + 1, bin_bits) + "," + format_rational(h.masses[i]) +
           "," + format_decimal(h.masses[i]) + "\n";
  }
  return out;
}

std::string emit_audit_text(const AuditReport& r) {
  std::string out;
  out += "unit-change audit: Q' = " + std::to_string(r.factor) + " * Q\n";
  out += "input: " + propensity_list(r.input.propensities()) + " tail=" + to_string(r.input.tail()) +
         " unit=" + r.input.unit_label().value_or("-") + "\n";
  out += "factor: " + std::to_string(r.factor) + "\n";
  out += "model: " + std::string(to_string(r.model)) + "\n";
  out += "unit_label: " + r.unit_label.value_or("-") + "\n";
  out += "marginal_engine:\n" + marginal_lines(r.marginal_engine, "  ");
  out += "exact_marginals:\n" + marginal_lines(r.exact_marginals, "  ");
  out += "exact_law:\n";
  std::istringstream law(emit_joint_law(r.exact_law));
  for (std::string line; std::getline(law, line);) out += "  " + line + "\n";
  out += "pair_defects:\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& d : r.pair_defects) {
    rows.push_back({"  {" + std::to_string(d.first) + "," + std::to_string(d.second) + "}:", format_rational(d.defect),
                    format_decimal(d.defect)});
  }
  out += render_table(rows);
  out += "joint_entropy_bits: " + format_real(r.joint_entropy_bits) + "\n";
  out += "marginal_entropy_sum_bits: " + format_real(r.marginal_entropy_sum_bits) + "\n";
  out += "dependence_information_bits: " + format_real(r.dependence_information_bits()) + "\n";
  out += "information_before: " + format_real(r.information_before) + "\n";
  out += "information_after_marginal_engine: " + format_real(r.information_after_marginal_engine) + "\n";
  out += "information_after_exact: " + format_real(r.information_after_exact) + "\n";
  out += "marginals_disagree: " + std::string(r.marginals_disagree ? "true" : "false") + "\n";
  out += "dependence_detected: " + std::string(r.dependence_detected ? "true" : "false") + "\n";
  return out;
}

std::string emit_audit_json(const AuditReport& r) {
  ordered_json doc;
  ordered_json input;
  input["propensities"] = ordered_json::array();
  for (const auto& p : r.input.propensities()) input["propensities"].push_back(format_rational(p.value()));
  input["tail"] = to_string(r.input.tail());
  input["unit"] = r.input.unit_label() ? ordered_json(*r.input.unit_label()) : ordered_json(nullptr);
  doc["input"] = input;
  doc["factor"] = r.factor;
  doc["model"] = to_string(r.model);
  doc["unit_label"] = r.unit_label ? ordered_json(*r.unit_label) : ordered_json(nullptr);
  doc["marginal_engine"] = marginal_json(r.marginal_engine);
  doc["exact_marginals"] = marginal_json(r.exact_marginals);
  ordered_json law;
  law["integer_bits"] = r.exact_law.window().integer_bits;
  law["fractional_depth"] = r.exact_law.window().fractional_depth;
  law["tail"] = to_string(r.exact_law.tail_note());
  law["support"] = ordered_json::array();
  for (const auto& [pattern, p] : r.exact_law.support()) {
    law["support"].push_back({{"pattern", pattern.to_string()}, {"probability", format_rational(p.value())}});
  }
  doc["exact_law"] = law;
  doc["pair_defects"] = ordered_json::array();
  for (const auto& d : r.pair_defects) {
    doc["pair_defects"].push_back({{"positions", {d.first, d.second}}, {"defect", format_rational(d.defect)}});
  }
  doc["joint_entropy_bits"] = r.joint_entropy_bits;
  doc["marginal_entropy_sum_bits"] = r.marginal_entropy_sum_bits;
  doc["dependence_information_bits"] = r.dependence_information_bits();
  doc["information_before"] = r.information_before;
  doc["information_after_marginal_engine"] = r.information_after_marginal_engine;
  doc["information_after_exact"] = r.information_after_exact;
  doc["marginals_disagree"] = r.marginals_disagree;
  doc["dependence_detected"] = r.dependence_detected;
  return doc.dump(2) + "\n";
}

}  // namespace fiq::io
