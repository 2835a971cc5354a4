#include "fiqcalc/cli.hpp"

#include <fiq/analysis.hpp>
#include <fiq/error.hpp>
#include <fiq/exact_engine.hpp>
#include <fiq/io.hpp>
#include <fiq/marginal_engine.hpp>
#include <fiq/oracle.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>

namespace fiq::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string q_path;
  std::string r_path;
  std::string engine = "marginal";
  std::string model;
  std::string order = "increasing";
  std::uint64_t factor = 0;
  std::optional<std::size_t> window;
  std::string query;
  unsigned max_bits = ExactLimits{}.max_indeterminate_bits;
  std::optional<std::string> unit;
  std::string out_path;
  unsigned depth = 0;
  std::uint64_t bins = 0;
  std::string csv_path;
  unsigned extension = 0;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
};

// "1:1,2:0" -> {1 -> 1, 2 -> 0}
std::map<long, int> parse_query(const std::string& text) {
  std::map<long, int> assignment;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    const std::size_t colon = item.find(':');
    long position = 0;
    int bit = -1;
    const char* first = item.data();
    const char* last = item.data() + item.size();
    if (colon == std::string::npos ||
        std::from_chars(first, first + colon, position).ptr != first + colon ||
        std::from_chars(first + colon + 1, last, bit).ptr != last || (bit != 0 && bit != 1)) {
      throw UsageError("malformed --query entry \"" + item + "\" (expected POSITION:BIT)");
    }
    assignment[position] = bit;
    start = end + 1;
  }
  if (assignment.empty()) throw UsageError("--query needs at least one POSITION:BIT entry");
  return assignment;
}

std::string query_text(const std::map<long, int>& assignment) {
  std::string s = "{";
  for (const auto& [pos, bit] : assignment) {
    if (s.size() > 1) s += ",";
    s += std::to_string(pos) + ":" + std::to_string(bit);
  }
  return s + "}";
}

std::optional<CarryModel> parse_model(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return text == "fair" ? CarryModel::fair_tail_fixed_point : CarryModel::truncate_zero;
}

std::string fixed(double v, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

void check_exact_only(const Options& o) {
  if (o.engine != "exact" && (o.window || !o.query.empty())) {
    throw UsageError("--window and --query need --engine exact");
  }
}

void print_exact(const JointLaw& law, const Options& o, std::ostream& out) {
  out << io::emit_joint_law(law);
  if (!o.query.empty()) {
    const auto assignment = parse_query(o.query);
    const Propensity p = pattern_propensity(law, assignment);
    out << "query " << query_text(assignment) << ": " << io::format_rational(p.value()) << " ("
        << io::format_decimal(p.value()) << ")\n";
  }
}

void run_add(const Options& o, std::ostream& out) {
  check_exact_only(o);
  const Fiq q = io::load_fiq(o.q_path);
  const Fiq r = io::load_fiq(o.r_path);
  if (o.engine == "exact") {
    print_exact(joint_add(q, r, o.window, ExactLimits{o.max_bits}), o, out);
    return;
  }
  const CarryModel model = parse_model(o.model).value_or(default_carry_model(q.tail(), r.tail()));
  const WideMarginal sum = add_marginal(q, r, model);
  out << "# add, marginal engine, model=" << to_string(model) << "\n";
  out << io::emit_marginal(sum);
}

void run_mul(const Options& o, std::ostream& out) {
  check_exact_only(o);
  const Fiq q = io::load_fiq(o.q_path);
  if (o.engine == "exact") {
    print_exact(joint_mul_constant(q, o.factor, o.window, ExactLimits{o.max_bits}), o, out);
    return;
  }
  const CarryModel model = parse_model(o.model).value_or(default_carry_model(q.tail(), q.tail()));
  const ShiftOrder order =
      o.order == "decreasing" ? ShiftOrder::decreasing_significance : ShiftOrder::increasing_significance;
  const WideMarginal product = mul_constant_marginal(q, o.factor, model, order);
  out << "# mul by " << o.factor << ", marginal engine, model=" << to_string(model) << ", order=" << to_string(order)
      << "\n";
  out << io::emit_marginal(product);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw ResourceError("cannot write " + path);
}

void run_audit(const Options& o, std::ostream& out) {
  const Fiq q = io::load_fiq(o.q_path);
  const AuditReport report = unit_change_audit(q, o.factor, o.unit, ExactLimits{o.max_bits});
  out << io::emit_audit_text(report);
  if (!o.out_path.empty()) write_file(o.out_path, io::emit_audit_json(report));
}

void run_hist(const Options& o, std::ostream& out) {
  const Fiq q = io::load_fiq(o.q_path);
  const Histogram h = digit_histogram(q, o.depth, o.bins);
  write_file(o.csv_path, io::emit_histogram_csv(h));
  out << "# histogram: depth=" << h.depth << " bins=" << h.bin_count
      << " truncation_bound=" << io::format_rational(h.truncation_bound()) << " ("
      << io::format_decimal(h.truncation_bound()) << ")\n";
  out << "wrote " << h.masses.size() << " bins to " << o.csv_path << "\n";
}

void run_oracle_check(const Options& o, std::ostream& out) {
  const Fiq q = io::load_fiq(o.q_path);
  const JointLaw exact = joint_mul_constant(q, o.factor, o.window);
  const JointLaw truncated = oracle::truncation_law_mul(q, o.factor, o.window, o.extension);
  const Rational tv = total_variation(exact, truncated);
  Rational bound(mpz_class(static_cast<unsigned long>(o.factor)), mpz_class(1) << o.extension);
  bound.canonicalize();

  out << "# oracle check: L=" << o.factor << " extension=" << o.extension
      << " window=" << exact.window().fractional_depth << "\n";
  std::vector<std::vector<std::string>> rows{
      {"comparison", "tv_distance", "decimal", "bound", "within_bound"},
      {"exact_engine vs truncation(E=" + std::to_string(o.extension) + ")", io::format_rational(tv),
       io::format_decimal(tv), io::format_rational(bound), tv <= bound ? "yes" : "no"}};
  out << io::render_table(rows);

  if (!o.samples) return;
  oracle::OracleConfig config{o.extension, *o.samples, o.seed};
  const auto sampled = oracle::sample_law(q, oracle::MulOp{o.factor}, config, o.window);
  out << "# monte carlo: samples=" << sampled.samples << " seed=" << o.seed << " generator=mt19937_64 z="
      << fixed(oracle::kConfidenceZ, 1) << "\n";
  const WideMarginal exact_marginals = project_to_marginal(exact);
  std::vector<std::vector<std::string>> mc{{"position", "exact", "sampled", "half_width", "within"}};
  for (const auto& est : sampled.positions) {
    const Propensity truth = exact_marginals.at(est.position);
    const bool within = std::abs(est.estimate - truth.to_double()) <= est.half_width;
    mc.push_back({std::to_string(est.position), io::format_rational(truth.value()), fixed(est.estimate, 6),
                  fixed(est.half_width, 6), within ? "yes" : "no"});
  }
  out << io::render_table(mc);
}

void run_info(const Options& o, std::ostream& out) {
  const Fiq q = io::load_fiq(o.q_path);
  out << "M: " << q.depth() << "\n";
  out << "tail: " << to_string(q.tail()) << "\n";
  out << "unit: " << q.unit_label().value_or("-") << "\n";
  out << "information_content_bits: " << fixed(information_content(q), 12) << "\n";
  std::vector<std::vector<std::string>> rows{{"position", "propensity", "entropy_bits"}};
  for (std::size_t k = 1; k <= q.depth(); ++k) {
    rows.push_back({std::to_string(k), io::format_rational(q.at(k).value()), fixed(bit_entropy(q.at(k)), 12)});
  }
  out << io::render_table(rows);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fiqcalc: arithmetic on finite information quantities", "fiqcalc"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> engines{"marginal", "exact"};
  const std::vector<std::string> models{"fair", "zero"};

  auto* add = app.add_subcommand("add", "Sum of two FIQs");
  add->add_option("Q", o.q_path, "First addend (.fiq)")->required();
  add->add_option("R", o.r_path, "Second addend (.fiq)")->required();
  add->add_option("--model", o.model, "Carry model for the marginal engine")->check(CLI::IsMember(models));
  add->add_option("--engine", o.engine, "marginal or exact")->check(CLI::IsMember(engines));
  add->add_option("--window", o.window, "Fractional window depth (exact engine)");
  add->add_option("--query", o.query, "Pattern query POSITION:BIT[,...] (exact engine)");
  add->add_option("--max-bits", o.max_bits, "Indeterminate-bit limit for exact enumeration");

  auto* mul = app.add_subcommand("mul", "Product of a FIQ and a positive integer");
  mul->add_option("Q", o.q_path, "Operand (.fiq)")->required();
  mul->add_option("--by", o.factor, "Integer factor L")->required();
  mul->add_option("--engine", o.engine, "marginal or exact")->check(CLI::IsMember(engines));
  mul->add_option("--model", o.model, "Carry model for the marginal engine")->check(CLI::IsMember(models));
  mul->add_option("--order", o.order, "Shift accumulation order for the marginal engine")
      ->check(CLI::IsMember({"increasing", "decreasing"}));
  mul->add_option("--window", o.window, "Fractional window depth (exact engine)");
  mul->add_option("--query", o.query, "Pattern query POSITION:BIT[,...] (exact engine)");
  mul->add_option("--max-bits", o.max_bits, "Indeterminate-bit limit for exact enumeration");

  auto* audit = app.add_subcommand("audit", "Information audit of the unit change Q' = L * Q");
  audit->add_option("Q", o.q_path, "Quantity (.fiq)")->required();
  audit->add_option("--by", o.factor, "Integer factor L")->required();
  audit->add_option("--unit", o.unit, "Label of the new unit");
  audit->add_option("--out", o.out_path, "Also write the report as JSON");
  audit->add_option("--max-bits", o.max_bits, "Indeterminate-bit limit for exact enumeration");

  auto* hist = app.add_subcommand("hist", "Digit-distribution histogram assuming independent bits");
  hist->add_option("Q", o.q_path, "Quantity (.fiq)")->required();
  hist->add_option("--depth", o.depth, "Truncation depth")->required();
  hist->add_option("--bins", o.bins, "Number of bins, a power of two")->required();
  hist->add_option("--csv", o.csv_path, "Output CSV path")->required();

  auto* check = app.add_subcommand("oracle-check", "Compare the exact engine with brute-force references");
  check->add_option("Q", o.q_path, "Quantity (.fiq)")->required();
  check->add_option("--by", o.factor, "Integer factor L")->required();
  check->add_option("--extension", o.extension, "Explicit fair bits replacing the tail")->required();
  check->add_option("--window", o.window, "Fractional window depth");
  check->add_option("--samples", o.samples, "Monte Carlo sample count");
  check->add_option("--seed", o.seed, "Monte Carlo seed");

  auto* info = app.add_subcommand("info", "Depth and information content of a FIQ");
  info->add_option("Q", o.q_path, "Quantity (.fiq)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (add->parsed()) run_add(o, out);
    if (mul->parsed()) run_mul(o, out);
    if (audit->parsed()) run_audit(o, out);
    if (hist->parsed()) run_hist(o, out);
    if (check->parsed()) run_oracle_check(o, out);
    if (info->parsed()) run_info(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace fiq::cli
