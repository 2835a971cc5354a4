#include <fiq/error.hpp>
#include <fiq/marginal_engine.hpp>

#include <algorithm>
#include <bit>

namespace fiq {

namespace {

void trim_leading_zeros(std::vector<Propensity>& integer_props) {
  while (!integer_props.empty() && integer_props.back().is_zero()) integer_props.pop_back();
}

bool is_bit(int v) { return v == 0 || v == 1; }

}  // namespace

const char* to_string(CarryModel model) noexcept {
  return model == CarryModel::fair_tail_fixed_point ? "fair" : "zero";
}

const char* to_string(ShiftOrder order) noexcept {
  return order == ShiftOrder::increasing_significance ? "increasing" : "decreasing";
}

CarryModel default_carry_model(Tail a, Tail b) noexcept {
  return a == Tail::fair && b == Tail::fair ? CarryModel::fair_tail_fixed_point : CarryModel::truncate_zero;
}

AdderRow adder_truth_row(int q_bit, int r_bit, int carry_in) {
  if (!is_bit(q_bit) || !is_bit(r_bit) || !is_bit(carry_in)) {
    throw ArgumentError("full adder inputs must be bits");
  }
  const int total = q_bit + r_bit + carry_in;
  return {total & 1, total >> 1};
}

Propensity propagate_sum(const Propensity& q, const Propensity& r, const Propensity& carry_in) {
  const Rational& a = q.value();
  const Rational& b = r.value();
  const Rational& c = carry_in.value();
  return Propensity(Rational(a + b + c - 2 * (a * b + a * c + b * c) + 4 * a * b * c));
}

Propensity propagate_carry(const Propensity& q, const Propensity& r, const Propensity& carry_in) {
  const Rational& a = q.value();
  const Rational& b = r.value();
  const Rational& c = carry_in.value();
  return Propensity(Rational(a * b + a * c + b * c - 2 * a * b * c));
}

WideMarginal add_marginal(const WideMarginal& q, const WideMarginal& r, CarryModel model) {
  const bool both_fair = q.tail() == Tail::fair && r.tail() == Tail::fair;
  if (model == CarryModel::fair_tail_fixed_point && !both_fair) {
    throw ContractError("the fair-tail carry model needs both addends to have fair tails");
  }

  Propensity carry =
      model == CarryModel::fair_tail_fixed_point ? Propensity::half() : Propensity::zero();

  const std::size_t depth = std::max(q.fractional_depth(), r.fractional_depth());
  std::vector<Propensity> fractional(depth);
  for (std::size_t k = depth; k >= 1; --k) {
    const auto pos = static_cast<long>(k);
    const Propensity qk = q.at(pos);
    const Propensity rk = r.at(pos);
    fractional[k - 1] = propagate_sum(qk, rk, carry);
    carry = propagate_carry(qk, rk, carry);
  }

  const std::size_t integer_bits = std::max(q.integer_bits(), r.integer_bits());
  std::vector<Propensity> integer;
  integer.reserve(integer_bits + 1);
  for (std::size_t i = 0; i < integer_bits; ++i) {
    const long pos = -static_cast<long>(i);
    const Propensity qk = q.at(pos);
    const Propensity rk = r.at(pos);
    integer.push_back(propagate_sum(qk, rk, carry));
    carry = propagate_carry(qk, rk, carry);
  }
  integer.push_back(carry);
  trim_leading_zeros(integer);

  const bool fair_result = model == CarryModel::fair_tail_fixed_point || q.tail() == Tail::fair ||
                           r.tail() == Tail::fair;
  return WideMarginal(std::move(integer), std::move(fractional), fair_result ? Tail::fair : Tail::zero);
}

WideMarginal shift(const WideMarginal& q, std::size_t places) {
  if (places == 0) return q;

  // New integer position p takes the old position p + places.
  const std::size_t integer_bits = q.integer_bits() + places;
  std::vector<Propensity> integer;
  integer.reserve(integer_bits);
  for (std::size_t i = 0; i < integer_bits; ++i) {
    integer.push_back(q.at(static_cast<long>(places) - static_cast<long>(i)));
  }
  trim_leading_zeros(integer);

  std::vector<Propensity> fractional;
  if (q.fractional_depth() > places) {
    const auto& old = q.fractional_propensities();
    fractional.assign(old.begin() + static_cast<std::ptrdiff_t>(places), old.end());
  }
  return WideMarginal(std::move(integer), std::move(fractional), q.tail());
}

WideMarginal mul_constant_marginal(const Fiq& q, std::uint64_t factor, CarryModel model, ShiftOrder order) {
  if (factor == 0) {
    throw ArgumentError("multiplication factor must be a positive integer");
  }
  if (model == CarryModel::fair_tail_fixed_point && q.tail() != Tail::fair) {
    throw ContractError("the fair-tail carry model needs a fair-tailed operand");
  }

  std::vector<std::size_t> places;
  for (std::uint64_t rest = factor; rest != 0; rest &= rest - 1) {
    places.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
  }
  if (order == ShiftOrder::decreasing_significance) std::reverse(places.begin(), places.end());

  const WideMarginal base(q);
  WideMarginal acc = shift(base, places.front());
  for (std::size_t i = 1; i < places.size(); ++i) {
    acc = add_marginal(acc, shift(base, places[i]), model);
  }
  return acc;
}

}  // namespace fiq
