#include <fiq/error.hpp>
#include <fiq/number.hpp>

#include <algorithm>
#include <utility>

namespace fiq {

const char* to_string(Tail tail) noexcept { return tail == Tail::fair ? "fair" : "zero"; }

Propensity tail_value(Tail tail) { return tail == Tail::fair ? Propensity::half() : Propensity::zero(); }

Fiq::Fiq(std::vector<Propensity> propensities, Tail tail, std::optional<std::string> unit_label)
    : propensities_(std::move(propensities)), tail_(tail), unit_label_(std::move(unit_label)) {}

Propensity Fiq::at(std::size_t position) const {
  if (position == 0) {
    throw ArgumentError("Fiq positions start at 1");
  }
  return position <= propensities_.size() ? propensities_[position - 1] : tail_value(tail_);
}

Fiq Fiq::with_unit(std::optional<std::string> label) const {
  Fiq copy = *this;
  copy.unit_label_ = std::move(label);
  return copy;
}

Fiq fiq_validate(std::span<const Rational> raw, Tail tail, std::optional<std::string> unit_label) {
  std::vector<Propensity> props;
  props.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    try {
      props.emplace_back(raw[i]);
    } catch (const RangeError& e) {
      throw RangeError("position " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return Fiq(std::move(props), tail, std::move(unit_label));
}

WideMarginal::WideMarginal(std::vector<Propensity> integer_propensities,
                           std::vector<Propensity> fractional_propensities, Tail tail)
    : integer_(std::move(integer_propensities)), fractional_(std::move(fractional_propensities)), tail_(tail) {}

WideMarginal::WideMarginal(const Fiq& q) : fractional_(q.propensities()), tail_(q.tail()) {}

Propensity WideMarginal::at(long position) const {
  if (position <= 0) {
    const auto index = static_cast<std::size_t>(-position);
    return index < integer_.size() ? integer_[index] : Propensity::zero();
  }
  const auto index = static_cast<std::size_t>(position - 1);
  return index < fractional_.size() ? fractional_[index] : tail_value(tail_);
}

bool equivalent(const WideMarginal& a, const WideMarginal& b) {
  if (a.tail() != b.tail()) return false;
  const long top = -static_cast<long>(std::max(a.integer_bits(), b.integer_bits()));
  const auto deepest = static_cast<long>(std::max(a.fractional_depth(), b.fractional_depth()));
  for (long pos = top; pos <= deepest; ++pos) {
    if (!(a.at(pos) == b.at(pos))) return false;
  }
  return true;
}

}  // namespace fiq
