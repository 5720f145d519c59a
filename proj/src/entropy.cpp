#include "spincollapse/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spincollapse {
namespace {

constexpr double kProbabilitySlack = 1e-12;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double checked_probability(double p) {
  if (!(p >= -kProbabilitySlack && p <= 1.0 + kProbabilitySlack)) {
    throw std::domain_error("probability outside [0, 1]: " + std::to_string(p));
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double nats_to(LogBase base) {
  switch (base) {
    case LogBase::natural:
      return 1.0;
    case LogBase::two:
      return 1.0 / std::numbers::ln2;
  }
  return 1.0;
}

std::string_view to_string(LogBase base) { return base == LogBase::two ? "2" : "e"; }

LogBase parse_log_base(std::string_view text) {
  if (text == "e") return LogBase::natural;
  if (text == "2") return LogBase::two;
  throw std::invalid_argument("entropy base must be 'e' or '2'");
}

EntropyValue binary_entropy(double p, LogBase base) {
  p = checked_probability(p);
  // Evaluate on the smaller mass so that H(p) == H(1 - p) bit for bit.
  const double lo = std::min(p, 1.0 - p);
  const double hi = 1.0 - lo;
  return -(xlogx(lo) + xlogx(hi)) * nats_to(base);
}

EntropyValue binary_entropy(double p, double q, LogBase base) {
  p = checked_probability(p);
  q = checked_probability(q);
  return -(xlogx(p) + xlogx(q)) * nats_to(base);
}

EntropyValue s_i(const PureState& state, const Axis& axis_i, LogBase base) {
  return binary_entropy(born_up(state, axis_i), base);
}

EntropyValue s_f(const PureState& state, const Axis& axis_f, LogBase base) {
  return binary_entropy(born_up(state, axis_f), base);
}

EntropyValue s_up(const Axis& axis_i, const Axis& axis_f, LogBase base) {
  const Eigenpair f = eigenpair(axis_f);
  const Eigenpair i = eigenpair(axis_i);
  return binary_entropy(std::norm(overlap(f.up, i.up)), base);
}

EntropyValue s_down(const Axis& axis_i, const Axis& axis_f, LogBase base) {
  const Eigenpair f = eigenpair(axis_f);
  const Eigenpair i = eigenpair(axis_i);
  return binary_entropy(std::norm(overlap(f.up, i.down)), base);
}

}  // namespace spincollapse
