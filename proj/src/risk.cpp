#include "spincollapse/risk.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace spincollapse {

RiskFunction::RiskFunction(std::string name, std::string description, Rule rule, bool stand_in)
    : name_(std::move(name)),
      description_(std::move(description)),
      rule_(std::move(rule)),
      stand_in_(stand_in) {
  if (!rule_) throw std::invalid_argument("risk function '" + name_ + "' has no rule");
}

double RiskFunction::evaluate(const Axis& axis_f, Outcome s, const RiskContext& context) const {
  return rule_(axis_f, s, context);
}

double RiskFunction::evaluate(double theta_f, double phi_f, Outcome s,
                              const RiskContext& context) const {
  return evaluate(Axis::canonical(theta_f, phi_f), s, context);
}

OutcomeSelection select_outcome(const RiskFunction& risk, const Axis& axis_f,
                                const RiskContext& context) {
  const double up = risk.evaluate(axis_f, Outcome::up, context);
  const double down = risk.evaluate(axis_f, Outcome::down, context);
  auto admissible = [](double r) { return !std::isnan(r) && r != -std::numeric_limits<double>::infinity(); };
  if (!admissible(up) || !admissible(down) || (std::isinf(up) && std::isinf(down))) {
    throw RiskEvaluationError("risk '" + risk.name() + "' produced a non-finite value");
  }
  if (down < up) return {Outcome::down, down};
  return {Outcome::up, up};
}

const std::vector<RiskFunction>& builtin_risks() {
  static const std::vector<RiskFunction> risks = {
      RiskFunction("constant", "R = 0 for every alternative",
                   [](const Axis&, Outcome, const RiskContext&) { return 0.0; }),
      RiskFunction("born-surprise",
                   "R = -ln P(s), P the Born probability of s along axis_i before the measurement",
                   [](const Axis&, Outcome s, const RiskContext& ctx) {
                     const double p_up = born_up(ctx.state, ctx.axis_i);
                     const double p = s == Outcome::up ? p_up : 1.0 - p_up;
                     return p > 0.0 ? -std::log(p) : std::numeric_limits<double>::infinity();
                   }),
      RiskFunction("alignment", "R = -s (n_f . m), m the Bloch vector before the measurement",
                   [](const Axis& axis_f, Outcome s, const RiskContext& ctx) {
                     return -sign(s) * axis_f.unit_vector().dot(ctx.state.bloch_vector());
                   }),
  };
  return risks;
}

std::optional<RiskFunction> find_builtin_risk(std::string_view name) {
  for (const RiskFunction& r : builtin_risks()) {
    if (r.name() == name) return r;
  }
  return std::nullopt;
}

}  // namespace spincollapse
