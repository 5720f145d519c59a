#include "spincollapse/sequence_sim.hpp"

#include <stdexcept>

namespace spincollapse {

std::string describe(const OutcomeRule& rule) {
  if (const auto* r = std::get_if<RiskRule>(&rule)) return "risk:" + r->name;
  return "born";
}

void validate(const SimConfig& config) {
  if (config.steps < 1) throw std::invalid_argument("steps must be at least 1");
  if (const auto* r = std::get_if<RiskRule>(&config.outcome)) {
    if (!find_builtin_risk(r->name)) {
      throw std::invalid_argument("unknown risk function '" + r->name + "'");
    }
  }
}

TrajectoryStep step(const PureState& state, const Axis& axis_i, const SimConfig& config, Rng& rng,
                    std::size_t index) {
  TrajectoryStep out;
  out.index = index;
  out.state_before = state;
  out.axis_measured = axis_i;

  if (is_eigenstate(state, axis_i, config.eigen_tol)) {
    // Already an eigenstate: nothing collapses and the observer keeps the axis.
    const bool up = born_up(state, axis_i) >= 0.5;
    out.p_up = up ? 1.0 : 0.0;
    out.s = up ? Outcome::up : Outcome::down;
    out.state_after = state;
    out.axis_next = axis_i;
    out.no_collapse = true;
    return out;
  }

  out.p_up = born_up(state, axis_i);
  out.s_i = binary_entropy(out.p_up, config.base);

  const SolverSolution solution =
      solve(state, axis_i, SolverOptions{config.mode, config.base, config.eigen_tol});
  out.axis_next = solution.minimizers.front();
  out.s_up_next = solution.objective;

  if (const auto* rule = std::get_if<RiskRule>(&config.outcome)) {
    const std::optional<RiskFunction> risk = find_builtin_risk(rule->name);
    if (!risk) throw std::invalid_argument("unknown risk function '" + rule->name + "'");
    out.s = select_outcome(*risk, out.axis_next, RiskContext{state, axis_i}).s;
  } else {
    out.s = rng.uniform() < out.p_up ? Outcome::up : Outcome::down;
  }
  out.state_after = state_from_eigenvector(axis_i, out.s);
  return out;
}

std::vector<TrajectoryStep> simulate(const PureState& initial_state, const Axis& initial_axis,
                                     const SimConfig& config) {
  validate(config);
  const auto* born = std::get_if<BornRule>(&config.outcome);
  Rng rng(born ? born->seed : 0);

  std::vector<TrajectoryStep> trajectory;
  trajectory.reserve(config.steps);
  PureState state = initial_state;
  Axis axis = initial_axis;
  for (std::size_t k = 0; k < config.steps; ++k) {
    trajectory.push_back(step(state, axis, config, rng, k));
    state = trajectory.back().state_after;
    axis = trajectory.back().axis_next;
  }
  return trajectory;
}

}  // namespace spincollapse
