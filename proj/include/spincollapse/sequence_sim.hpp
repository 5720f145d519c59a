#pragma once

// Chained measurements: solve for the observer's next axis, pick the outcome,
// collapse, and feed (state_after, axis_next) into the following step.

#include "spincollapse/axiom_solver.hpp"
#include "spincollapse/entropy.hpp"
#include "spincollapse/risk.hpp"
#include "spincollapse/spin_core.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace spincollapse {

/// Seeded 64-bit Mersenne Twister. Uniform variates take the top 53 bits of
/// each draw, so the stream of doubles is fixed by the seed alone and does not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64";
  static constexpr std::string_view kUniform = "(draw >> 11) * 2^-53";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Outcome chosen by minimizing a named builtin risk.
struct RiskRule {
  std::string name;
};

/// Outcome sampled from the Born distribution (baseline, not the collapse model).
struct BornRule {
  std::uint64_t seed = 0;
};

using OutcomeRule = std::variant<RiskRule, BornRule>;

std::string describe(const OutcomeRule& rule);

struct SimConfig {
  std::size_t steps = 1;
  SolveMode mode = SolveMode::strict;
  OutcomeRule outcome = RiskRule{"born-surprise"};
  LogBase base = LogBase::natural;
  double eigen_tol = kDefaultTol;
};

/// Throws std::invalid_argument for steps == 0 or an unknown risk name.
void validate(const SimConfig& config);

struct TrajectoryStep {
  std::size_t index = 0;
  PureState state_before;
  Axis axis_measured;
  double p_up = 1.0;
  Outcome s = Outcome::up;
  PureState state_after;
  Axis axis_next;
  EntropyValue s_i = 0.0;
  EntropyValue s_up_next = 0.0;
  bool no_collapse = false;
};

/// One measurement. `rng` is only drawn from under BornRule.
TrajectoryStep step(const PureState& state, const Axis& axis_i, const SimConfig& config, Rng& rng,
                    std::size_t index = 0);

/// `config.steps` chained measurements; reproducible for a fixed config.
std::vector<TrajectoryStep> simulate(const PureState& initial_state, const Axis& initial_axis,
                                     const SimConfig& config);

}  // namespace spincollapse
