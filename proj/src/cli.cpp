#include "spincollapse/cli.hpp"

#include "spincollapse/axiom_solver.hpp"
#include "spincollapse/entropy.hpp"
#include "spincollapse/risk.hpp"
#include "spincollapse/sequence_sim.hpp"
#include "spincollapse/spin_core.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace spincollapse::cli {
namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) { return fmt::format("{:.17g}", x); }

double to_radians(double value, bool degrees) { return degrees ? value * kPi / 180.0 : value; }

struct Flags {
  // state and axis
  std::optional<double> rho;
  double tau = 0.0;
  std::optional<std::string> amplitudes;
  double theta_i = 0.0;
  double phi_i = 0.0;
  bool degrees = false;
  // solver
  std::optional<std::string> mode;
  std::string base = "e";
  double tol = kDefaultTol;
  // output
  std::optional<std::string> format;
  std::string out_path;
  // grid commands
  std::optional<std::string> grid;
  double constraint_tol = 5e-3;
  std::optional<double> exclude_trivial;
  // simulate
  std::size_t steps = 1;
  std::string outcome = "risk:born-surprise";
  std::optional<std::uint64_t> seed;
};

// Everything a command needs, validated and canonicalized.
struct Inputs {
  PureState state;
  Axis axis_i;
  SolveMode mode = SolveMode::strict;
  LogBase base = LogBase::natural;
  double tol = kDefaultTol;
  std::vector<std::string> warnings;
};

Json axis_json(const Axis& a) { return Json{{"theta", a.theta()}, {"phi", a.phi()}}; }

Json state_json(const PureState& s) { return Json{{"rho", s.rho()}, {"tau", s.tau()}}; }

Json solution_json(const SolverSolution& sol) {
  Json minimizers = Json::array();
  for (const Axis& a : sol.minimizers) minimizers.push_back(axis_json(a));
  Json extrema = Json::array();
  for (const Extremum& e : sol.extrema) {
    extrema.push_back(
        Json{{"axis", axis_json(e.axis)}, {"value", e.value}, {"kind", to_string(e.kind)}});
  }
  return Json{{"minimizers", minimizers},
              {"objective", sol.objective},
              {"extrema", extrema},
              {"no_collapse", sol.no_collapse},
              {"mode", to_string(sol.mode)},
              {"reflection_degenerate", sol.reflection_degenerate}};
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text, std::size_t minimum) {
  const auto x = text.find_first_of("xX");
  std::size_t rows = 0;
  std::size_t cols = 0;
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    rows = std::stoul(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    cols = std::stoul(text.substr(x + 1), &used);
    if (used != text.size() - x - 1) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw UsageError("--grid expects NxM, got '" + text + "'");
  }
  if (rows < minimum || cols < minimum) {
    throw UsageError(fmt::format("--grid dimensions must be at least {}", minimum));
  }
  return {rows, cols};
}

Inputs resolve_inputs(const Flags& f, SolveMode default_mode) {
  Inputs in;
  try {
    if (f.amplitudes) {
      std::vector<double> parts;
      std::stringstream ss(*f.amplitudes);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        parts.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      }
      if (parts.size() != 4) throw std::invalid_argument("count");
      const Complex a(parts[0], parts[1]);
      const Complex b(parts[2], parts[3]);
      const double norm = std::sqrt(std::norm(a) + std::norm(b));
      in.state = PureState::from_amplitudes(a, b);
      if (std::fabs(norm - 1.0) > f.tol) {
        in.warnings.push_back(fmt::format("amplitudes had norm {} and were normalized", num(norm)));
      }
    } else {
      in.state = PureState::canonical(*f.rho, to_radians(f.tau, f.degrees));
    }
    in.axis_i = Axis::canonical(to_radians(f.theta_i, f.degrees), to_radians(f.phi_i, f.degrees));
    in.mode = f.mode ? parse_solve_mode(*f.mode) : default_mode;
    in.base = parse_log_base(f.base);
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }
  if (!(f.tol > 0.0) || f.tol >= 0.5) throw UsageError("--tol must lie in (0, 0.5)");
  in.tol = f.tol;
  if (in.mode == SolveMode::reflective) {
    in.warnings.push_back(
        "reflective mode excludes the trivial minimizers +-axis_i; it is an extension of the "
        "minimum-information rule");
  }
  return in;
}

// Canonical command line reproducing `in`; angles always in radians.
std::vector<std::string> echo_argv(std::string_view command, const Inputs& in) {
  return {std::string(command),
          "--rho",
          num(in.state.rho()),
          "--tau",
          num(in.state.tau()),
          "--theta-i",
          num(in.axis_i.theta()),
          "--phi-i",
          num(in.axis_i.phi()),
          "--mode",
          std::string(to_string(in.mode)),
          "--entropy-base",
          std::string(to_string(in.base)),
          "--tol",
          num(in.tol)};
}

Json input_echo(const Inputs& in) {
  return Json{{"rho", in.state.rho()},       {"tau", in.state.tau()},
              {"theta_i", in.axis_i.theta()}, {"phi_i", in.axis_i.phi()},
              {"mode", to_string(in.mode)},   {"entropy_base", to_string(in.base)},
              {"tol", in.tol}};
}

Json envelope(std::string_view command, const Inputs& in, Json input, Json results) {
  Json warnings = Json::array();
  for (const std::string& w : in.warnings) warnings.push_back(w);
  return Json{{"tool", kToolName},
              {"version", kVersion},
              {"command", command},
              {"input", std::move(input)},
              {"entropy_base", to_string(in.base)},
              {"mode", to_string(in.mode)},
              {"results", std::move(results)},
              {"warnings", std::move(warnings)}};
}

void require_format(const Flags& f, std::initializer_list<std::string_view> allowed) {
  if (!f.format) return;
  if (std::find(allowed.begin(), allowed.end(), *f.format) == allowed.end()) {
    throw UsageError("unsupported --format '" + *f.format + "'");
  }
}

void emit(const std::string& text, const Flags& f, std::ostream& out) {
  if (f.out_path.empty() || f.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream file(f.out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + f.out_path + "'");
  file << text;
  if (!file) throw std::runtime_error("failed writing output file '" + f.out_path + "'");
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

int cmd_solve(const Flags& f, std::ostream& out) {
  require_format(f, {"json"});
  Inputs in = resolve_inputs(f, SolveMode::strict);
  const SolverSolution sol = solve(in.state, in.axis_i, SolverOptions{in.mode, in.base, in.tol});
  if (sol.reflection_degenerate) {
    in.warnings.push_back("p_i = 1/2: the mirror images of axis_i coincide with -+axis_i");
  }

  Json results = solution_json(sol);
  Json feasible = nullptr;
  if (const auto set = feasible_set(in.state, in.axis_i, in.tol)) {
    Json circles = Json::array();
    for (const FeasibleCircle& c : set->circles) {
      circles.push_back(Json{{"level", c.level}, {"colatitude", c.colatitude}});
    }
    feasible = Json{{"center", {set->center.x(), set->center.y(), set->center.z()}},
                    {"circles", circles}};
  }
  results["feasible_set"] = feasible;
  results["p_i"] = born_up(in.state, in.axis_i);
  results["s_i"] = s_i(in.state, in.axis_i, in.base);

  Json input = input_echo(in);
  input["argv"] = echo_argv("solve", in);
  emit(dump(envelope("solve", in, input, results)), f, out);
  return kOk;
}

int cmd_landscape(const Flags& f, std::ostream& out) {
  require_format(f, {"csv", "tsv"});
  const Inputs in = resolve_inputs(f, SolveMode::strict);
  const auto [n_theta, n_phi] = parse_grid(f.grid.value_or("90x180"), 2);
  const char sep = f.format.value_or("csv") == "tsv" ? '\t' : ',';

  const double target = s_i(in.state, in.axis_i, in.base);
  std::string text = fmt::format("theta_f{0}phi_f{0}p_up{0}s_f{0}constraint_residual{0}s_up\n", sep);
  for (std::size_t j = 0; j < n_theta; ++j) {
    for (std::size_t k = 0; k < n_phi; ++k) {
      const Axis a = grid_axis(j, k, n_theta, n_phi);
      const double p = born_up(in.state, a);
      const double sf = binary_entropy(p, in.base);
      text += fmt::format("{1:.17g}{0}{2:.17g}{0}{3:.17g}{0}{4:.17g}{0}{5:.17g}{0}{6:.17g}\n", sep,
                          a.theta(), a.phi(), p, sf, sf - target, s_up(in.axis_i, a, in.base));
    }
  }
  emit(text, f, out);
  return kOk;
}

int cmd_oracle(const Flags& f, std::ostream& out) {
  require_format(f, {"json"});
  const bool excluding = f.exclude_trivial.has_value();
  Inputs in = resolve_inputs(f, excluding ? SolveMode::reflective : SolveMode::strict);
  const auto [n_theta, n_phi] = parse_grid(f.grid.value_or("400x800"), 8);
  if (!(f.constraint_tol > 0.0)) throw UsageError("--constraint-tol must be positive");

  OracleOptions opts;
  opts.n_theta = n_theta;
  opts.n_phi = n_phi;
  opts.constraint_tol = f.constraint_tol;
  opts.base = in.base;
  opts.eigen_tol = in.tol;
  if (excluding) {
    const double radius = to_radians(*f.exclude_trivial, f.degrees);
    if (!(radius >= 0.0)) throw UsageError("--exclude-trivial must be non-negative");
    opts.exclude_radius = radius;
  }

  const OracleResult oracle = brute_force_oracle(in.state, in.axis_i, opts);
  const SolverSolution sol = solve(in.state, in.axis_i, SolverOptions{in.mode, in.base, in.tol});

  Json oracle_json{{"status", to_string(oracle.status)},
                   {"axis", oracle.status == OracleStatus::found ? axis_json(oracle.axis) : Json()},
                   {"objective", oracle.status == OracleStatus::found ? Json(oracle.objective)
                                                                      : Json()},
                   {"feasible_points", oracle.feasible_points},
                   {"no_collapse", oracle.status == OracleStatus::no_collapse}};

  Json discrepancy = nullptr;
  if (oracle.status == OracleStatus::found && !sol.no_collapse) {
    double angle = std::numeric_limits<double>::infinity();
    for (const Axis& a : sol.minimizers) angle = std::min(angle, angular_distance(a, oracle.axis));
    discrepancy = Json{{"objective", std::fabs(oracle.objective - sol.objective)},
                       {"angle", angle},
                       {"grid_step", std::max(kPi / static_cast<double>(n_theta - 1),
                                              kTwoPi / static_cast<double>(n_phi))}};
  }
  if (oracle.status == OracleStatus::infeasible) {
    in.warnings.push_back(
        "no grid point satisfies the constraint at this resolution; loosen --constraint-tol or "
        "refine --grid");
  }

  Json results{{"oracle", oracle_json}, {"analytic", solution_json(sol)}, {"discrepancy", discrepancy}};

  Json input = input_echo(in);
  input["grid"] = fmt::format("{}x{}", n_theta, n_phi);
  input["constraint_tol"] = f.constraint_tol;
  input["exclude_trivial"] = opts.exclude_radius ? Json(*opts.exclude_radius) : Json();
  std::vector<std::string> argv = echo_argv("oracle", in);
  argv.insert(argv.end(), {"--grid", fmt::format("{}x{}", n_theta, n_phi), "--constraint-tol",
                           num(f.constraint_tol)});
  if (opts.exclude_radius) argv.insert(argv.end(), {"--exclude-trivial", num(*opts.exclude_radius)});
  input["argv"] = argv;

  emit(dump(envelope("oracle", in, input, results)), f, out);
  return oracle.status == OracleStatus::infeasible ? kInfeasibleOracle : kOk;
}

OutcomeRule parse_outcome(const Flags& f) {
  if (f.outcome == "born") {
    if (!f.seed) throw UsageError("--outcome born requires --seed");
    return BornRule{*f.seed};
  }
  constexpr std::string_view prefix = "risk:";
  if (f.outcome.starts_with(prefix)) {
    const std::string name = f.outcome.substr(prefix.size());
    if (find_builtin_risk(name)) return RiskRule{name};
    std::string names;
    for (const RiskFunction& r : builtin_risks()) names += (names.empty() ? "" : ", ") + r.name();
    throw UsageError("unknown risk function '" + name + "'; builtins: " + names);
  }
  throw UsageError("--outcome must be 'born' or 'risk:<name>'");
}

int cmd_simulate(const Flags& f, std::ostream& out) {
  require_format(f, {"json"});
  Inputs in = resolve_inputs(f, SolveMode::strict);
  if (f.steps < 1) throw UsageError("--steps must be at least 1");
  const OutcomeRule rule = parse_outcome(f);

  SimConfig config;
  config.steps = f.steps;
  config.mode = in.mode;
  config.outcome = rule;
  config.base = in.base;
  config.eigen_tol = in.tol;
  const std::vector<TrajectoryStep> trajectory = simulate(in.state, in.axis_i, config);

  Json steps = Json::array();
  for (const TrajectoryStep& st : trajectory) {
    steps.push_back(Json{{"index", st.index},
                         {"state_before", state_json(st.state_before)},
                         {"axis_measured", axis_json(st.axis_measured)},
                         {"p_up", st.p_up},
                         {"s", sign(st.s)},
                         {"state_after", state_json(st.state_after)},
                         {"axis_next", axis_json(st.axis_next)},
                         {"s_i", st.s_i},
                         {"s_up_next", st.s_up_next},
                         {"no_collapse", st.no_collapse}});
  }

  Json outcome{{"rule", describe(rule)}};
  if (const auto* born = std::get_if<BornRule>(&rule)) {
    outcome["rng"] = Json{{"name", Rng::kName}, {"uniform", Rng::kUniform}, {"seed", born->seed}};
    in.warnings.push_back(
        "born outcome rule samples standard quantum statistics as a baseline; it is not risk "
        "minimization");
  } else {
    const RiskFunction risk = *find_builtin_risk(std::get<RiskRule>(rule).name);
    outcome["risk"] = Json{{"name", risk.name()},
                           {"description", risk.description()},
                           {"stand_in", risk.stand_in()}};
    if (risk.stand_in()) {
      in.warnings.push_back("risk function '" + risk.name() +
                            "' is an illustrative stand-in; the true risk function is not known");
    }
  }

  Json results{{"outcome", outcome}, {"steps", f.steps}, {"trajectory", steps}};

  Json input = input_echo(in);
  input["steps"] = f.steps;
  input["outcome"] = f.outcome;
  input["seed"] = f.seed ? Json(*f.seed) : Json();
  std::vector<std::string> argv = echo_argv("simulate", in);
  argv.insert(argv.end(), {"--steps", std::to_string(f.steps), "--outcome", f.outcome});
  if (f.seed) argv.insert(argv.end(), {"--seed", std::to_string(*f.seed)});
  input["argv"] = argv;

  emit(dump(envelope("simulate", in, input, results)), f, out);
  return kOk;
}

void add_common(CLI::App& sub, Flags& f) {
  auto* rho = sub.add_option("--rho", f.rho, "state weight rho in [0, 1]");
  auto* amps = sub.add_option("--amplitudes", f.amplitudes,
                              "raw state amplitudes 're0,im0,re1,im1' (normalized, phase removed)");
  rho->excludes(amps);
  sub.add_option("--tau", f.tau, "state phase tau")->excludes(amps);
  sub.add_option("--theta-i", f.theta_i, "colatitude of the measured axis")->required();
  sub.add_option("--phi-i", f.phi_i, "azimuth of the measured axis");
  sub.add_flag("--degrees", f.degrees, "angles are given in degrees");
  sub.add_option("--mode", f.mode, "strict | reflective");
  sub.add_option("--entropy-base", f.base, "logarithm base: e | 2");
  sub.add_option("--tol", f.tol, "eigenstate tolerance on Born probabilities");
  sub.add_option("--format", f.format, "output format");
  sub.add_option("--out", f.out_path, "output file (default stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-1/2 collapse model: next-axis solver, landscape scans, oracle checks and "
               "trajectory simulation",
               std::string(kToolName)};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Flags f;
  auto* solve_cmd = app.add_subcommand("solve", "solve for the observer's next measurement axis");
  auto* landscape_cmd = app.add_subcommand("landscape", "tabulate S_f and S_up over a grid");
  auto* oracle_cmd = app.add_subcommand("oracle", "compare the analytic solver with a grid search");
  auto* simulate_cmd = app.add_subcommand("simulate", "simulate a chain of measurements");
  for (CLI::App* sub : {solve_cmd, landscape_cmd, oracle_cmd, simulate_cmd}) add_common(*sub, f);

  landscape_cmd->add_option("--grid", f.grid, "NxM theta-by-phi grid (default 90x180)");
  oracle_cmd->add_option("--grid", f.grid, "NxM theta-by-phi grid (default 400x800)");
  oracle_cmd->add_option("--constraint-tol", f.constraint_tol, "entropy-constraint tolerance");
  oracle_cmd->add_option("--exclude-trivial", f.exclude_trivial,
                         "exclude this angular radius around +-axis_i");
  simulate_cmd->add_option("--steps", f.steps, "number of measurements");
  simulate_cmd->add_option("--outcome", f.outcome, "risk:<name> | born");
  simulate_cmd->add_option("--seed", f.seed, "seed for the born outcome rule");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (!f.rho && !f.amplitudes) throw UsageError("one of --rho or --amplitudes is required");
    if (solve_cmd->parsed()) return cmd_solve(f, out);
    if (landscape_cmd->parsed()) return cmd_landscape(f, out);
    if (oracle_cmd->parsed()) return cmd_oracle(f, out);
    return cmd_simulate(f, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace spincollapse::cli
