#pragma once

// The observer's next measurement axis: minimize S_up(axis_i, axis_f) over
// axis_f subject to S_f(state, axis_f) == S_i(state, axis_i).
//
// Geometry used throughout: with m the Bloch vector of the state and n_i the
// measured axis, born_up(state, n) = (1 + n.m)/2, so the constraint holds
// exactly on the circles n.m = +-(n_i.m) about m. S_up restricted to such a
// circle only depends on n.n_i, and its in-plane critical points are where
// the circle crosses the plane spanned by m and n_i.

#include "spincollapse/entropy.hpp"
#include "spincollapse/spin_core.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace spincollapse {

enum class SolveMode {
  strict,      // global constrained minimizers (these are +-n_i)
  reflective,  // +-n_i excluded; mirror images of n_i about m
};

std::string_view to_string(SolveMode mode);
/// Parses "strict" / "reflective". Throws std::invalid_argument otherwise.
SolveMode parse_solve_mode(std::string_view text);

struct FeasibleCircle {
  double level;       // Born probability p with (1 + n.m)/2 == p on the circle
  double colatitude;  // angle between m and any point on the circle
};

/// Axes satisfying the entropy-conservation constraint: one circle per
/// admissible level {p_i, 1 - p_i}, a single great circle when p_i == 1/2.
struct FeasibleSet {
  Vec3 center;  // Bloch vector of the state
  std::vector<FeasibleCircle> circles;

  /// Point of circle `index` at azimuth `psi`, measured from the half-plane
  /// containing axis_i about the center.
  Axis point(std::size_t index, double psi, const Axis& axis_i) const;
};

double constraint_residual(const PureState& state, const Axis& axis_i, const Axis& axis_f,
                           LogBase base = LogBase::natural);

/// std::nullopt signals the no-collapse case (state is an eigenstate of axis_i).
std::optional<FeasibleSet> feasible_set(const PureState& state, const Axis& axis_i,
                                        double eigen_tol = kDefaultTol);

enum class ExtremumKind { min, max };
std::string_view to_string(ExtremumKind kind);

struct Extremum {
  Axis axis;
  EntropyValue value;
  ExtremumKind kind;  // of S_up restricted to the feasible circle
};

struct SolverSolution {
  std::vector<Axis> minimizers;  // canonical order: smaller theta, then smaller phi
  EntropyValue objective = 0.0;
  std::vector<Extremum> extrema;
  bool no_collapse = false;
  SolveMode mode = SolveMode::strict;
  /// Reflective mode with p_i == 1/2: the mirror images coincide with -+n_i.
  bool reflection_degenerate = false;
};

struct SolverOptions {
  SolveMode mode = SolveMode::strict;
  LogBase base = LogBase::natural;
  double eigen_tol = kDefaultTol;
};

SolverSolution solve(const PureState& state, const Axis& axis_i, const SolverOptions& options = {});

/// Orders axes by theta, then phi.
bool canonical_less(const Axis& a, const Axis& b);

// ---------------------------------------------------------------------------
// Numeric path: descent on the azimuth of each feasible circle.

struct DescentOptions {
  double tolerance = 1e-10;  // final step length in azimuth
  int max_iterations = 200;
  int starts = 16;  // equally spaced initial azimuths per circle
  LogBase base = LogBase::natural;
  double eigen_tol = kDefaultTol;
};

struct CircleMinimum {
  std::size_t circle;
  double azimuth;
  Axis axis;
  EntropyValue value;
  int iterations;
};

/// Distinct local minima of S_up on every feasible circle, found by
/// projected coordinate descent from several starts. Empty in the
/// no-collapse case. Shallow mirror minima (cos^2 beta just under 1/2) have
/// basins narrower than the start spacing and can be missed.
std::vector<CircleMinimum> numeric_circle_minima(const PureState& state, const Axis& axis_i,
                                                 const DescentOptions& options = {});

// ---------------------------------------------------------------------------
// Brute-force grid oracle.

struct OracleOptions {
  std::size_t n_theta = 400;
  std::size_t n_phi = 800;
  double constraint_tol = 5e-3;
  /// Drop grid points within this angular radius of +-axis_i.
  std::optional<double> exclude_radius;
  LogBase base = LogBase::natural;
  double eigen_tol = kDefaultTol;
  unsigned threads = 0;  // 0: hardware concurrency
};

enum class OracleStatus { found, infeasible, no_collapse };
std::string_view to_string(OracleStatus status);

struct OracleResult {
  OracleStatus status = OracleStatus::infeasible;
  Axis axis;
  EntropyValue objective = 0.0;
  std::size_t feasible_points = 0;
};

/// Grid axis (theta_j, phi_k) with theta_j = pi j/(n_theta - 1) and
/// phi_k = 2 pi k / n_phi.
Axis grid_axis(std::size_t j, std::size_t k, std::size_t n_theta, std::size_t n_phi);

/// Exhaustive scan of the (theta, phi) grid. Among points with
/// |constraint_residual| <= constraint_tol (outside excluded neighborhoods)
/// returns the one with the smallest S_up; ties go to the earliest point in
/// row-major order. Deterministic for any thread count.
/// Throws std::invalid_argument for grids smaller than 8 or tol <= 0.
OracleResult brute_force_oracle(const PureState& state, const Axis& axis_i,
                                const OracleOptions& options = {});

}  // namespace spincollapse
