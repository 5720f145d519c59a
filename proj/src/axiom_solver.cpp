#include "spincollapse/axiom_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace spincollapse {
namespace {

// Orthonormal frame of the problem: m is the Bloch vector, e the unit
// component of n_i orthogonal to m, w = m x e. Then
//   n_i = cos(beta) m + sin(beta) e.
struct Frame {
  Vec3 m;
  Vec3 e;
  Vec3 w;
  double beta;

  Frame(const Vec3& center, const Axis& axis_i) : m(center) {
    const Vec3 n = axis_i.unit_vector();
    const double c = n.dot(m);
    const Vec3 perp = n - c * m;
    const double s = perp.norm();
    // Parallel m and n_i means an eigenstate, which callers filter out.
    if (!(s > 0.0)) throw std::logic_error("Bloch vector parallel to the measured axis");
    beta = std::atan2(s, c);
    e = perp / s;
    w = m.cross(e);
  }

  Vec3 point(double colatitude, double psi) const {
    return std::cos(colatitude) * m +
           std::sin(colatitude) * (std::cos(psi) * e + std::sin(psi) * w);
  }
};

// Both masses of the Born distribution of the up-eigenstate of n_i in the
// basis of a circle point, written as sums of non-negative terms so that the
// small mass keeps full relative precision near +-n_i:
//   p = cos^2((beta + alpha)/2) + B cos^2(psi/2)
//   q = sin^2((beta - alpha)/2) + B sin^2(psi/2),   B = sin(beta) sin(alpha)
struct CircleProfile {
  double beta;
  double alpha;

  std::pair<double, double> masses(double psi) const {
    const double b = std::sin(beta) * std::sin(alpha);
    const double cp = std::cos(0.5 * (beta + alpha));
    const double sm = std::sin(0.5 * (beta - alpha));
    const double ch = std::cos(0.5 * psi);
    const double sh = std::sin(0.5 * psi);
    return {cp * cp + b * ch * ch, sm * sm + b * sh * sh};
  }

  EntropyValue s_up(double psi, LogBase base) const {
    auto [p, q] = masses(psi);
    const double total = p + q;
    return binary_entropy(p / total, q / total, base);
  }

  // Sign of dS_up/dpsi: H'(p) has the sign of q - p and dp/dpsi = -B sin(psi)/2.
  int slope_sign(double psi) const {
    auto [p, q] = masses(psi);
    const double d = (q - p) * -std::sin(psi);
    return (d > 0.0) - (d < 0.0);
  }
};

constexpr double kHandover = 1e-6;  // azimuth step where descent switches to bisection

double wrap(double psi) {
  double r = std::fmod(psi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

double azimuth_gap(double a, double b) {
  const double d = std::fabs(wrap(a) - wrap(b));
  return std::min(d, kTwoPi - d);
}

// In-plane critical point; +-n_i are carried as the exact input axes.
struct CriticalPoint {
  std::size_t circle;
  double psi;
  Axis axis;
};

}  // namespace

std::string_view to_string(SolveMode mode) {
  return mode == SolveMode::reflective ? "reflective" : "strict";
}

SolveMode parse_solve_mode(std::string_view text) {
  if (text == "strict") return SolveMode::strict;
  if (text == "reflective") return SolveMode::reflective;
  throw std::invalid_argument("mode must be 'strict' or 'reflective'");
}

std::string_view to_string(ExtremumKind kind) { return kind == ExtremumKind::min ? "min" : "max"; }

std::string_view to_string(OracleStatus status) {
  switch (status) {
    case OracleStatus::found:
      return "found";
    case OracleStatus::infeasible:
      return "infeasible";
    case OracleStatus::no_collapse:
      return "no_collapse";
  }
  return "infeasible";
}

bool canonical_less(const Axis& a, const Axis& b) {
  return std::pair(a.theta(), a.phi()) < std::pair(b.theta(), b.phi());
}

Axis FeasibleSet::point(std::size_t index, double psi, const Axis& axis_i) const {
  const Frame frame(center, axis_i);
  return Axis::from_vector(frame.point(circles.at(index).colatitude, psi));
}

double constraint_residual(const PureState& state, const Axis& axis_i, const Axis& axis_f,
                           LogBase base) {
  return s_f(state, axis_f, base) - s_i(state, axis_i, base);
}

std::optional<FeasibleSet> feasible_set(const PureState& state, const Axis& axis_i,
                                        double eigen_tol) {
  if (is_eigenstate(state, axis_i, eigen_tol)) return std::nullopt;
  const double p_i = born_up(state, axis_i);
  FeasibleSet set{state.bloch_vector(), {}};
  const Frame frame(set.center, axis_i);
  // The colatitude arccos(2p - 1) of each level is taken from the frame, which
  // is the same angle without the precision loss of arccos near +-1.
  if (std::fabs(p_i - 0.5) <= eigen_tol) {
    set.circles.push_back({p_i, frame.beta});
  } else {
    set.circles.push_back({p_i, frame.beta});
    set.circles.push_back({1.0 - p_i, kPi - frame.beta});
  }
  return set;
}

SolverSolution solve(const PureState& state, const Axis& axis_i, const SolverOptions& options) {
  SolverSolution out;
  out.mode = options.mode;

  const std::optional<FeasibleSet> feasible = feasible_set(state, axis_i, options.eigen_tol);
  if (!feasible) {
    out.no_collapse = true;
    out.minimizers = {axis_i};
    out.objective = 0.0;
    return out;
  }

  const Frame frame(feasible->center, axis_i);
  const bool single = feasible->circles.size() == 1;
  // Mirror image of n_i about m; on a single great circle it is -n_i.
  const Axis reflection =
      single ? axis_i.antipode() : Axis::from_vector(frame.point(frame.beta, kPi));

  // psi = 0 on the first circle is n_i itself; psi = pi on the last circle is -n_i.
  std::vector<CriticalPoint> points;
  points.push_back({0, 0.0, axis_i});
  points.push_back({0, kPi, reflection});
  if (!single) {
    points.push_back({1, 0.0, reflection.antipode()});
    points.push_back({1, kPi, axis_i.antipode()});
  }

  for (const CriticalPoint& cp : points) {
    const CircleProfile profile{frame.beta, feasible->circles[cp.circle].colatitude};
    const auto [p, q] = profile.masses(cp.psi);
    const double p_up = p / (p + q);
    // At psi = 0 the mass p is maximal on the circle, at psi = pi minimal;
    // H has a local minimum there iff that extreme lies away from 1/2.
    const bool is_min = cp.psi == 0.0 ? p_up > 0.5 : p_up < 0.5;
    out.extrema.push_back({cp.axis, profile.s_up(cp.psi, options.base),
                           is_min ? ExtremumKind::min : ExtremumKind::max});
  }

  if (options.mode == SolveMode::strict) {
    out.minimizers = {points.front().axis, points.back().axis};
    out.objective = out.extrema.front().value;
  } else {
    out.minimizers = {reflection, reflection.antipode()};
    out.objective = out.extrema[1].value;
    out.reflection_degenerate = single;
  }
  std::sort(out.minimizers.begin(), out.minimizers.end(), canonical_less);
  return out;
}

std::vector<CircleMinimum> numeric_circle_minima(const PureState& state, const Axis& axis_i,
                                                 const DescentOptions& options) {
  if (options.starts < 1 || options.max_iterations < 1 || !(options.tolerance > 0.0)) {
    throw std::invalid_argument("descent options out of range");
  }
  const std::optional<FeasibleSet> feasible = feasible_set(state, axis_i, options.eigen_tol);
  if (!feasible) return {};
  const Frame frame(feasible->center, axis_i);

  std::vector<CircleMinimum> minima;
  for (std::size_t c = 0; c < feasible->circles.size(); ++c) {
    const double alpha = feasible->circles[c].colatitude;
    const CircleProfile profile{frame.beta, alpha};
    const double spacing = kTwoPi / options.starts;

    for (int k = 0; k < options.starts; ++k) {
      double psi = (k + 0.5) * spacing;
      double value = profile.s_up(psi, options.base);
      double step = spacing;
      int it = 0;
      // Pattern search picks the basin; values stop discriminating near
      // sqrt(eps), so it hands over to bisection on the slope sign.
      while (step > kHandover && it < options.max_iterations) {
        ++it;
        const double fwd = wrap(psi + step);
        const double bwd = wrap(psi - step);
        const double f_fwd = profile.s_up(fwd, options.base);
        const double f_bwd = profile.s_up(bwd, options.base);
        if (f_fwd < value && f_fwd <= f_bwd) {
          psi = fwd;
          value = f_fwd;
        } else if (f_bwd < value) {
          psi = bwd;
          value = f_bwd;
        } else {
          step *= 0.5;
        }
      }
      double lo = psi - 2.0 * step;
      double hi = psi + 2.0 * step;
      if (profile.slope_sign(wrap(lo)) < 0 && profile.slope_sign(wrap(hi)) > 0) {
        while (hi - lo > options.tolerance && it < options.max_iterations) {
          ++it;
          const double mid = 0.5 * (lo + hi);
          const int g = profile.slope_sign(wrap(mid));
          if (g == 0) {
            lo = hi = mid;
          } else if (g < 0) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        psi = wrap(0.5 * (lo + hi));
        value = profile.s_up(psi, options.base);
      }

      auto same = std::find_if(minima.begin(), minima.end(), [&](const CircleMinimum& m) {
        return m.circle == c && azimuth_gap(m.azimuth, psi) <= 1e-6;
      });
      if (same == minima.end()) {
        minima.push_back({c, psi, Axis::from_vector(frame.point(alpha, psi)), value, it});
      } else if (value < same->value) {
        *same = {c, psi, Axis::from_vector(frame.point(alpha, psi)), value, it};
      }
    }
  }
  return minima;
}

Axis grid_axis(std::size_t j, std::size_t k, std::size_t n_theta, std::size_t n_phi) {
  return Axis::canonical(kPi * static_cast<double>(j) / static_cast<double>(n_theta - 1),
                         kTwoPi * static_cast<double>(k) / static_cast<double>(n_phi));
}

OracleResult brute_force_oracle(const PureState& state, const Axis& axis_i,
                                const OracleOptions& options) {
  if (options.n_theta < 8 || options.n_phi < 8) {
    throw std::invalid_argument("oracle grid must be at least 8 x 8");
  }
  if (!(options.constraint_tol > 0.0) || !std::isfinite(options.constraint_tol)) {
    throw std::invalid_argument("oracle constraint tolerance must be positive");
  }
  if (options.exclude_radius && !(*options.exclude_radius >= 0.0)) {
    throw std::invalid_argument("exclusion radius must be non-negative");
  }

  OracleResult result;
  if (is_eigenstate(state, axis_i, options.eigen_tol)) {
    result.status = OracleStatus::no_collapse;
    result.axis = axis_i;
    return result;
  }

  const double target = s_i(state, axis_i, options.base);
  const Axis opposite = axis_i.antipode();

  struct Partial {
    double value = std::numeric_limits<double>::infinity();
    std::size_t index = std::numeric_limits<std::size_t>::max();
    std::size_t feasible = 0;
  };

  auto scan_rows = [&](std::size_t row_begin, std::size_t row_end) {
    Partial best;
    for (std::size_t j = row_begin; j < row_end; ++j) {
      for (std::size_t k = 0; k < options.n_phi; ++k) {
        const Axis axis = grid_axis(j, k, options.n_theta, options.n_phi);
        if (std::fabs(s_f(state, axis, options.base) - target) > options.constraint_tol) continue;
        if (options.exclude_radius && (angular_distance(axis, axis_i) < *options.exclude_radius ||
                                       angular_distance(axis, opposite) < *options.exclude_radius)) {
          continue;
        }
        ++best.feasible;
        const double value = s_up(axis_i, axis, options.base);
        const std::size_t index = j * options.n_phi + k;
        if (std::tie(value, index) < std::tie(best.value, best.index)) {
          best.value = value;
          best.index = index;
        }
      }
    }
    return best;
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(options.n_theta));
  std::vector<Partial> partials(threads);
  {
    std::vector<std::jthread> workers;
    const std::size_t rows = options.n_theta;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = rows * t / threads;
      const std::size_t end = rows * (t + 1) / threads;
      workers.emplace_back([&, t, begin, end] { partials[t] = scan_rows(begin, end); });
    }
  }

  Partial best;
  for (const Partial& p : partials) {
    best.feasible += p.feasible;
    if (std::tie(p.value, p.index) < std::tie(best.value, best.index)) {
      best.value = p.value;
      best.index = p.index;
    }
  }
  result.feasible_points = best.feasible;
  if (best.feasible == 0) {
    result.status = OracleStatus::infeasible;
    return result;
  }
  result.status = OracleStatus::found;
  result.axis = grid_axis(best.index / options.n_phi, best.index % options.n_phi, options.n_theta,
                          options.n_phi);
  result.objective = best.value;
  return result;
}

}  // namespace spincollapse
