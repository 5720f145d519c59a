#include "spincollapse/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spincollapse {
namespace {

// Colatitudes this close to a pole are snapped onto it.
constexpr double kPoleSnap = 1e-15;
// Amplitudes below this magnitude are treated as exactly zero when fixing the
// gauge of a state.
constexpr double kAmplitudeSnap = 1e-14;

// Reduces an angle into [0, 2pi), mapping -0.0 to +0.0.
double reduce_period(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r + 0.0;
}

}  // namespace

Axis Axis::canonical(double theta_raw, double phi_raw) {
  if (!std::isfinite(theta_raw) || !std::isfinite(phi_raw)) {
    throw std::domain_error("axis angles must be finite");
  }
  double theta = reduce_period(theta_raw);
  double phi = phi_raw;
  if (theta > kPi) {
    theta = kTwoPi - theta;
    phi += kPi;
  }
  phi = reduce_period(phi);
  if (theta <= kPoleSnap) return {0.0, 0.0};
  if (kPi - theta <= kPoleSnap) return {kPi, 0.0};
  return {theta, phi};
}

Axis Axis::from_vector(const Vec3& v) {
  if (!v.allFinite() || v.norm() == 0.0) {
    throw std::domain_error("axis vector must be finite and non-zero");
  }
  return canonical(std::atan2(std::hypot(v.x(), v.y()), v.z()), std::atan2(v.y(), v.x()));
}

Vec3 Axis::unit_vector() const {
  const double st = std::sin(theta_);
  return {st * std::cos(phi_), st * std::sin(phi_), std::cos(theta_)};
}

Axis Axis::antipode() const { return canonical(kPi - theta_, phi_ + kPi); }

double angular_distance(const Axis& a, const Axis& b) {
  const Vec3 u = a.unit_vector();
  const Vec3 v = b.unit_vector();
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

double Spinor::norm() const {
  return std::sqrt(std::norm(up_component) + std::norm(down_component));
}

Spinor SpinOperator::apply(const Spinor& v) const {
  const Eigen::Vector2cd r = m_ * v.as_vector();
  return {r(0), r(1)};
}

SpinOperator SpinOperator::sigma_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return SpinOperator(m);
}

SpinOperator SpinOperator::sigma_y() {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd m;
  m << 0.0, -i, i, 0.0;
  return SpinOperator(m);
}

SpinOperator SpinOperator::sigma_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return SpinOperator(m);
}

PureState PureState::canonical(double rho, double tau, double slack) {
  if (!std::isfinite(rho) || !std::isfinite(tau)) {
    throw std::domain_error("state parameters must be finite");
  }
  if (rho < -slack || rho > 1.0 + slack) {
    throw std::domain_error("rho must lie in [0, 1]");
  }
  rho = std::clamp(rho, 0.0, 1.0);
  if (rho == 0.0 || rho == 1.0) return {rho, 0.0};
  return {rho, reduce_period(tau)};
}

PureState PureState::from_amplitudes(Complex a, Complex b) {
  const double n2 = std::norm(a) + std::norm(b);
  if (!std::isfinite(n2) || n2 == 0.0) {
    throw std::domain_error("state amplitudes must be finite and not both zero");
  }
  const double n = std::sqrt(n2);
  a /= n;
  b /= n;
  if (std::abs(b) <= kAmplitudeSnap) return {1.0, 0.0};
  if (std::abs(a) <= kAmplitudeSnap) return {0.0, 0.0};
  // Rotate the global phase so that b is real and positive.
  const Complex a_gauged = a * std::conj(b / std::abs(b));
  const double rho = std::norm(a) / (std::norm(a) + std::norm(b));
  return canonical(rho, -std::arg(a_gauged));
}

Spinor PureState::amplitudes() const {
  return {std::polar(std::sqrt(rho_), -tau_), Complex(std::sqrt(1.0 - rho_), 0.0)};
}

Vec3 PureState::bloch_vector() const {
  const double r = 2.0 * std::sqrt(rho_ * (1.0 - rho_));
  return {r * std::cos(tau_), r * std::sin(tau_), 2.0 * rho_ - 1.0};
}

SpinOperator spin_operator(const Axis& axis) {
  const double ct = std::cos(axis.theta());
  const double st = std::sin(axis.theta());
  Eigen::Matrix2cd m;
  m << ct, std::polar(st, -axis.phi()), std::polar(st, axis.phi()), -ct;
  return SpinOperator(m);
}

Eigenpair eigenpair(const Axis& axis) {
  const double c = std::cos(0.5 * axis.theta());
  const double s = std::sin(0.5 * axis.theta());
  const Complex phase = std::polar(1.0, -axis.phi());
  return {Spinor{c * phase, Complex(s, 0.0)}, Spinor{-s * phase, Complex(c, 0.0)}};
}

Complex overlap(const Spinor& bra, const Spinor& ket) {
  return std::conj(bra.up_component) * ket.up_component +
         std::conj(bra.down_component) * ket.down_component;
}

double born_up(const PureState& state, const Axis& axis) {
  const double rho = state.rho();
  const double c = std::cos(0.5 * axis.theta());
  const double s = std::sin(0.5 * axis.theta());
  const double p = rho * c * c + (1.0 - rho) * s * s +
                   std::sqrt(rho * (1.0 - rho)) * std::sin(axis.theta()) *
                       std::cos(axis.phi() - state.tau());
  return std::clamp(p, 0.0, 1.0);
}

bool is_eigenstate(const PureState& state, const Axis& axis, double tol) {
  const double p = born_up(state, axis);
  return p <= tol || p >= 1.0 - tol;
}

PureState state_from_eigenvector(const Axis& axis, Outcome s) {
  const Eigenpair e = eigenpair(axis);
  return PureState::from_spinor(s == Outcome::up ? e.up : e.down);
}

}  // namespace spincollapse
