#pragma once

// Spin-1/2 kinematics: measurement axes, pure states, the projection operator
// sigma.n and its eigenvectors, overlaps and Born probabilities.

#include <Eigen/Dense>

#include <complex>
#include <numbers>

namespace spincollapse {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDefaultTol = 1e-12;

/// Result of a spin-projection measurement along an axis.
enum class Outcome : int { up = +1, down = -1 };

inline int sign(Outcome s) { return static_cast<int>(s); }

/// A measurement direction on the unit sphere, always held in canonical form:
/// theta in [0, pi], phi in [0, 2pi), and phi == 0 at either pole.
class Axis {
 public:
  /// The +z axis.
  Axis() = default;

  /// Reduces arbitrary finite angles to the canonical representative of the
  /// same direction. Throws std::domain_error on non-finite input.
  static Axis canonical(double theta_raw, double phi_raw);

  /// Direction of a non-zero 3-vector. Throws std::domain_error on a zero or
  /// non-finite vector.
  static Axis from_vector(const Vec3& v);

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  /// (sin t cos p, sin t sin p, cos t)
  Vec3 unit_vector() const;

  /// The opposite direction, (pi - theta, phi + pi) canonicalized.
  Axis antipode() const;

  friend bool operator==(const Axis&, const Axis&) = default;

 private:
  Axis(double theta, double phi) : theta_(theta), phi_(phi) {}

  double theta_ = 0.0;
  double phi_ = 0.0;
};

inline Axis canonicalize_axis(double theta_raw, double phi_raw) {
  return Axis::canonical(theta_raw, phi_raw);
}
inline Vec3 unit_vector(const Axis& axis) { return axis.unit_vector(); }
inline Axis antipode(const Axis& axis) { return axis.antipode(); }

/// Great-circle distance between two axes, in radians.
double angular_distance(const Axis& a, const Axis& b);

/// A two-component complex amplitude in the sigma_z basis.
struct Spinor {
  Complex up_component;
  Complex down_component;

  double norm() const;
  Eigen::Vector2cd as_vector() const { return {up_component, down_component}; }
};

/// Hermitian 2x2 matrix sigma.n for some unit axis n.
class SpinOperator {
 public:
  explicit SpinOperator(const Eigen::Matrix2cd& m) : m_(m) {}

  Complex entry(int row, int col) const { return m_(row, col); }
  const Eigen::Matrix2cd& matrix() const { return m_; }

  Spinor apply(const Spinor& v) const;

  static SpinOperator sigma_x();
  static SpinOperator sigma_y();
  static SpinOperator sigma_z();

 private:
  Eigen::Matrix2cd m_;
};

/// A normalized spin-1/2 pure state in the gauge where the sigma_z-down
/// amplitude is real and non-negative:
///   |psi> = (sqrt(rho) e^{-i tau}, sqrt(1 - rho)).
/// For rho in {0, 1} the phase is meaningless and tau is stored as 0.
class PureState {
 public:
  /// |up_z>
  PureState() = default;

  /// rho may overshoot [0, 1] by at most `slack` (then it is clamped); tau is
  /// reduced into [0, 2pi). Throws std::domain_error otherwise.
  static PureState canonical(double rho, double tau, double slack = kDefaultTol);

  /// Normalizes (a, b) and removes the global phase. Throws std::domain_error
  /// for a zero or non-finite vector.
  static PureState from_amplitudes(Complex a, Complex b);
  static PureState from_spinor(const Spinor& s) {
    return from_amplitudes(s.up_component, s.down_component);
  }

  double rho() const { return rho_; }
  double tau() const { return tau_; }

  Spinor amplitudes() const;

  /// (<sigma_x>, <sigma_y>, <sigma_z>) of the state; a unit vector.
  Vec3 bloch_vector() const;

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  PureState(double rho, double tau) : rho_(rho), tau_(tau) {}

  double rho_ = 1.0;
  double tau_ = 0.0;
};

struct Eigenpair {
  Spinor up;    // eigenvalue +1
  Spinor down;  // eigenvalue -1
};

SpinOperator spin_operator(const Axis& axis);

/// Eigenvectors in the fixed phase convention
///   up   = (cos(t/2) e^{-i p},  sin(t/2))
///   down = (-sin(t/2) e^{-i p}, cos(t/2))
Eigenpair eigenpair(const Axis& axis);

/// <bra|ket>, conjugate-linear in bra.
Complex overlap(const Spinor& bra, const Spinor& ket);

/// Probability of outcome +1 when measuring sigma.n on `state`.
double born_up(const PureState& state, const Axis& axis);

inline double born_probability(const PureState& state, const Axis& axis, Outcome s) {
  const double p = born_up(state, axis);
  return s == Outcome::up ? p : 1.0 - p;
}

inline Vec3 bloch_vector(const PureState& state) { return state.bloch_vector(); }

/// True when the state is (within tol on the Born probability) an eigenstate
/// of sigma.n.
bool is_eigenstate(const PureState& state, const Axis& axis, double tol = kDefaultTol);

/// The post-measurement state: the eigenvector of sigma(axis) for outcome s.
PureState state_from_eigenvector(const Axis& axis, Outcome s);

}  // namespace spincollapse
