#pragma once

// Shannon entropies of the two-outcome Born distributions that appear in the
// collapse model. All values are in nats unless another base is requested.

#include "spincollapse/spin_core.hpp"

#include <string_view>

namespace spincollapse {

/// Entropy in units fixed by a LogBase; non-negative and at most log(2).
using EntropyValue = double;

enum class LogBase { natural, two };

/// Factor converting nats into the requested unit.
double nats_to(LogBase base);

std::string_view to_string(LogBase base);

/// Parses "e" / "2". Throws std::invalid_argument otherwise.
LogBase parse_log_base(std::string_view text);

/// H(p) = -p log p - (1-p) log(1-p), with 0 log 0 = 0.
/// p may overshoot [0, 1] by at most 1e-12 (clamped); anything further is a
/// std::domain_error.
EntropyValue binary_entropy(double p, LogBase base = LogBase::natural);

/// -p log p - q log q for a distribution supplied as both of its masses.
/// Useful when 1 - p cannot be formed without cancellation.
EntropyValue binary_entropy(double p, double q, LogBase base);

/// Entropy of measuring `axis_i` on `state` (uncertainty before the measurement).
EntropyValue s_i(const PureState& state, const Axis& axis_i, LogBase base = LogBase::natural);

/// Entropy of measuring `axis_f` on `state`.
EntropyValue s_f(const PureState& state, const Axis& axis_f, LogBase base = LogBase::natural);

/// Entropy of the up-eigenstate of axis_i expanded in the axis_f basis.
EntropyValue s_up(const Axis& axis_i, const Axis& axis_f, LogBase base = LogBase::natural);

/// Entropy of the down-eigenstate of axis_i expanded in the axis_f basis.
/// Identical to s_up in exact arithmetic.
EntropyValue s_down(const Axis& axis_i, const Axis& axis_f, LogBase base = LogBase::natural);

}  // namespace spincollapse
