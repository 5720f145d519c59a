#pragma once

// Outcome selection by risk minimization. The risk R(axis_f; s) picks which
// eigenstate the system collapses to; its true form is unknown, so the
// builtins here are illustrative stand-ins, not a physical model.

#include "spincollapse/spin_core.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spincollapse {

/// Read-only information about the measurement being resolved.
struct RiskContext {
  PureState state;  // before the measurement
  Axis axis_i;      // measured axis
};

class RiskEvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RiskFunction {
 public:
  using Rule = std::function<double(const Axis& axis_f, Outcome s, const RiskContext& context)>;

  RiskFunction(std::string name, std::string description, Rule rule, bool stand_in = true);

  const std::string& name() const { return name_; }
  const std::string& description() const { return description_; }
  /// True for every builtin: none of them is derived from first principles.
  bool stand_in() const { return stand_in_; }

  double evaluate(const Axis& axis_f, Outcome s, const RiskContext& context) const;

  /// Evaluates at raw angles. Equivalent parametrizations of a direction
  /// canonicalize to the same Axis, which makes R periodic by construction.
  double evaluate(double theta_f, double phi_f, Outcome s, const RiskContext& context) const;

 private:
  std::string name_;
  std::string description_;
  Rule rule_;
  bool stand_in_;
};

struct OutcomeSelection {
  Outcome s;
  double risk;
};

/// argmin over s of R(axis_f; s); ties go to s = +1. +inf marks an outcome
/// that can never be chosen. Throws RiskEvaluationError on NaN or -inf, or
/// when both outcomes are +inf.
OutcomeSelection select_outcome(const RiskFunction& risk, const Axis& axis_f,
                                const RiskContext& context);

/// constant, born-surprise, alignment.
const std::vector<RiskFunction>& builtin_risks();

std::optional<RiskFunction> find_builtin_risk(std::string_view name);

}  // namespace spincollapse
