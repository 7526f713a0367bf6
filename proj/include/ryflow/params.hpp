#pragma once

#include <stdexcept>
#include <string>

namespace ryflow {

// Smallest metric coefficient (conformal factor e^{2u}, or phi/psi on a
// warped product) that the integrator treats as nondegenerate.
inline constexpr double kPositivityFloor = 1e-8;

// A caller handed us a state or parameter set that violates a documented
// precondition (wrong dimension, odd grid, non-finite entries, ...).
class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The evolving metric lost uniform positivity mid-run.  Carries where the
// violation happened and the offending value so callers can report it.
class DegenerateMetricError : public std::runtime_error {
 public:
  DegenerateMetricError(const std::string& what, std::string location,
                        double value)
      : std::runtime_error(what),
        location_(std::move(location)),
        value_(value) {}

  const std::string& location() const { return location_; }
  double value() const { return value_; }

 private:
  std::string location_;
  double value_;
};

// Coefficients of the flow dg/dt = -2*alpha*Ric - beta*R*g together with the
// ambient dimension.  `allow_degenerate` lets experiments run outside the
// parabolic regime (the solver still integrates; monitors are expected to
// flag the results).
struct FlowParams {
  double alpha = 1.0;
  double beta = 0.0;
  int dim = 2;
  bool allow_degenerate = false;
};

// The parabolicity condition is alpha > 0 and beta > -alpha/(n-1); this
// returns that lower bound for beta.
double regime_beta_floor(const FlowParams& p);

bool in_parabolic_regime(const FlowParams& p);

// Throws InvalidStateError when dim < 2 or a coefficient is non-finite, and
// when the parameters leave the parabolic regime and allow_degenerate is
// false.
void validate_params(const FlowParams& p);

}  // namespace ryflow
