#pragma once

// Self-contained verification scenarios: closed-form reference solutions and
// structural properties checked against the numerical machinery.  Each
// scenario runs a handful of named checks and reports pass/fail per check.

#include <string>
#include <vector>

namespace ryflow {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured quantity (residual, error, ...)
  double threshold = 0.0;  // bound the value was compared against
  std::string detail;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Names accepted by run_scenario.
const std::vector<std::string>& scenario_names();

// Runs one named scenario; throws std::invalid_argument on an unknown name.
//
//  "sphere-ode":        round-sphere and product-metric closed-form solutions
//                       against the ODE right-hand sides and bounds.
//  "torus-gaussbonnet": a short 2D conformal run; total volume must be
//                       conserved and the curvature integral must vanish.
//  "symbol-sweep":      randomized principal-symbol spectrum checks across
//                       the parabolic parameter range.
ScenarioReport run_scenario(const std::string& name);

}  // namespace ryflow
