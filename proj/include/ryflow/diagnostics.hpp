#pragma once

// Machine-checkable monitors over run records and snapshots: scalar-minimum
// comparison, volume-rate identity, evolution-equation residuals, pinching
// normalization, and derivative-decay diagnostics.

#include <string>
#include <vector>

#include "ryflow/flow.hpp"
#include "ryflow/oracles.hpp"

namespace ryflow {

// On the 2D torus the discrete curvature integral vanishes identically, so
// total volume is conserved to roundoff; this is the relative budget.
inline constexpr double kTorusVolumeRelTol = 1e-12;

// Slack on the pointwise normalization bound R + b >= 1.
inline constexpr double kPinchingFloorTol = 1e-9;

struct MonitorReport {
  std::string name;
  bool applicable = true;   // false when the monitor does not apply (e.g. n=2)
  bool pass = true;
  double worst_margin = 0.0;  // most negative slack observed (>= 0 when pass)
  double worst_t = 0.0;
  std::string detail;
};

// Discretization tolerance tol = c_disc * (h^2 + max dt) for a finished run.
double monitor_tolerance(const RunOutcome& run, double h, double c_disc);

// Checks, with tolerance tol: R_min(t) >= a - tol; R_min nondecreasing
// within tol; and (when a > 0 and dim >= 3) R_min(t) >= comparison(a, t)
// - tol, skipping rows past the comparison blow-up time.
MonitorReport scalar_min_monitor(const std::vector<FlowRecord>& records,
                                 double a, const FlowParams& p, double tol);

// Checks |dVol/dt + integral of (alpha + n beta/2) R dVol| <=
// tol * (1 + |integral R dVol|) at interior snapshots, via the quadratic
// 3-point derivative.
MonitorReport volume_rate_monitor(const std::vector<Snapshot>& snaps,
                                  const FlowParams& p, double tol);

// Max relative drift |V(t) - V(0)| / V(0) over the run; the 2D
// conservation check (pass threshold kTorusVolumeRelTol).
MonitorReport torus_volume_conservation(const std::vector<Snapshot>& snaps);

// Sup-norm residual of the scalar evolution identity
//   dR/dt = [beta(n-1) + alpha] Lap R + 2 alpha |Ric|^2 + beta R^2
// with dR/dt from the quadratic 3-point formula through snapshots a, b, c,
// evaluated at eval (one of the three times).
double evolution_residual_R(const Snapshot& a, const Snapshot& b,
                            const Snapshot& c, const FlowParams& p,
                            double t_eval);

// Same for the two frame Ricci eigenvalue evolution equations on the warped
// family (coordinate components differenced in time, frame-normalized).
double evolution_residual_ric_warped(const Snapshot& a, const Snapshot& b,
                                     const Snapshot& c, const FlowParams& p,
                                     double t_eval);

// Fills the res_r_evol / res_ric_evol record columns from consecutive
// snapshot triples (one-sided at the ends).  Requires snapshots aligned
// with records; a run that kept no snapshots is left untouched.
void annotate_residuals(RunOutcome& run, const FlowParams& p);

struct PinchingContext {
  double b = 1.0;  // 2 max|R(.,0)| + 1
};

struct PinchingSeries {
  std::vector<double> t;
  std::vector<double> f_max;
  std::vector<double> ratio;  // f_max / (1 + running max of the gradient bound)
  MonitorReport report;       // the R + b >= 1 assertion
};

// Pinching quantity f = |Ric0|^2/(R+b)^2 per snapshot; asserts
// R + b >= 1 - kPinchingFloorTol everywhere; the ratio series is emitted
// as a diagnostic only.  Refuses dim = 2 (applicable = false).
PinchingSeries pinching_monitor(const std::vector<Snapshot>& snaps,
                                const PinchingContext& ctx);

// k in {1,2} -> max over recorded t > 0 of t^{(k+1)/2} * sup |D^k frame
// curvature| (grid-difference proxy).  Asserts finiteness only.
struct DecayReport {
  double k1_max = 0.0;
  double k2_max = 0.0;
  MonitorReport report;
};

DecayReport derivative_decay_monitor(const std::vector<Snapshot>& snaps);

// sup over the grid of (|Ric| + |second difference of R| / h^2) for a
// snapshot -- the extension-criterion summary statistic reported in run
// summaries.
double sup_ric_plus_hess_r(const Snapshot& snap);

}  // namespace ryflow
