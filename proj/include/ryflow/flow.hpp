#pragma once

// Method-of-lines time integration of the flow dg/dt = -2*alpha*Ric -
// beta*R*g on the two symmetry-reduced families, with CFL step control,
// blow-up detection, and per-step time-series records.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ryflow/curvature.hpp"
#include "ryflow/states.hpp"

namespace ryflow {

enum class TimeScheme { kRk4, kEuler };

struct IntegratorConfig {
  double t_end = 1.0;
  double cfl_safety = 0.2;       // fraction of the explicit diffusion limit
  long max_steps = 1000000;
  long record_every = 10;        // snapshot/record cadence in steps
  double blowup_r_cap = 1e6;     // |R| beyond this declares blow-up
  TimeScheme scheme = TimeScheme::kRk4;
  bool keep_snapshots = true;    // retain full curvature snapshots
};

void validate_config(const IntegratorConfig& c);

enum class RunStatus {
  kReachedTEnd,
  kBlowupDetected,
  kDegenerateMetric,
  kMaxSteps,
};

const char* to_string(RunStatus s);

// One row of the run time series.  The residual columns are filled in by
// the diagnostics layer after the run (they need neighboring snapshots);
// the integrator writes zeros there.
struct FlowRecord {
  double t = 0.0;
  double dt = 0.0;        // size of the step that arrived at t (0 for row 0)
  double r_min = 0.0;
  double r_max = 0.0;
  double volume = 0.0;
  double f_max = 0.0;     // pinching ratio max(|Ric0|^2/(R+b)^2), n >= 3
  double res_r_evol = 0.0;
  double res_ric_evol = 0.0;
  double decay_k1 = 0.0;  // t * sup |first difference of frame curvature| / (2h)
  double decay_k2 = 0.0;  // t^{3/2} * sup |second difference| / h^2
};

// Full state + curvature capture at one record time.
struct Snapshot {
  double t = 0.0;
  double dt = 0.0;
  GeometryState state;
  CurvatureFields curv;
  double volume = 0.0;
  double int_R_dvol = 0.0;
};

struct RunOutcome {
  RunStatus status = RunStatus::kReachedTEnd;
  double t_final = 0.0;
  long steps = 0;
  // Reason detail for degenerate/blow-up stops (empty otherwise).
  std::string stop_detail;
  std::vector<FlowRecord> records;
  std::vector<Snapshot> snapshots;  // aligned 1:1 with records when kept
  GeometryState final_state;
};

// du/dt = -(alpha+beta) R / 2 = (alpha+beta) e^{-2u} Lap_flat u.
Eigen::ArrayXXd rhs_conformal2d(const ConformalTorusState& s,
                                const FlowParams& p);

struct WarpedRhs {
  Eigen::ArrayXd dphi;
  Eigen::ArrayXd dpsi;
};

// phi_t = -(alpha lam_s + beta R / 2) phi,  psi_t = -(alpha lam_sph +
// beta R / 2) psi, from the frame Ricci eigenvalues.
WarpedRhs rhs_warped(const WarpedProductState& s, const FlowParams& p);

// CFL-limited step size cfl_safety * h^2 / (2 D_max), with D_max the largest
// effective diffusivity: max(alpha, alpha+(n-1)beta) scaled by max(e^{-2u})
// resp. max(1/phi^2).  (Implemented with |.| on the coefficients so a
// degenerate-regime run still gets a positive step; in the parabolic regime
// the two definitions coincide.)
double cfl_dt(const GeometryState& s, const FlowParams& p,
              const IntegratorConfig& c);

enum class StepStatus { kOk, kNonFinite, kDegenerate };

struct StepResult {
  StepStatus status = StepStatus::kOk;
  GeometryState state;   // advanced state when kOk, untouched input otherwise
  std::string detail;    // degenerate-metric location when kDegenerate
};

// One explicit step of the requested scheme with a caller-chosen dt.
// Mid-stage or post-step positivity-floor violations report kDegenerate;
// non-finite results report kNonFinite.
StepResult step_with_dt(const GeometryState& s, const FlowParams& p,
                        double dt, TimeScheme scheme);

// One step at the CFL-limited dt (clamped so t_end is hit exactly).
StepResult step(const GeometryState& s, const FlowParams& p,
                const IntegratorConfig& c);

// Offset b = 2 max|R| + 1 used to normalize the pinching quantity
// f = |Ric0|^2 / (R+b)^2; evaluated once on the initial curvature.
double pinching_offset(const CurvatureFields& initial_curv);

// Build the record/snapshot pair for a state (residual columns zero).
Snapshot make_snapshot(const GeometryState& s, double dt);
FlowRecord make_record(const Snapshot& snap, double pinching_b);

// Integrate from the initial state.  Records (and snapshots, when enabled)
// are captured at step 0, every record_every steps, and at the final state.
// Throws InvalidStateError on invalid initial data; mid-run failures are
// reported through the status, never thrown.
RunOutcome run(const GeometryState& initial, const FlowParams& p,
               const IntegratorConfig& c);

}  // namespace ryflow
