#include "ryflow/flow.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ryflow/fd.hpp"

namespace ryflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest symbol eigenvalue magnitude of the reduced system: in the
// parabolic regime this is max(alpha, alpha+(n-1)beta) exactly.
double diffusion_coefficient(const FlowParams& p, int dim) {
  const double n = static_cast<double>(dim);
  return std::max(std::abs(p.alpha),
                  std::abs(p.alpha + (n - 1.0) * p.beta));
}

struct ConformalField {
  Eigen::ArrayXXd u;

  ConformalField operator+(const ConformalField& o) const { return {u + o.u}; }
  ConformalField scaled(double c) const { return {c * u}; }
};

struct ConformalStager {
  const ConformalTorusState& base;
  const FlowParams& p;

  ConformalTorusState with(const ConformalField& f) const {
    ConformalTorusState s = base;
    s.u = f.u;
    return s;
  }
  bool finite(const ConformalField& f) const { return f.u.isFinite().all(); }
  ConformalField rhs(const ConformalField& f) const {
    return {rhs_conformal2d(with(f), p)};
  }
};

struct WarpedField {
  Eigen::ArrayXd phi;
  Eigen::ArrayXd psi;

  WarpedField operator+(const WarpedField& o) const {
    return {phi + o.phi, psi + o.psi};
  }
  WarpedField scaled(double c) const { return {c * phi, c * psi}; }
};

struct WarpedStager {
  const WarpedProductState& base;
  const FlowParams& p;

  WarpedProductState with(const WarpedField& f) const {
    WarpedProductState s = base;
    s.phi = f.phi;
    s.psi = f.psi;
    return s;
  }
  bool finite(const WarpedField& f) const {
    return f.phi.isFinite().all() && f.psi.isFinite().all();
  }
  WarpedField rhs(const WarpedField& f) const {
    const WarpedRhs r = rhs_warped(with(f), p);
    return {r.dphi, r.dpsi};
  }
};

// Shared RK4/Euler stage driver.  Field must support + and scaled();
// Stager::rhs may throw DegenerateMetricError (warped positivity floor).
template <typename Stager, typename Field>
StepResult advance(const GeometryState& s, const Stager& st, const Field& y0,
                   double dt, TimeScheme scheme,
                   GeometryState (*repack)(const Stager&, const Field&,
                                           double)) {
  StepResult out;
  out.state = s;
  try {
    Field y1{};
    if (scheme == TimeScheme::kEuler) {
      y1 = y0 + st.rhs(y0).scaled(dt);
    } else {
      const Field k1 = st.rhs(y0);
      const Field s2 = y0 + k1.scaled(0.5 * dt);
      if (!st.finite(s2)) {
        out.status = StepStatus::kNonFinite;
        return out;
      }
      const Field k2 = st.rhs(s2);
      const Field s3 = y0 + k2.scaled(0.5 * dt);
      if (!st.finite(s3)) {
        out.status = StepStatus::kNonFinite;
        return out;
      }
      const Field k3 = st.rhs(s3);
      const Field s4 = y0 + k3.scaled(dt);
      if (!st.finite(s4)) {
        out.status = StepStatus::kNonFinite;
        return out;
      }
      const Field k4 = st.rhs(s4);
      y1 = y0 + (k1 + k2.scaled(2.0) + k3.scaled(2.0) + k4).scaled(dt / 6.0);
    }
    if (!st.finite(y1)) {
      out.status = StepStatus::kNonFinite;
      return out;
    }
    out.state = repack(st, y1, dt);
    return out;
  } catch (const DegenerateMetricError& e) {
    out.status = StepStatus::kDegenerate;
    out.detail = std::string(e.what()) + " at " + e.location();
    return out;
  }
}

GeometryState repack_conformal(const ConformalStager& st,
                               const ConformalField& f, double dt) {
  ConformalTorusState s = st.with(f);
  s.t = st.base.t + dt;
  return s;
}

GeometryState repack_warped(const WarpedStager& st, const WarpedField& f,
                            double dt) {
  WarpedProductState s = st.with(f);
  s.t = st.base.t + dt;
  return s;
}

// Scalar curvature without the full field assembly, for the per-step
// blow-up cap check.
Eigen::ArrayXXd light_scalar(const GeometryState& s) {
  if (const auto* torus = std::get_if<ConformalTorusState>(&s)) {
    return scalar_curvature_conformal2d(*torus);
  }
  return warped_frame_data(std::get<WarpedProductState>(s)).R;
}

}  // namespace

void validate_config(const IntegratorConfig& c) {
  if (!(c.t_end > 0.0) || !std::isfinite(c.t_end)) {
    throw InvalidStateError("IntegratorConfig: t_end must be positive");
  }
  if (!(c.cfl_safety > 0.0) || c.cfl_safety > 1.0) {
    throw InvalidStateError("IntegratorConfig: cfl_safety must be in (0,1]");
  }
  if (c.max_steps < 1) {
    throw InvalidStateError("IntegratorConfig: max_steps must be >= 1");
  }
  if (c.record_every < 1) {
    throw InvalidStateError("IntegratorConfig: record_every must be >= 1");
  }
  if (!(c.blowup_r_cap > 0.0)) {
    throw InvalidStateError("IntegratorConfig: blowup_r_cap must be > 0");
  }
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kReachedTEnd: return "reached_t_end";
    case RunStatus::kBlowupDetected: return "blowup_detected";
    case RunStatus::kDegenerateMetric: return "degenerate_metric";
    case RunStatus::kMaxSteps: return "max_steps";
  }
  return "unknown";
}

Eigen::ArrayXXd rhs_conformal2d(const ConformalTorusState& s,
                                const FlowParams& p) {
  // In 2D, Ric = (R/2) g, so the flow reduces to du/dt = -(alpha+beta) R/2
  // with R = -2 e^{-2u} Lap_flat u.
  return (p.alpha + p.beta) * (-2.0 * s.u).exp() * fd::laplacian_flat(s.u, s.h);
}

WarpedRhs rhs_warped(const WarpedProductState& s, const FlowParams& p) {
  const WarpedFrameData core = warped_frame_data(s);
  WarpedRhs out;
  out.dphi = -(p.alpha * core.ric_s + 0.5 * p.beta * core.R) * s.phi;
  out.dpsi = -(p.alpha * core.ric_sphere + 0.5 * p.beta * core.R) * s.psi;
  return out;
}

double cfl_dt(const GeometryState& s, const FlowParams& p,
              const IntegratorConfig& c) {
  const double h = grid_spacing(s);
  double geom_factor = 0.0;
  if (const auto* torus = std::get_if<ConformalTorusState>(&s)) {
    geom_factor = std::exp(-2.0 * torus->u.minCoeff());
  } else {
    const auto& w = std::get<WarpedProductState>(s);
    const double min_phi = w.phi.minCoeff();
    geom_factor = 1.0 / (min_phi * min_phi);
  }
  const double d_max = diffusion_coefficient(p, state_dim(s)) * geom_factor;
  if (!(d_max > 0.0)) return kInf;
  return c.cfl_safety * h * h / (2.0 * d_max);
}

StepResult step_with_dt(const GeometryState& s, const FlowParams& p,
                        double dt, TimeScheme scheme) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidStateError("step_with_dt: dt must be positive and finite");
  }
  StepResult res;
  if (const auto* torus = std::get_if<ConformalTorusState>(&s)) {
    const ConformalStager st{*torus, p};
    res = advance(s, st, ConformalField{torus->u}, dt, scheme,
                  &repack_conformal);
  } else {
    const auto& w = std::get<WarpedProductState>(s);
    const WarpedStager st{w, p};
    res = advance(s, st, WarpedField{w.phi, w.psi}, dt, scheme,
                  &repack_warped);
  }
  if (res.status != StepStatus::kOk) return res;

  // Post-step admissibility: finiteness first (NaN must not masquerade as a
  // positivity violation), then the floor for the warped family.
  if (const auto* w = std::get_if<WarpedProductState>(&res.state)) {
    Eigen::Index i_phi = 0, i_psi = 0;
    const double min_phi = w->phi.minCoeff(&i_phi);
    const double min_psi = w->psi.minCoeff(&i_psi);
    if (min_phi < kPositivityFloor || min_psi < kPositivityFloor) {
      const bool phi_bad = min_phi <= min_psi;
      res.status = StepStatus::kDegenerate;
      res.detail =
          std::string(phi_bad ? "phi" : "psi") + " below positivity floor at index " +
          std::to_string(phi_bad ? i_phi : i_psi);
      res.state = s;
    }
  }
  return res;
}

StepResult step(const GeometryState& s, const FlowParams& p,
                const IntegratorConfig& c) {
  const double remaining = c.t_end - state_time(s);
  double dt = cfl_dt(s, p, c);
  if (!(dt < remaining)) dt = remaining;
  return step_with_dt(s, p, dt, c.scheme);
}

double pinching_offset(const CurvatureFields& initial_curv) {
  return 2.0 * initial_curv.R.abs().maxCoeff() + 1.0;
}

Snapshot make_snapshot(const GeometryState& s, double dt) {
  Snapshot snap;
  snap.t = state_time(s);
  snap.dt = dt;
  snap.state = s;
  snap.curv = curvature_of(s);
  snap.volume = total_volume(s);
  snap.int_R_dvol = integral_R_dvol(s);
  return snap;
}

FlowRecord make_record(const Snapshot& snap, double pinching_b) {
  FlowRecord rec;
  rec.t = snap.t;
  rec.dt = snap.dt;
  rec.r_min = snap.curv.R.minCoeff();
  rec.r_max = snap.curv.R.maxCoeff();
  rec.volume = snap.volume;
  if (snap.curv.dim >= 3) {
    rec.f_max =
        (snap.curv.ric0_norm2 / (snap.curv.R + pinching_b).square()).maxCoeff();
  }
  const double h = grid_spacing(snap.state);
  if (snap.t > 0.0) {
    rec.decay_k1 = snap.t * curvature_diff_sup(snap.curv, h, 1);
    rec.decay_k2 = std::pow(snap.t, 1.5) * curvature_diff_sup(snap.curv, h, 2);
  }
  return rec;
}

RunOutcome run(const GeometryState& initial, const FlowParams& p,
               const IntegratorConfig& c) {
  validate_params(p);
  validate_state(initial);
  validate_config(c);
  if (state_dim(initial) != p.dim) {
    throw InvalidStateError(
        "run: params.dim does not match the geometry state dimension");
  }

  RunOutcome out;
  GeometryState cur = initial;

  Snapshot snap0 = make_snapshot(cur, 0.0);
  const double b = pinching_offset(snap0.curv);
  out.records.push_back(make_record(snap0, b));
  if (c.keep_snapshots) out.snapshots.push_back(std::move(snap0));

  long steps = 0;
  long last_emit_step = 0;
  double last_step_dt = 0.0;
  RunStatus status = RunStatus::kReachedTEnd;

  const auto emit = [&](const GeometryState& g, double dt) {
    Snapshot snap = make_snapshot(g, dt);
    out.records.push_back(make_record(snap, b));
    if (c.keep_snapshots) out.snapshots.push_back(std::move(snap));
    last_emit_step = steps;
  };

  while (true) {
    const double t = state_time(cur);
    const double remaining = c.t_end - t;
    if (remaining <= 1e-14 * c.t_end) {
      status = RunStatus::kReachedTEnd;
      break;
    }
    if (steps >= c.max_steps) {
      status = RunStatus::kMaxSteps;
      break;
    }
    double dt = cfl_dt(cur, p, c);
    if (!(dt < remaining)) dt = remaining;

    const StepResult res = step_with_dt(cur, p, dt, c.scheme);
    if (res.status == StepStatus::kNonFinite) {
      status = RunStatus::kBlowupDetected;
      out.stop_detail = "non-finite state during step";
      break;  // cur stays at the last finite state
    }
    if (res.status == StepStatus::kDegenerate) {
      status = RunStatus::kDegenerateMetric;
      out.stop_detail = res.detail;
      break;
    }
    cur = res.state;
    ++steps;
    last_step_dt = dt;

    const Eigen::ArrayXXd R = light_scalar(cur);
    if (!R.isFinite().all()) {
      status = RunStatus::kBlowupDetected;
      out.stop_detail = "non-finite curvature";
      emit(cur, dt);
      break;
    }
    const double r_amp = R.abs().maxCoeff();
    if (r_amp > c.blowup_r_cap) {
      status = RunStatus::kBlowupDetected;
      out.stop_detail = "max|R| = " + std::to_string(r_amp) +
                        " exceeded blowup_r_cap";
      emit(cur, dt);
      break;
    }
    if (steps % c.record_every == 0) emit(cur, dt);
  }

  if (last_emit_step != steps) {
    // Final state not yet recorded (t_end / max_steps / pre-step failure).
    emit(cur, last_step_dt);
  }

  out.status = status;
  out.steps = steps;
  out.t_final = state_time(cur);
  out.final_state = std::move(cur);
  return out;
}

}  // namespace ryflow
