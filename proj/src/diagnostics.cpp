#include "ryflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ryflow/fd.hpp"

namespace ryflow {

namespace {

// Derivative at t_eval of the quadratic through (t0,f0), (t1,f1), (t2,f2):
// exact for quadratics, second-order accurate on non-uniform spacing.
double deriv3(double t0, double f0, double t1, double f1, double t2, double f2,
              double t_eval) {
  return f0 * (2.0 * t_eval - t1 - t2) / ((t0 - t1) * (t0 - t2)) +
         f1 * (2.0 * t_eval - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
         f2 * (2.0 * t_eval - t0 - t1) / ((t2 - t0) * (t2 - t1));
}

Eigen::ArrayXXd deriv3_field(const Snapshot& a, const Snapshot& b,
                             const Snapshot& c, const Eigen::ArrayXXd& fa,
                             const Eigen::ArrayXXd& fb,
                             const Eigen::ArrayXXd& fc, double t_eval) {
  const double t0 = a.t, t1 = b.t, t2 = c.t;
  const double c0 = (2.0 * t_eval - t1 - t2) / ((t0 - t1) * (t0 - t2));
  const double c1 = (2.0 * t_eval - t0 - t2) / ((t1 - t0) * (t1 - t2));
  const double c2 = (2.0 * t_eval - t0 - t1) / ((t2 - t0) * (t2 - t1));
  return c0 * fa + c1 * fb + c2 * fc;
}

const Snapshot& nearest(const Snapshot& a, const Snapshot& b,
                        const Snapshot& c, double t_eval) {
  const double da = std::abs(a.t - t_eval);
  const double db = std::abs(b.t - t_eval);
  const double dc = std::abs(c.t - t_eval);
  if (da <= db && da <= dc) return a;
  if (db <= dc) return b;
  return c;
}

// Record one observed slack value; negative (or non-finite) slack fails the
// monitor.  Callers initialize worst_margin to +infinity and call finalize()
// once all points are in.
void track(MonitorReport& rep, double margin, double t) {
  if (!(margin >= 0.0)) rep.pass = false;
  if (margin < rep.worst_margin) {
    rep.worst_margin = margin;
    rep.worst_t = t;
  }
}

void begin_tracking(MonitorReport& rep) {
  rep.worst_margin = std::numeric_limits<double>::infinity();
}

void finalize(MonitorReport& rep) {
  if (std::isinf(rep.worst_margin) && rep.worst_margin > 0.0) {
    rep.worst_margin = 0.0;  // no data points
  }
}

// Pointwise max-direction |second difference| / h^2 of a grid function.
Eigen::ArrayXXd hess_proxy(const Eigen::ArrayXXd& f, double h) {
  const auto rows = f.rows();
  const auto cols = f.cols();
  Eigen::ArrayXXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index ip = (i + 1) % rows;
    const Eigen::Index im = (i + rows - 1) % rows;
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double dx = std::abs(f(ip, j) - 2.0 * f(i, j) + f(im, j));
      double d = dx;
      if (cols > 1) {
        const Eigen::Index jp = (j + 1) % cols;
        const Eigen::Index jm = (j + cols - 1) % cols;
        d = std::max(d, std::abs(f(i, jp) - 2.0 * f(i, j) + f(i, jm)));
      }
      out(i, j) = d / (h * h);
    }
  }
  return out;
}

}  // namespace

double monitor_tolerance(const RunOutcome& run, double h, double c_disc) {
  double dt_max = 0.0;
  for (const auto& r : run.records) dt_max = std::max(dt_max, r.dt);
  return c_disc * (h * h + dt_max);
}

MonitorReport scalar_min_monitor(const std::vector<FlowRecord>& records,
                                 double a, const FlowParams& p, double tol) {
  MonitorReport rep;
  rep.name = "scalar-min";
  begin_tracking(rep);
  const bool comparison_active = a > 0.0 && p.dim >= 3;
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    track(rep, r.r_min - (a - tol), r.t);
    if (std::isfinite(prev)) track(rep, r.r_min - prev + tol, r.t);
    prev = r.r_min;
    if (comparison_active) {
      const ComparisonValue cv = scalar_min_comparison(p, a, r.t);
      if (!cv.past_bound) track(rep, r.r_min - (cv.value - tol), r.t);
    }
  }
  finalize(rep);
  if (!rep.pass) rep.detail = "scalar-minimum bound violated";
  return rep;
}

MonitorReport volume_rate_monitor(const std::vector<Snapshot>& snaps,
                                  const FlowParams& p, double tol) {
  MonitorReport rep;
  rep.name = "volume-rate";
  begin_tracking(rep);
  if (snaps.size() < 3) {
    rep.applicable = false;
    rep.detail = "needs at least 3 snapshots";
    finalize(rep);
    return rep;
  }
  const double n = static_cast<double>(p.dim);
  for (std::size_t j = 1; j + 1 < snaps.size(); ++j) {
    const auto& sm = snaps[j - 1];
    const auto& s0 = snaps[j];
    const auto& sp = snaps[j + 1];
    const double dvdt =
        deriv3(sm.t, sm.volume, s0.t, s0.volume, sp.t, sp.volume, s0.t);
    const double resid =
        std::abs(dvdt + (p.alpha + 0.5 * n * p.beta) * s0.int_R_dvol);
    const double budget = tol * (1.0 + std::abs(s0.int_R_dvol));
    track(rep, budget - resid, s0.t);
  }
  finalize(rep);
  if (!rep.pass) rep.detail = "volume-rate identity violated";
  return rep;
}

MonitorReport torus_volume_conservation(const std::vector<Snapshot>& snaps) {
  MonitorReport rep;
  rep.name = "torus-volume-conservation";
  begin_tracking(rep);
  if (snaps.empty() ||
      !std::holds_alternative<ConformalTorusState>(snaps.front().state)) {
    rep.applicable = false;
    rep.detail = "2D torus runs only";
    finalize(rep);
    return rep;
  }
  const double v0 = snaps.front().volume;
  for (const auto& s : snaps) {
    const double drift = std::abs(s.volume - v0) / v0;
    track(rep, kTorusVolumeRelTol - drift, s.t);
  }
  finalize(rep);
  if (!rep.pass) rep.detail = "volume drifted beyond the roundoff budget";
  return rep;
}

double evolution_residual_R(const Snapshot& a, const Snapshot& b,
                            const Snapshot& c, const FlowParams& p,
                            double t_eval) {
  const Snapshot& e = nearest(a, b, c, t_eval);
  const double n = static_cast<double>(p.dim);
  const Eigen::ArrayXXd drdt =
      deriv3_field(a, b, c, a.curv.R, b.curv.R, c.curv.R, t_eval);
  const double principal = p.beta * (n - 1.0) + p.alpha;
  const Eigen::ArrayXXd ric_norm2 =
      e.curv.ric0_norm2 + e.curv.R.square() / n;
  const Eigen::ArrayXXd resid = drdt - principal * e.curv.lap_R -
                                2.0 * p.alpha * ric_norm2 -
                                p.beta * e.curv.R.square();
  return resid.abs().maxCoeff();
}

double evolution_residual_ric_warped(const Snapshot& a, const Snapshot& b,
                                     const Snapshot& c, const FlowParams& p,
                                     double t_eval) {
  const Snapshot& e = nearest(a, b, c, t_eval);
  const auto* ws = std::get_if<WarpedProductState>(&e.state);
  if (ws == nullptr) {
    throw InvalidStateError(
        "evolution_residual_ric_warped: warped snapshots required");
  }
  const double n = static_cast<double>(p.dim);
  const double h = ws->h;

  // Coordinate components Ric_ss = phi^2 lam_s and (per sphere direction)
  // psi^2 lam_sph, differenced in time at fixed grid index.
  const auto coord_s = [](const Snapshot& s) -> Eigen::ArrayXXd {
    const auto& w = std::get<WarpedProductState>(s.state);
    return w.phi.square() * s.curv.ric_s.col(0);
  };
  const auto coord_sph = [](const Snapshot& s) -> Eigen::ArrayXXd {
    const auto& w = std::get<WarpedProductState>(s.state);
    return w.psi.square() * s.curv.ric_sphere.col(0);
  };
  const Eigen::ArrayXd dAdt =
      deriv3_field(a, b, c, coord_s(a), coord_s(b), coord_s(c), t_eval);
  const Eigen::ArrayXd dBdt =
      deriv3_field(a, b, c, coord_sph(a), coord_sph(b), coord_sph(c), t_eval);

  const Eigen::ArrayXd phi = ws->phi;
  const Eigen::ArrayXd psi = ws->psi;
  const Eigen::ArrayXd lam_s = e.curv.ric_s.col(0);
  const Eigen::ArrayXd lam_sph = e.curv.ric_sphere.col(0);
  const Eigen::ArrayXd L = e.curv.sec_mixed.col(0);
  const Eigen::ArrayXd K = e.curv.sec_sphere.col(0);
  const Eigen::ArrayXd R = e.curv.R.col(0);
  const Eigen::ArrayXd lapR = e.curv.lap_R.col(0);

  const Eigen::ArrayXd dphi = fd::d1(phi, h);
  const Eigen::ArrayXd dpsi = fd::d1(psi, h);
  const Eigen::ArrayXd dR = fd::d1(R, h);
  const Eigen::ArrayXd ddR = fd::d2(R, h);

  // Arclength derivative operators: f'(r) = f'_s / phi,
  // f''(r) = (f''_s phi - f'_s phi'_s) / phi^3; radial log-slope of the
  // sphere radius w'(r)/w = psi'_s / (phi psi).
  const auto d_r = [&](const Eigen::ArrayXd& f) -> Eigen::ArrayXd {
    return fd::d1(f, h) / phi;
  };
  const auto dd_r = [&](const Eigen::ArrayXd& f) -> Eigen::ArrayXd {
    return (fd::d2(f, h) * phi - fd::d1(f, h) * dphi) / phi.pow(3);
  };
  const Eigen::ArrayXd slope = dpsi / (phi * psi);

  // Rough Laplacian of the diagonal 2-tensor with frame components
  // (lam_s, lam_sph): radial part plus the frame-rotation coupling terms.
  const Eigen::ArrayXd lap_ric_s =
      dd_r(lam_s) + (n - 1.0) * slope * d_r(lam_s) +
      2.0 * (n - 1.0) * slope.square() * (lam_sph - lam_s);
  const Eigen::ArrayXd lap_ric_sph =
      dd_r(lam_sph) + (n - 1.0) * slope * d_r(lam_sph) +
      2.0 * slope.square() * (lam_s - lam_sph);

  // Frame Hessian of R.
  const Eigen::ArrayXd hess_s = (ddR * phi - dR * dphi) / phi.pow(3);
  const Eigen::ArrayXd hess_sph = dpsi * dR / (phi.square() * psi);

  const Eigen::ArrayXd rhs_s =
      p.alpha * lap_ric_s + 2.0 * p.alpha * (n - 1.0) * L * lam_sph -
      2.0 * p.alpha * lam_s.square() +
      0.5 * p.beta * ((n - 2.0) * hess_s + lapR);
  const Eigen::ArrayXd rhs_sph =
      p.alpha * lap_ric_sph +
      2.0 * p.alpha * (L * lam_s + (n - 2.0) * K * lam_sph) -
      2.0 * p.alpha * lam_sph.square() +
      0.5 * p.beta * ((n - 2.0) * hess_sph + lapR);

  const double res_s = (dAdt / phi.square() - rhs_s).abs().maxCoeff();
  const double res_sph = (dBdt / psi.square() - rhs_sph).abs().maxCoeff();
  return std::max(res_s, res_sph);
}

void annotate_residuals(RunOutcome& run, const FlowParams& p) {
  const auto& snaps = run.snapshots;
  if (snaps.size() < 3 || snaps.size() != run.records.size()) return;
  const bool warped =
      std::holds_alternative<WarpedProductState>(snaps.front().state);
  const std::size_t m = snaps.size();
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t lo = j == 0 ? 0 : (j + 1 == m ? m - 3 : j - 1);
    const Snapshot& a = snaps[lo];
    const Snapshot& b = snaps[lo + 1];
    const Snapshot& c = snaps[lo + 2];
    const double t_eval = snaps[j].t;
    run.records[j].res_r_evol = evolution_residual_R(a, b, c, p, t_eval);
    if (warped) {
      run.records[j].res_ric_evol =
          evolution_residual_ric_warped(a, b, c, p, t_eval);
    }
  }
}

PinchingSeries pinching_monitor(const std::vector<Snapshot>& snaps,
                                const PinchingContext& ctx) {
  PinchingSeries out;
  out.report.name = "pinching";
  begin_tracking(out.report);
  if (snaps.empty() || snaps.front().curv.dim < 3) {
    out.report.applicable = false;
    out.report.detail = "requires dim >= 3";
    finalize(out.report);
    return out;
  }
  double running_bound = 0.0;
  for (const auto& s : snaps) {
    const Eigen::ArrayXXd shifted = s.curv.R + ctx.b;
    const double floor_margin =
        shifted.minCoeff() - (1.0 - kPinchingFloorTol);
    track(out.report, floor_margin, s.t);

    const double f_max = (s.curv.ric0_norm2 / shifted.square()).maxCoeff();
    const double h = grid_spacing(s.state);
    const Eigen::ArrayXXd grad_bound =
        (s.curv.weyl_norm2.sqrt() + s.curv.grad_R_norm2.sqrt() +
         hess_proxy(s.curv.R, h)) /
            shifted +
        shifted;
    running_bound = std::max(running_bound, grad_bound.maxCoeff());

    out.t.push_back(s.t);
    out.f_max.push_back(f_max);
    out.ratio.push_back(f_max / (1.0 + running_bound));
  }
  finalize(out.report);
  if (!out.report.pass) {
    out.report.detail = "normalization bound R + b >= 1 violated";
  }
  return out;
}

DecayReport derivative_decay_monitor(const std::vector<Snapshot>& snaps) {
  DecayReport out;
  out.report.name = "derivative-decay";
  for (const auto& s : snaps) {
    if (!(s.t > 0.0)) continue;
    const double h = grid_spacing(s.state);
    out.k1_max =
        std::max(out.k1_max, s.t * curvature_diff_sup(s.curv, h, 1));
    out.k2_max = std::max(out.k2_max, std::pow(s.t, 1.5) *
                                          curvature_diff_sup(s.curv, h, 2));
  }
  if (!std::isfinite(out.k1_max) || !std::isfinite(out.k2_max)) {
    out.report.pass = false;
    out.report.detail = "non-finite decay proxy";
  }
  return out;
}

double sup_ric_plus_hess_r(const Snapshot& snap) {
  const double n = static_cast<double>(snap.curv.dim);
  const double h = grid_spacing(snap.state);
  const Eigen::ArrayXXd ric_norm =
      (snap.curv.ric0_norm2 + snap.curv.R.square() / n).sqrt();
  return (ric_norm + hess_proxy(snap.curv.R, h)).maxCoeff();
}

}  // namespace ryflow
