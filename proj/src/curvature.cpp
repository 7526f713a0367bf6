#include "ryflow/curvature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ryflow/algebraic.hpp"
#include "ryflow/fd.hpp"

namespace ryflow {

namespace {

void check_positivity(const WarpedProductState& s) {
  Eigen::Index i_phi = 0, i_psi = 0;
  const double min_phi = s.phi.minCoeff(&i_phi);
  const double min_psi = s.psi.minCoeff(&i_psi);
  if (!(min_phi >= kPositivityFloor)) {
    throw DegenerateMetricError(
        "warped metric degenerate: phi below positivity floor",
        "phi index " + std::to_string(i_phi), min_phi);
  }
  if (!(min_psi >= kPositivityFloor)) {
    throw DegenerateMetricError(
        "warped metric degenerate: psi below positivity floor (neckpinch)",
        "psi index " + std::to_string(i_psi), min_psi);
  }
}

}  // namespace

Eigen::ArrayXXd scalar_curvature_conformal2d(const ConformalTorusState& s) {
  return -2.0 * (-2.0 * s.u).exp() * fd::laplacian_flat(s.u, s.h);
}

CurvatureFields curvature_conformal2d(const ConformalTorusState& s) {
  if (!s.u.isFinite().all()) {
    throw InvalidStateError("curvature_conformal2d: non-finite u");
  }
  const auto n = s.u.rows();
  CurvatureFields out;
  out.dim = 2;
  const Eigen::ArrayXXd inv_conf = (-2.0 * s.u).exp();  // e^{-2u}
  out.R = -2.0 * inv_conf * fd::laplacian_flat(s.u, s.h);
  out.ric_s = 0.5 * out.R;
  out.rm_norm2 = out.R.square();
  out.ric0_norm2 = Eigen::ArrayXXd::Zero(n, n);
  out.weyl_norm2 = Eigen::ArrayXXd::Zero(n, n);
  // On g = e^{2u} delta the Laplace-Beltrami operator of a function is
  // e^{-2u} Lap_flat, and |grad f|_g^2 = e^{-2u} |grad_flat f|^2.
  out.lap_R = inv_conf * fd::laplacian_flat(out.R, s.h);
  Eigen::ArrayXXd rx, ry;
  fd::gradient_flat(out.R, s.h, rx, ry);
  out.grad_R_norm2 = inv_conf * (rx.square() + ry.square());
  return out;
}

WarpedFrameData warped_frame_data(const WarpedProductState& s) {
  check_positivity(s);
  const double n = static_cast<double>(s.dim);
  WarpedFrameData out;
  const Eigen::ArrayXd dpsi = fd::d1(s.psi, s.h);
  const Eigen::ArrayXd ddpsi = fd::d2(s.psi, s.h);
  const Eigen::ArrayXd dphi = fd::d1(s.phi, s.h);
  // Sectional curvatures of the two plane families, all derivatives in s:
  //   L = -(psi'' phi - psi' phi') / (phi^3 psi)
  //   K = (1 - (psi'/phi)^2) / psi^2
  out.sec_mixed =
      -(ddpsi * s.phi - dpsi * dphi) / (s.phi.pow(3) * s.psi);
  out.sec_sphere =
      (1.0 - (dpsi / s.phi).square()) / s.psi.square();
  out.ric_s = (n - 1.0) * out.sec_mixed;
  out.ric_sphere = out.sec_mixed + (n - 2.0) * out.sec_sphere;
  out.R = 2.0 * (n - 1.0) * out.sec_mixed +
          (n - 1.0) * (n - 2.0) * out.sec_sphere;
  return out;
}

CurvatureFields curvature_warped(const WarpedProductState& s) {
  const WarpedFrameData core = warped_frame_data(s);
  const auto N = s.phi.size();
  const int n = s.dim;
  const double nn = static_cast<double>(n);

  CurvatureFields out;
  out.dim = n;
  out.R = core.R;
  out.ric_s = core.ric_s;
  out.ric_sphere = core.ric_sphere;
  out.sec_mixed = core.sec_mixed;
  out.sec_sphere = core.sec_sphere;

  out.rm_norm2 = 4.0 * (nn - 1.0) * core.sec_mixed.square() +
                 2.0 * (nn - 1.0) * (nn - 2.0) * core.sec_sphere.square();

  // |Ric0|^2 from the frame eigenvalues (lam_s once, lam_sphere n-1 times),
  // written as a sum of squared deviations so it can never go negative.
  const Eigen::ArrayXd mean_ric = core.R / nn;
  out.ric0_norm2 = (core.ric_s - mean_ric).square() +
                   (nn - 1.0) * (core.ric_sphere - mean_ric).square();

  // Weyl norm: assemble the full frame curvature tensor per point, subtract
  // the Ricci and scalar parts, and take the squared frame norm.
  out.weyl_norm2.resize(N, 1);
  for (Eigen::Index i = 0; i < N; ++i) {
    const AlgebraicCurvature curv =
        warped_frame_curvature(n, core.sec_mixed(i), core.sec_sphere(i));
    const Eigen::MatrixXd ric = ricci_of(curv);
    const Rank4 W = weyl_from_rm(curv, ric, ric.trace());
    out.weyl_norm2(i, 0) = frame_norm2(W);
  }

  // Laplace-Beltrami of R in conservative form:
  //   Lap R = (1 / (phi psi^{n-1})) d/ds ( (psi^{n-1} / phi) dR/ds ),
  // discretized with midpoint fluxes (second order, and summation by parts
  // makes the integral of Lap R against dVol vanish identically).
  const Eigen::ArrayXd weight = s.psi.pow(n - 1) / s.phi;
  out.lap_R.resize(N, 1);
  for (Eigen::Index i = 0; i < N; ++i) {
    const Eigen::Index ip = (i + 1) % N;
    const Eigen::Index im = (i + N - 1) % N;
    const double w_plus = 0.5 * (weight(i) + weight(ip));
    const double w_minus = 0.5 * (weight(im) + weight(i));
    const double flux =
        (w_plus * (core.R(ip) - core.R(i)) - w_minus * (core.R(i) - core.R(im))) /
        (s.h * s.h);
    out.lap_R(i, 0) = flux / (s.phi(i) * std::pow(s.psi(i), n - 1));
  }

  const Eigen::ArrayXd dR = fd::d1(core.R, s.h);
  out.grad_R_norm2 = (dR / s.phi).square();
  return out;
}

CurvatureFields curvature_of(const GeometryState& s) {
  if (const auto* torus = std::get_if<ConformalTorusState>(&s)) {
    return curvature_conformal2d(*torus);
  }
  return curvature_warped(std::get<WarpedProductState>(s));
}

double unit_sphere_area(int d) {
  const double half = 0.5 * static_cast<double>(d + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double total_volume(const GeometryState& s) {
  if (const auto* torus = std::get_if<ConformalTorusState>(&s)) {
    return ((2.0 * torus->u).exp()).sum() * torus->h * torus->h;
  }
  const auto& w = std::get<WarpedProductState>(s);
  const double sphere = unit_sphere_area(w.dim - 1);
  return sphere * w.h * (w.phi * w.psi.pow(w.dim - 1)).sum();
}

namespace {

double diff_sup_column(const Eigen::ArrayXXd& c, double h, int order) {
  const auto n = c.rows();
  double sup = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index ip = (i + 1) % n;
    const Eigen::Index im = (i + n - 1) % n;
    const double d = order == 1
                         ? (c(ip, 0) - c(im, 0)) / (2.0 * h)
                         : (c(ip, 0) - 2.0 * c(i, 0) + c(im, 0)) / (h * h);
    sup = std::max(sup, std::abs(d));
  }
  return sup;
}

double diff_sup_grid(const Eigen::ArrayXXd& c, double h, int order) {
  const auto n = c.rows();
  double sup = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index ip = (i + 1) % n;
    const Eigen::Index im = (i + n - 1) % n;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index jp = (j + 1) % n;
      const Eigen::Index jm = (j + n - 1) % n;
      double dx, dy;
      if (order == 1) {
        dx = (c(ip, j) - c(im, j)) / (2.0 * h);
        dy = (c(i, jp) - c(i, jm)) / (2.0 * h);
      } else {
        dx = (c(ip, j) - 2.0 * c(i, j) + c(im, j)) / (h * h);
        dy = (c(i, jp) - 2.0 * c(i, j) + c(i, jm)) / (h * h);
      }
      sup = std::max(sup, std::max(std::abs(dx), std::abs(dy)));
    }
  }
  return sup;
}

}  // namespace

double curvature_diff_sup(const CurvatureFields& c, double h, int order) {
  if (order != 1 && order != 2) {
    throw InvalidStateError("curvature_diff_sup: order must be 1 or 2");
  }
  if (c.dim == 2) {
    // Single sectional curvature: the Gauss curvature R/2.
    return diff_sup_grid(0.5 * c.R, h, order);
  }
  return std::max(diff_sup_column(c.sec_mixed, h, order),
                  diff_sup_column(c.sec_sphere, h, order));
}

double integral_R_dvol(const GeometryState& s) {
  if (const auto* torus = std::get_if<ConformalTorusState>(&s)) {
    // R dVol = -2 Lap_flat u h^2: the conformal factors cancel exactly.
    return -2.0 * fd::laplacian_flat(torus->u, torus->h).sum() * torus->h *
           torus->h;
  }
  const auto& w = std::get<WarpedProductState>(s);
  const WarpedFrameData core = warped_frame_data(w);
  const double sphere = unit_sphere_area(w.dim - 1);
  return sphere * w.h * (core.R * w.phi * w.psi.pow(w.dim - 1)).sum();
}

}  // namespace ryflow
