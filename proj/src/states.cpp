#include "ryflow/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ryflow {

namespace {

void check_grid_n(int n, const char* who) {
  if (n < 8 || n % 2 != 0) {
    throw InvalidStateError(std::string(who) +
                            ": grid size must be even and >= 8, got " +
                            std::to_string(n));
  }
}

}  // namespace

void validate_state(const ConformalTorusState& s) {
  const auto n = s.u.rows();
  if (n != s.u.cols()) {
    throw InvalidStateError("ConformalTorusState: u must be square, got " +
                            std::to_string(n) + "x" +
                            std::to_string(s.u.cols()));
  }
  check_grid_n(static_cast<int>(n), "ConformalTorusState");
  if (!s.u.isFinite().all() || !std::isfinite(s.t)) {
    throw InvalidStateError("ConformalTorusState: non-finite entries");
  }
  if (!(s.h > 0.0) || !std::isfinite(s.h)) {
    throw InvalidStateError("ConformalTorusState: h must be positive");
  }
}

void validate_state(const WarpedProductState& s) {
  const auto n = s.phi.size();
  if (s.psi.size() != n) {
    throw InvalidStateError(
        "WarpedProductState: phi and psi must have equal length");
  }
  check_grid_n(static_cast<int>(n), "WarpedProductState");
  if (s.dim < 3) {
    throw InvalidStateError("WarpedProductState: dim must be >= 3, got " +
                            std::to_string(s.dim));
  }
  if (!s.phi.isFinite().all() || !s.psi.isFinite().all() ||
      !std::isfinite(s.t)) {
    throw InvalidStateError("WarpedProductState: non-finite entries");
  }
  if ((s.phi < kPositivityFloor).any() || (s.psi < kPositivityFloor).any()) {
    throw InvalidStateError(
        "WarpedProductState: phi and psi must stay above the positivity "
        "floor");
  }
  if (!(s.h > 0.0) || !std::isfinite(s.h)) {
    throw InvalidStateError("WarpedProductState: h must be positive");
  }
}

void validate_state(const GeometryState& s) {
  std::visit([](const auto& v) { validate_state(v); }, s);
}

ConformalTorusState make_flat_torus(int n) {
  check_grid_n(n, "make_flat_torus");
  ConformalTorusState s;
  s.u = Eigen::ArrayXXd::Zero(n, n);
  s.h = 2.0 * std::numbers::pi / static_cast<double>(n);
  s.t = 0.0;
  return s;
}

ConformalTorusState make_cosine_torus(int n, double amplitude, int mode) {
  ConformalTorusState s = make_flat_torus(n);
  for (int i = 0; i < n; ++i) {
    const double x1 = s.h * static_cast<double>(i);
    s.u.row(i).setConstant(amplitude * std::cos(mode * x1));
  }
  validate_state(s);
  return s;
}

WarpedProductState make_product_state(int n, int dim, double r0, double phi0) {
  check_grid_n(n, "make_product_state");
  WarpedProductState s;
  s.phi = Eigen::ArrayXd::Constant(n, phi0);
  s.psi = Eigen::ArrayXd::Constant(n, r0);
  s.dim = dim;
  s.h = 2.0 * std::numbers::pi / static_cast<double>(n);
  s.t = 0.0;
  validate_state(s);
  return s;
}

WarpedProductState make_cosine_warped(int n, int dim, double r0, double phi0,
                                      double amplitude, int mode) {
  WarpedProductState s = make_product_state(n, dim, r0, phi0);
  for (int i = 0; i < n; ++i) {
    const double x = s.h * static_cast<double>(i);
    s.psi(i) = r0 + amplitude * std::sin(mode * x);
  }
  validate_state(s);
  return s;
}

double state_time(const GeometryState& s) {
  return std::visit([](const auto& v) { return v.t; }, s);
}

double grid_spacing(const GeometryState& s) {
  return std::visit([](const auto& v) { return v.h; }, s);
}

int state_dim(const GeometryState& s) {
  if (const auto* w = std::get_if<WarpedProductState>(&s)) return w->dim;
  return 2;
}

}  // namespace ryflow
