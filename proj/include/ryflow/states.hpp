#pragma once

#include <Eigen/Dense>
#include <variant>

#include "ryflow/params.hpp"

namespace ryflow {

// Conformally flat metric g = e^{2u} * delta on the square torus
// [0, N*h)^2, sampled on an N-by-N periodic grid.  u(i, j) lives at
// x = (i*h, j*h).  N must be >= 8 and even; the factories below use the
// standard torus h = 2*pi/N, but any positive spacing is a valid grid
// (useful for reparametrization checks).
struct ConformalTorusState {
  Eigen::ArrayXXd u;
  double h = 0.0;
  double t = 0.0;
};

// Doubly warped metric g = phi(s)^2 ds^2 + psi(s)^2 g_{S^{d-1}} on
// S^1 x S^{d-1}, with s on the circle [0, N*h) sampled at N >= 8 even
// points (factories use h = 2*pi/N).  dim is the total dimension d (so the
// sphere factor is S^{d-1}); requires dim >= 3 and phi, psi uniformly
// positive.
struct WarpedProductState {
  Eigen::ArrayXd phi;
  Eigen::ArrayXd psi;
  int dim = 3;
  double h = 0.0;
  double t = 0.0;
};

using GeometryState = std::variant<ConformalTorusState, WarpedProductState>;

// Throw InvalidStateError if the state violates its documented invariants
// (grid size/parity, positivity above kPositivityFloor, finiteness,
// dimension bounds).
void validate_state(const ConformalTorusState& s);
void validate_state(const WarpedProductState& s);
void validate_state(const GeometryState& s);

// Flat torus: u identically zero on an n-by-n grid.
ConformalTorusState make_flat_torus(int n);

// u(x) = amplitude * cos(mode * x1), constant in x2.
ConformalTorusState make_cosine_torus(int n, double amplitude, int mode);

// Round product metric: phi = phi0, psi = r0 on an n-point circle,
// total dimension dim.
WarpedProductState make_product_state(int n, int dim, double r0, double phi0);

// psi(s) = r0 + amplitude * sin(mode * s), phi = phi0.  The caller is
// responsible for keeping psi positive; validate_state enforces it.
WarpedProductState make_cosine_warped(int n, int dim, double r0, double phi0,
                                      double amplitude, int mode);

double state_time(const GeometryState& s);
double grid_spacing(const GeometryState& s);
int state_dim(const GeometryState& s);

}  // namespace ryflow
