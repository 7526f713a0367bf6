#pragma once

// Closed-form solutions and comparison bounds used as independent references
// for the numerical integrator.  Everything here is exact arithmetic on the
// flow coefficients; no grids are involved.

#include "ryflow/params.hpp"

namespace ryflow {

// --- Einstein metrics -------------------------------------------------------
//
// If g0 is Einstein with Ric = lambda * g0, the flow preserves the metric up
// to scale: g(t) = c(t) * g0 with c(t) = c0 - lambda * (2*alpha + n*beta) * t.

struct EinsteinScale {
  double c = 0.0;
  // True when the requested time lies at or past the extinction time, i.e.
  // c(t) <= 0.  The scale is still reported (it is the linear extension).
  bool past_extinction = false;
};

EinsteinScale einstein_scale(const FlowParams& p, double lambda, double c0,
                             double t);

// First zero of c(t); +infinity when c never vanishes in forward time.
double einstein_extinction_time(const FlowParams& p, double lambda, double c0);

// Scalar curvature R(t) = n * lambda / c(t) of the evolving Einstein metric.
double einstein_scalar(const FlowParams& p, double lambda, double c0,
                       double t);

// --- Round product metrics on S^1 x S^{n-1} ---------------------------------
//
// For g = phi^2 ds^2 + psi^2 g_{S^{n-1}} with constant phi, psi the flow
// reduces to an ODE system solved in closed form:
//   psi(t)^2 = r0^2 - (n-2) * (2*alpha + (n-1)*beta) * t
//   phi(t)^2 = phi0^2 * (psi(t)^2 / r0^2)^p,
//       p = beta*(n-1) / (2*alpha + (n-1)*beta),
// with the limit phi(t)^2 = phi0^2 * exp(-beta*(n-1)*(n-2)*t / r0^2) when
// 2*alpha + (n-1)*beta = 0.

struct ProductSolution {
  double phi = 0.0;
  double psi = 0.0;
  bool past_extinction = false;
};

ProductSolution product_metric_solution(const FlowParams& p, double r0,
                                        double phi0, double t);

// First time psi(t)^2 reaches zero; +infinity when the sphere factor never
// collapses in forward time.
double product_extinction_time(const FlowParams& p, double r0, double phi0);

// --- Scalar-curvature comparison --------------------------------------------
//
// If R(., 0) >= a then R_min(t) >= n(n-1)a / (n(n-1) - (n-2)*a*alpha*t), and
// for a > 0, n >= 3 the solution must become extinct no later than
// T = n(n-1) / ((n-2)*a*alpha).

// Latest possible extinction time implied by R(., 0) >= a > 0; +infinity when
// the bound is vacuous (a <= 0, n == 2, or alpha <= 0).
double blow_up_bound(const FlowParams& p, double a);

struct ComparisonValue {
  double value = 0.0;
  // True when t is at or past the comparison blow-up time, where the lower
  // bound ceases to mean anything.
  bool past_bound = false;
};

// The comparison lower bound for R_min at time t, given R(., 0) >= a.
ComparisonValue scalar_min_comparison(const FlowParams& p, double a, double t);

}  // namespace ryflow
