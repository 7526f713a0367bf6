#include "ryflow/oracles.hpp"

#include <cmath>
#include <limits>

namespace ryflow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

EinsteinScale einstein_scale(const FlowParams& p, double lambda, double c0,
                             double t) {
  const double n = static_cast<double>(p.dim);
  EinsteinScale out;
  out.c = c0 - lambda * (2.0 * p.alpha + n * p.beta) * t;
  out.past_extinction = !(out.c > 0.0);
  return out;
}

double einstein_extinction_time(const FlowParams& p, double lambda,
                                double c0) {
  const double n = static_cast<double>(p.dim);
  const double rate = lambda * (2.0 * p.alpha + n * p.beta);
  if (rate <= 0.0) return kInf;
  return c0 / rate;
}

double einstein_scalar(const FlowParams& p, double lambda, double c0,
                       double t) {
  const double n = static_cast<double>(p.dim);
  return n * lambda / einstein_scale(p, lambda, c0, t).c;
}

ProductSolution product_metric_solution(const FlowParams& p, double r0,
                                        double phi0, double t) {
  const double n = static_cast<double>(p.dim);
  const double A = 2.0 * p.alpha + (n - 1.0) * p.beta;
  const double psi2 = r0 * r0 - (n - 2.0) * A * t;
  ProductSolution out;
  out.past_extinction = !(psi2 > 0.0);
  out.psi = psi2 > 0.0 ? std::sqrt(psi2) : 0.0;
  if (A != 0.0) {
    const double ratio = psi2 > 0.0 ? psi2 / (r0 * r0) : 0.0;
    const double expo = p.beta * (n - 1.0) / A;
    out.phi = phi0 * std::pow(ratio, 0.5 * expo);
  } else {
    // Degenerate direction: psi is constant and phi decays (or grows)
    // exponentially at rate set by the sphere curvature.
    out.phi = phi0 * std::exp(-0.5 * p.beta * (n - 1.0) * (n - 2.0) * t /
                              (r0 * r0));
  }
  return out;
}

double product_extinction_time(const FlowParams& p, double r0,
                               double phi0) {
  (void)phi0;
  const double n = static_cast<double>(p.dim);
  const double rate = (n - 2.0) * (2.0 * p.alpha + (n - 1.0) * p.beta);
  if (rate <= 0.0) return kInf;
  return r0 * r0 / rate;
}

double blow_up_bound(const FlowParams& p, double a) {
  const double n = static_cast<double>(p.dim);
  if (!(a > 0.0) || p.dim < 3 || !(p.alpha > 0.0)) return kInf;
  return n * (n - 1.0) / ((n - 2.0) * a * p.alpha);
}

ComparisonValue scalar_min_comparison(const FlowParams& p, double a,
                                      double t) {
  const double n = static_cast<double>(p.dim);
  ComparisonValue out;
  const double denom = n * (n - 1.0) - (n - 2.0) * a * p.alpha * t;
  out.past_bound = !(denom > 0.0);
  out.value = out.past_bound ? kInf : n * (n - 1.0) * a / denom;
  return out;
}

}  // namespace ryflow
