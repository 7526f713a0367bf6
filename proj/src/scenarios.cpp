#include "ryflow/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ryflow/curvature.hpp"
#include "ryflow/diagnostics.hpp"
#include "ryflow/flow.hpp"
#include "ryflow/oracles.hpp"
#include "ryflow/states.hpp"
#include "ryflow/symbol.hpp"

namespace ryflow {

namespace {

CheckResult bounded(const std::string& name, double value, double threshold,
                    std::string detail = "") {
  CheckResult c;
  c.name = name;
  c.value = value;
  c.threshold = threshold;
  c.pass = std::isfinite(value) && value <= threshold;
  c.detail = std::move(detail);
  return c;
}

CheckResult flag(const std::string& name, bool ok, std::string detail = "") {
  CheckResult c;
  c.name = name;
  c.pass = ok;
  c.value = ok ? 1.0 : 0.0;
  c.threshold = 1.0;
  c.detail = std::move(detail);
  return c;
}

ScenarioReport sphere_ode_scenario() {
  ScenarioReport rep;
  rep.scenario = "sphere-ode";

  // Unit round 3-sphere under the alpha=1, beta=0 flow: the conformal factor
  // c(t) = 1 - 4t vanishes at t = 1/4 and R(t) = 6/c(t).
  FlowParams ricci;
  ricci.alpha = 1.0;
  ricci.beta = 0.0;
  ricci.dim = 3;
  const double lambda = 2.0;  // unit S^3: Ric = 2 g

  const EinsteinScale at01 = einstein_scale(ricci, lambda, 1.0, 0.1);
  rep.checks.push_back(
      bounded("round-sphere scale at t=0.1", std::abs(at01.c - 0.6), 1e-15,
              "c(0.1) should equal 0.6"));
  rep.checks.push_back(bounded(
      "round-sphere extinction time",
      std::abs(einstein_extinction_time(ricci, lambda, 1.0) - 0.25), 1e-15,
      "c(t) = 1 - 4t vanishes at t = 0.25"));
  rep.checks.push_back(
      bounded("round-sphere scalar curvature at t=0.1",
              std::abs(einstein_scalar(ricci, lambda, 1.0, 0.1) - 10.0),
              1e-13, "R(0.1) = 6 / 0.6"));

  // Extinction never beats the positive-scalar-curvature bound.
  {
    std::mt19937 rng(20240811u);
    std::uniform_int_distribution<int> dim_pick(3, 6);
    std::uniform_real_distribution<double> unit(0.1, 3.0);
    double worst = -1e300;
    for (int i = 0; i < 200; ++i) {
      FlowParams p;
      p.dim = dim_pick(rng);
      p.alpha = unit(rng);
      p.beta = 0.0;
      const double lam = unit(rng);
      const double c0 = unit(rng);
      const double r0 = p.dim * lam / c0;
      const double t_ext = einstein_extinction_time(p, lam, c0);
      const double bound = blow_up_bound(p, r0);
      worst = std::max(worst, t_ext - bound);
    }
    rep.checks.push_back(bounded("extinction within scalar bound", worst,
                                 1e-12,
                                 "max over 200 random Einstein samples"));
  }

  // The exact sphere solution stays above the scalar-minimum comparison.
  {
    double worst = -1e300;
    const double a = 6.0;  // R at t = 0
    for (int k = 1; k <= 9; ++k) {
      const double t = 0.025 * k;  // up to 0.225 < 0.25
      const double r_exact = einstein_scalar(ricci, lambda, 1.0, t);
      const ComparisonValue cv = scalar_min_comparison(ricci, a, t);
      if (cv.past_bound) continue;
      worst = std::max(worst, cv.value - r_exact);
    }
    rep.checks.push_back(bounded("comparison below exact sphere curve", worst,
                                 1e-9, "phi(t) <= R(t) along the solution"));
  }

  // Product-metric closed form against the discrete right-hand side.
  {
    FlowParams p;
    p.alpha = 1.0;
    p.beta = 0.5;
    p.dim = 4;
    const double r0 = 2.0, phi0 = 1.5;
    double worst = 0.0;
    for (int k = 0; k <= 4; ++k) {
      const double t = 0.1 * k;
      const ProductSolution sol = product_metric_solution(p, r0, phi0, t);
      if (sol.past_extinction) continue;
      WarpedProductState s = make_product_state(16, p.dim, sol.psi, sol.phi);
      const WarpedRhs rhs = rhs_warped(s, p);
      const double A = 2.0 * p.alpha + (p.dim - 1) * p.beta;
      const double dpsi_exact = -(p.dim - 2) * A / (2.0 * sol.psi);
      const double e = 0.5 * p.beta * (p.dim - 1) / A;
      const double dphi_exact =
          -e * (p.dim - 2) * A * sol.phi / (sol.psi * sol.psi);
      for (int i = 0; i < 16; ++i) {
        worst = std::max(worst, std::abs(rhs.dpsi(i) - dpsi_exact));
        worst = std::max(worst, std::abs(rhs.dphi(i) - dphi_exact));
      }
    }
    rep.checks.push_back(
        bounded("product solution solves the flow", worst, 1e-12,
                "d(phi,psi)/dt of the closed form matches the RHS"));
  }

  // Frozen value for the fiber/base coupling exponent.
  {
    FlowParams p;
    p.alpha = 1.0;
    p.beta = 1.0;
    p.dim = 3;
    const ProductSolution sol = product_metric_solution(p, 2.0, 1.0, 0.25);
    // A = 4, psi^2 = 4 - 1 = 3, phi = (3/4)^{1/4}.
    const double phi_expect = std::pow(0.75, 0.25);
    rep.checks.push_back(bounded("product base factor frozen value",
                                 std::abs(sol.phi - phi_expect), 1e-15,
                                 "phi(0.25) = (3/4)^(1/4) for n=3, r0=2"));
  }

  return rep;
}

ScenarioReport torus_gaussbonnet_scenario() {
  ScenarioReport rep;
  rep.scenario = "torus-gaussbonnet";

  FlowParams p;
  p.alpha = 1.0;
  p.beta = 0.5;
  p.dim = 2;
  IntegratorConfig cfg;
  cfg.t_end = 0.05;
  cfg.record_every = 5;

  const RunOutcome run = ryflow::run(make_cosine_torus(32, 0.25, 1), p, cfg);
  rep.checks.push_back(flag("run reached t_end",
                            run.status == RunStatus::kReachedTEnd,
                            to_string(run.status)));

  double vol0 = run.snapshots.empty() ? 0.0 : run.snapshots.front().volume;
  double drift = 0.0;
  double int_r = 0.0;
  for (const auto& s : run.snapshots) {
    drift = std::max(drift, std::abs(s.volume - vol0) / std::abs(vol0));
    int_r = std::max(int_r, std::abs(s.int_R_dvol));
  }
  rep.checks.push_back(bounded("total volume conserved", drift, 1e-12,
                               "relative drift across snapshots"));
  rep.checks.push_back(
      bounded("curvature integral vanishes", int_r, 1e-10,
              "discrete total scalar curvature on the torus"));

  const double tol = monitor_tolerance(run, grid_spacing(run.final_state),
                                       25.0);
  const MonitorReport sm =
      scalar_min_monitor(run.records, run.records.front().r_min, p, tol);
  rep.checks.push_back(
      flag("scalar minimum monitor", sm.applicable && sm.pass, sm.detail));
  return rep;
}

ScenarioReport symbol_sweep_scenario() {
  ScenarioReport rep;
  rep.scenario = "symbol-sweep";

  std::mt19937 rng(987654321u);
  std::uniform_int_distribution<int> dim_pick(2, 8);
  std::uniform_real_distribution<double> alpha_pick(0.1, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double worst_spec = 0.0;
  double worst_det = 0.0;
  bool all_elliptic = true;
  for (int i = 0; i < 200; ++i) {
    const int n = dim_pick(rng);
    const double alpha = alpha_pick(rng);
    FlowParams p;
    p.alpha = alpha;
    p.beta = 0.0;
    p.dim = n;
    const double floor = regime_beta_floor(p);
    // beta strictly inside the parabolic range, up to 2*alpha.
    const double beta = floor * 0.95 + unit(rng) * (2.0 * alpha - floor * 0.95);
    p.beta = beta;

    const std::vector<double> spec = symbol_spectrum(build_symbol_matrix(p));
    std::vector<double> expect(spec.size(), alpha);
    expect.back() = alpha + (n - 1) * beta;
    std::sort(expect.begin(), expect.end());
    const double scale = std::abs(alpha) + n * std::abs(beta);
    for (std::size_t k = 0; k < spec.size(); ++k) {
      worst_spec = std::max(worst_spec,
                            std::abs(spec[k] - expect[k]) / scale);
    }

    for (int k = 0; k < 3; ++k) {
      const double lam = (2.0 * unit(rng) - 1.0) * 10.0 * scale;
      const double det = char_poly_V(p, lam);
      const double expect_det = std::pow(alpha - lam, n - 2) *
                                (alpha + (n - 1) * beta - lam);
      const double denom = 1.0 + std::abs(expect_det);
      worst_det = std::max(worst_det, std::abs(det - expect_det) / denom);
    }

    if (is_strongly_elliptic(p).verdict != Ellipticity::kElliptic) {
      all_elliptic = false;
    }
  }
  rep.checks.push_back(bounded("symbol spectrum matches closed form",
                               worst_spec, 1e-10,
                               "200 random parabolic samples, n in 2..8"));
  rep.checks.push_back(bounded("reduced determinant identity", worst_det,
                               1e-9, "600 random spectral parameters"));
  rep.checks.push_back(flag("ellipticity verdicts", all_elliptic,
                            "every parabolic sample is strongly elliptic"));
  return rep;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "sphere-ode", "torus-gaussbonnet", "symbol-sweep"};
  return names;
}

ScenarioReport run_scenario(const std::string& name) {
  if (name == "sphere-ode") return sphere_ode_scenario();
  if (name == "torus-gaussbonnet") return torus_gaussbonnet_scenario();
  if (name == "symbol-sweep") return symbol_sweep_scenario();
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

}  // namespace ryflow
