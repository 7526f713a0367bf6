#include <cmath>
#include <limits>

#include "doctest.h"
#include "ryflow/curvature.hpp"
#include "ryflow/states.hpp"

using namespace ryflow;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Largest |R_numeric - R_exact| for the conformal factor eps*cos(x1).
double torus_curvature_error(int n, double eps) {
  const ConformalTorusState s = make_cosine_torus(n, eps, 1);
  const Eigen::ArrayXXd r = scalar_curvature_conformal2d(s);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = i * s.h;
    const double exact = 2.0 * eps * std::cos(x) * std::exp(-2.0 * eps * std::cos(x));
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(r(i, j) - exact));
    }
  }
  return worst;
}

// Largest deviation of the discrete warped curvature from the analytic
// values for psi = r0 + a sin(s), phi = 1.
double warped_curvature_error(int grid_n, int dim, double r0, double a) {
  const WarpedProductState s = make_cosine_warped(grid_n, dim, r0, 1.0, a, 1);
  const WarpedFrameData d = warped_frame_data(s);
  double worst = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double x = i * s.h;
    const double psi = r0 + a * std::sin(x);
    const double dpsi = a * std::cos(x);
    const double ddpsi = -a * std::sin(x);
    const double L = -ddpsi / psi;
    const double K = (1.0 - dpsi * dpsi) / (psi * psi);
    const double R = 2.0 * (dim - 1) * L + (dim - 1) * (dim - 2) * K;
    worst = std::max(worst, std::abs(d.sec_mixed(i) - L));
    worst = std::max(worst, std::abs(d.sec_sphere(i) - K));
    worst = std::max(worst, std::abs(d.R(i) - R));
  }
  return worst;
}

}  // namespace

TEST_CASE("flat torus has identically zero curvature") {
  const ConformalTorusState s = make_flat_torus(16);
  const CurvatureFields c = curvature_conformal2d(s);
  CHECK(c.dim == 2);
  CHECK(c.R.cwiseAbs().maxCoeff() == 0.0);
  CHECK(c.lap_R.cwiseAbs().maxCoeff() == 0.0);
  CHECK(c.grad_R_norm2.cwiseAbs().maxCoeff() == 0.0);
  CHECK(c.rm_norm2.cwiseAbs().maxCoeff() == 0.0);
  CHECK(c.ric0_norm2.cwiseAbs().maxCoeff() == 0.0);
  CHECK(c.weyl_norm2.cwiseAbs().maxCoeff() == 0.0);
  CHECK(total_volume(s) == doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-14));
}

TEST_CASE("constant conformal factor is still flat, with scaled volume") {
  ConformalTorusState s = make_flat_torus(16);
  s.u.setConstant(0.2);
  const CurvatureFields c = curvature_conformal2d(s);
  CHECK(c.R.cwiseAbs().maxCoeff() == 0.0);
  CHECK(total_volume(s) ==
        doctest::Approx(std::exp(0.4) * kTwoPi * kTwoPi).epsilon(1e-13));
}

TEST_CASE("cosine conformal factor matches the analytic curvature") {
  // R = 2 eps cos(x1) exp(-2 eps cos x1), discretized to second order.
  const double e64 = torus_curvature_error(64, 0.1);
  CHECK(e64 <= 5e-4);
  SUBCASE("second-order convergence under grid refinement") {
    const double e32 = torus_curvature_error(32, 0.1);
    const double e128 = torus_curvature_error(128, 0.1);
    const double order1 = std::log2(e32 / e64);
    const double order2 = std::log2(e64 / e128);
    CHECK(order1 == doctest::Approx(2.0).epsilon(0.15));
    CHECK(order2 == doctest::Approx(2.0).epsilon(0.15));
  }
  SUBCASE("2D frame values follow the scalar") {
    const ConformalTorusState s = make_cosine_torus(32, 0.1, 1);
    const CurvatureFields c = curvature_conformal2d(s);
    CHECK((c.ric_s - 0.5 * c.R).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((c.rm_norm2 - c.R.square()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(c.ric0_norm2.cwiseAbs().maxCoeff() == 0.0);
    CHECK(c.weyl_norm2.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("uniform product metric: exact curvature values") {
  // phi = 1, psi = r0: L = 0, K = 1/r0^2, exact even on the discrete grid
  // because all finite differences of constants vanish.
  const int n = 4;
  const double r0 = 3.0;
  const WarpedProductState s = make_product_state(32, n, r0, 1.0);
  const CurvatureFields c = curvature_warped(s);
  CHECK(c.dim == 4);
  CHECK(c.sec_mixed.cwiseAbs().maxCoeff() <= 1e-16);
  CHECK((c.sec_sphere - 1.0 / (r0 * r0)).cwiseAbs().maxCoeff() <= 1e-16);
  CHECK(c.ric_s.cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((c.ric_sphere - 2.0 / (r0 * r0)).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((c.R - 6.0 / (r0 * r0)).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(c.lap_R.cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(c.grad_R_norm2.cwiseAbs().maxCoeff() <= 1e-20);
  // |Rm|^2 = 2(n-1)(n-2) K^2 with L = 0.
  CHECK((c.rm_norm2 - 12.0 / (r0 * r0 * r0 * r0)).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(c.weyl_norm2.cwiseAbs().maxCoeff() <= 1e-18);

  // V = area(S^{n-1}) r0^{n-1} * 2 pi phi0, with area(S^3) = 2 pi^2.
  const double pi = kTwoPi / 2.0;
  CHECK(total_volume(s) ==
        doctest::Approx(2.0 * pi * pi * 27.0 * kTwoPi).epsilon(1e-13));
}

TEST_CASE("unit sphere areas") {
  const double pi = kTwoPi / 2.0;
  CHECK(unit_sphere_area(1) == doctest::Approx(kTwoPi).epsilon(1e-15));
  CHECK(unit_sphere_area(2) == doctest::Approx(4.0 * pi).epsilon(1e-15));
  CHECK(unit_sphere_area(3) == doctest::Approx(2.0 * pi * pi).epsilon(1e-15));
}

TEST_CASE("sinusoidal warped profile: analytic curvature to second order") {
  const double e64 = warped_curvature_error(64, 3, 2.0, 0.5);
  CHECK(e64 <= 2e-3);
  const double e128 = warped_curvature_error(128, 3, 2.0, 0.5);
  const double e256 = warped_curvature_error(256, 3, 2.0, 0.5);
  CHECK(std::log2(e64 / e128) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(std::log2(e128 / e256) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("discrete warped curvature is invariant under reparametrization") {
  // The same geometry described with a doubled base factor on a half-length
  // parameter interval: phi=2, h'=h/2, identical psi samples.
  const int n = 64;
  WarpedProductState a = make_cosine_warped(n, 4, 2.0, 1.0, 0.3, 1);
  WarpedProductState b = a;
  b.phi.setConstant(2.0);
  b.h = a.h / 2.0;
  for (int i = 0; i < n; ++i) b.psi(i) = 2.0 + 0.3 * std::sin(i * b.h * 2.0);
  REQUIRE((a.psi - b.psi).cwiseAbs().maxCoeff() == 0.0);

  const CurvatureFields ca = curvature_warped(a);
  const CurvatureFields cb = curvature_warped(b);
  CHECK((ca.sec_mixed - cb.sec_mixed).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((ca.sec_sphere - cb.sec_sphere).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((ca.R - cb.R).cwiseAbs().maxCoeff() <= 1e-11);
  CHECK((ca.lap_R - cb.lap_R).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((ca.grad_R_norm2 - cb.grad_R_norm2).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(total_volume(a) == doctest::Approx(total_volume(b)).epsilon(1e-13));
}

TEST_CASE("dimension-3 warped states have numerically zero Weyl curvature") {
  const WarpedProductState s = make_cosine_warped(64, 3, 2.0, 1.0, 0.5, 2);
  const CurvatureFields c = curvature_warped(s);
  const double scale = 1.0 + c.rm_norm2.maxCoeff();
  CHECK(c.weyl_norm2.maxCoeff() <= 1e-24 * scale * scale);
}

TEST_CASE("higher-dimensional warped states are conformally flat too") {
  // A circle base with a round sphere fiber admits local conformal
  // flattening in every dimension; the Weyl field must vanish identically.
  for (const int dim : {4, 5, 6}) {
    const WarpedProductState s = make_cosine_warped(32, dim, 2.0, 1.0, 0.4, 1);
    const CurvatureFields c = curvature_warped(s);
    CAPTURE(dim);
    const double scale = 1.0 + c.rm_norm2.maxCoeff();
    REQUIRE(c.weyl_norm2.maxCoeff() <= 1e-22 * scale * scale);
  }
}

TEST_CASE("total scalar curvature integral vanishes on the torus") {
  CHECK(std::abs(integral_R_dvol(make_cosine_torus(32, 0.3, 1))) <= 1e-12);
  CHECK(std::abs(integral_R_dvol(make_cosine_torus(48, 0.25, 2))) <= 1e-12);
  CHECK(integral_R_dvol(make_flat_torus(16)) == 0.0);
}

TEST_CASE("degenerate warped data is reported with its location") {
  WarpedProductState s = make_product_state(16, 4, 1.0, 1.0);
  s.psi(5) = 1e-9;  // below the positivity floor
  try {
    curvature_warped(s);
    FAIL("expected a degenerate-metric error");
  } catch (const DegenerateMetricError& e) {
    CHECK(std::string(e.location()).find("psi") != std::string::npos);
    CHECK(std::string(e.location()).find("5") != std::string::npos);
    CHECK(e.value() == doctest::Approx(1e-9));
  }
}

TEST_CASE("non-finite conformal factor is rejected") {
  ConformalTorusState s = make_flat_torus(16);
  s.u(3, 3) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(curvature_conformal2d(s), InvalidStateError);
}

TEST_CASE("variant dispatch matches the concrete implementations") {
  const ConformalTorusState torus = make_cosine_torus(16, 0.2, 1);
  const CurvatureFields via_variant = curvature_of(GeometryState(torus));
  const CurvatureFields direct = curvature_conformal2d(torus);
  CHECK((via_variant.R - direct.R).cwiseAbs().maxCoeff() == 0.0);

  const WarpedProductState warped = make_product_state(16, 4, 2.0, 1.0);
  const CurvatureFields wv = curvature_of(GeometryState(warped));
  const CurvatureFields wd = curvature_warped(warped);
  CHECK((wv.R - wd.R).cwiseAbs().maxCoeff() == 0.0);
}
