#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ryflow/symbol.hpp"

using namespace ryflow;

namespace {

FlowParams params(int dim, double alpha, double beta) {
  FlowParams p;
  p.dim = dim;
  p.alpha = alpha;
  p.beta = beta;
  p.allow_degenerate = true;
  return p;
}

Eigen::MatrixXd random_symmetric(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      h(i, j) = unit(rng);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

}  // namespace

TEST_CASE("symbol matrix: explicit 3x3 diagonal block") {
  // In the basis (h_11, h_22, h_33, h_12, h_13, h_23) with the direction
  // aligned to the first axis, the action on diagonal components is
  // alpha h_ii + beta (h_22 + h_33), and off-diagonal slots are pure alpha.
  const SymbolMatrix s = build_symbol_matrix(params(3, 1.0, 2.0));
  REQUIRE(s.m.rows() == 6);
  REQUIRE(s.m.cols() == 6);

  Eigen::MatrixXd expected_block(3, 3);
  expected_block << 1.0, 2.0, 2.0,
                    0.0, 3.0, 2.0,
                    0.0, 2.0, 3.0;
  CHECK((s.m.topLeftCorner(3, 3) - expected_block).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s.m.bottomRightCorner(3, 3) - Eigen::MatrixXd::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(s.m.topRightCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.m.bottomLeftCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("symbol spectrum: multiplicities match the closed form") {
  SUBCASE("n=4, alpha=1, beta=1") {
    const std::vector<double> spec =
        symbol_spectrum(build_symbol_matrix(params(4, 1.0, 1.0)));
    REQUIRE(spec.size() == 10);  // n(n+1)/2
    for (int i = 0; i < 9; ++i) CHECK(spec[i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spec[9] == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("n=5, alpha=0.7, beta=-0.1 puts the simple eigenvalue first") {
    const std::vector<double> spec =
        symbol_spectrum(build_symbol_matrix(params(5, 0.7, -0.1)));
    REQUIRE(spec.size() == 15);
    CHECK(spec[0] == doctest::Approx(0.3).epsilon(1e-12));
    for (std::size_t i = 1; i < spec.size(); ++i)
      CHECK(spec[i] == doctest::Approx(0.7).epsilon(1e-12));
  }
  SUBCASE("n=2, beta=0 gives the identity times alpha") {
    const SymbolMatrix s = build_symbol_matrix(params(2, 1.0, 0.0));
    REQUIRE(s.m.rows() == 3);
    CHECK((s.m - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("reduced characteristic polynomial at frozen points") {
  // det(V - lambda I) = (alpha - lambda)^{n-2} (alpha + (n-1) beta - lambda).
  CHECK(char_poly_V(params(4, 1.0, 0.5), 0.0) == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(char_poly_V(params(4, 1.0, 0.5), 1.0) == doctest::Approx(0.0));
  CHECK(char_poly_V(params(3, 2.0, 1.0), -1.0) ==
        doctest::Approx(3.0 * 5.0).epsilon(1e-13));
  CHECK(char_poly_V(params(5, 1.0, -0.2), 1.0) == doctest::Approx(0.0));
}

TEST_CASE("packed matrix action agrees with the direct component formula") {
  std::mt19937 rng(424242u);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    std::uniform_real_distribution<double> unit(-1.5, 1.5);
    const double alpha = unit(rng);
    const double beta = unit(rng);
    const FlowParams p = params(n, alpha, beta);
    const Eigen::MatrixXd h = random_symmetric(n, rng);

    const Eigen::MatrixXd direct = apply_symbol_direct(p, h);
    const SymbolMatrix s = build_symbol_matrix(p);
    const Eigen::MatrixXd via_matrix = unpack_sym(s.m * pack_sym(h), n);

    CAPTURE(n);
    CAPTURE(alpha);
    CAPTURE(beta);
    REQUIRE((direct - via_matrix).cwiseAbs().maxCoeff() <= 1e-13);
    // The result is again symmetric.
    REQUIRE((direct - direct.transpose()).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("ellipticity verdicts across the parameter plane") {
  SUBCASE("interior of the parabolic range") {
    const EllipticityVerdict v = is_strongly_elliptic(params(3, 1.0, 0.0));
    CHECK(v.verdict == Ellipticity::kElliptic);
    CHECK(v.min_eigenvalue == doctest::Approx(1.0));
  }
  SUBCASE("scalar coefficient dominating negatively") {
    const EllipticityVerdict v = is_strongly_elliptic(params(3, 1.0, -0.6));
    CHECK(v.verdict == Ellipticity::kNotElliptic);
    CHECK(v.min_eigenvalue == doctest::Approx(-0.2).epsilon(1e-13));
  }
  SUBCASE("exact boundary alpha + (n-1) beta = 0") {
    CHECK(is_strongly_elliptic(params(3, 2.0, -1.0)).verdict ==
          Ellipticity::kBoundary);
    CHECK(is_strongly_elliptic(params(3, 1.0, -0.5)).verdict ==
          Ellipticity::kBoundary);
  }
  SUBCASE("vanishing Ricci coefficient sits on the other boundary") {
    CHECK(is_strongly_elliptic(params(3, 0.0, 1.0)).verdict ==
          Ellipticity::kBoundary);
  }
  SUBCASE("negative alpha") {
    CHECK(is_strongly_elliptic(params(4, -1.0, 2.0)).verdict ==
          Ellipticity::kNotElliptic);
  }
}

TEST_CASE("spectrum detects a deliberately broken matrix") {
  // If the matrix is built for one parameter pair, its spectrum cannot match
  // the closed form of another pair; guards against silent basis mix-ups.
  const std::vector<double> spec =
      symbol_spectrum(build_symbol_matrix(params(4, 1.0, 0.5)));
  std::vector<double> wrong(spec.size(), 1.0);
  wrong.back() = 1.0 + 3.0 * 0.25;  // spectrum of beta = 0.25 instead
  std::sort(wrong.begin(), wrong.end());
  double max_diff = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    max_diff = std::max(max_diff, std::abs(spec[i] - wrong[i]));
  CHECK(max_diff > 0.5);
}
