#pragma once

// Discrete curvature of the two supported metric families, plus volume
// integrals.  All derivatives are second-order periodic central differences.

#include <Eigen/Dense>

#include "ryflow/states.hpp"

namespace ryflow {

// Full pointwise curvature stack.  For the conformal torus all arrays are
// N-by-N; for the warped family they are N-by-1 columns.  Fields that do not
// exist for a family (ric_sphere, sec_* in 2D) are left empty.
struct CurvatureFields {
  int dim = 0;
  Eigen::ArrayXXd R;            // scalar curvature
  Eigen::ArrayXXd ric_s;        // frame Ricci eigenvalue (2D: R/2; warped: base direction)
  Eigen::ArrayXXd ric_sphere;   // warped only: spherical frame Ricci eigenvalue
  Eigen::ArrayXXd sec_mixed;    // warped only: sectional curvature of mixed planes
  Eigen::ArrayXXd sec_sphere;   // warped only: sectional curvature of sphere planes
  Eigen::ArrayXXd rm_norm2;     // |Rm|^2 (orthonormal-frame squared sum)
  Eigen::ArrayXXd ric0_norm2;   // |Ric - (R/n) g|^2
  Eigen::ArrayXXd weyl_norm2;   // |W|^2
  Eigen::ArrayXXd lap_R;        // Laplace-Beltrami of R
  Eigen::ArrayXXd grad_R_norm2; // |grad R|^2 in the evolving metric
};

// Lightweight warped-product curvature core: exactly the fields the flow
// right-hand side needs, skipping the Weyl/Laplacian assembly.
struct WarpedFrameData {
  Eigen::ArrayXd sec_mixed;   // L: planes containing the base direction
  Eigen::ArrayXd sec_sphere;  // K: purely spherical planes
  Eigen::ArrayXd ric_s;       // (n-1) L
  Eigen::ArrayXd ric_sphere;  // L + (n-2) K
  Eigen::ArrayXd R;           // 2(n-1)L + (n-1)(n-2)K
};

// Scalar curvature of the conformal torus: R = -2 e^{-2u} Lap_flat u.
Eigen::ArrayXXd scalar_curvature_conformal2d(const ConformalTorusState& s);

// Throws InvalidStateError on non-finite input.
CurvatureFields curvature_conformal2d(const ConformalTorusState& s);

// Throws DegenerateMetricError (with the offending grid location) when phi
// or psi sits below the positivity floor.
WarpedFrameData warped_frame_data(const WarpedProductState& s);
CurvatureFields curvature_warped(const WarpedProductState& s);

CurvatureFields curvature_of(const GeometryState& s);

// Surface area of the round unit sphere S^d (intrinsic dimension d).
double unit_sphere_area(int d);

// Total Riemannian volume of the discrete state (cell sum).
double total_volume(const GeometryState& s);

// Integral of the scalar curvature against the volume element.  On the
// discrete torus this vanishes identically (summation by parts), mirroring
// Gauss-Bonnet with Euler characteristic zero.
double integral_R_dvol(const GeometryState& s);

// Sup over grid points, grid directions, and frame sectional-curvature
// components (R/2 in 2D; the mixed and spherical sectionals for warped) of
// the plain k-th central difference magnitude divided by h^k, for k in
// {1, 2}.  This is the derivative-magnitude proxy used by the decay
// diagnostics; it is a grid measurement, not a covariant norm.
double curvature_diff_sup(const CurvatureFields& c, double h, int order);

}  // namespace ryflow
