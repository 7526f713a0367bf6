#pragma once

// Pointwise tensor algebra on curvature operators expressed in an
// orthonormal frame: Hamilton's quadratic B tensor, the Weyl part of the
// curvature, and the orthogonal decomposition norms.  All tensors are stored
// as dense rank-4 arrays over a frame of dimension n (n <= 8 in practice, so
// n^4 doubles is tiny).

#include <Eigen/Dense>

#include "ryflow/params.hpp"

namespace ryflow {

// Inputs to hamilton_B whose curvature symmetries are violated by more than
// this are rejected.
inline constexpr double kSymmetryTol = 1e-8;

// Dense rank-4 tensor with all indices of range n.
class Rank4 {
 public:
  Rank4() = default;
  explicit Rank4(int n) : n_(n), v_(Eigen::VectorXd::Zero(n * n * n * n)) {}

  int dim() const { return n_; }

  double& operator()(int i, int j, int k, int l) {
    return v_(((i * n_ + j) * n_ + k) * n_ + l);
  }
  double operator()(int i, int j, int k, int l) const {
    return v_(((i * n_ + j) * n_ + k) * n_ + l);
  }

  const Eigen::VectorXd& flat() const { return v_; }

 private:
  int n_ = 0;
  Eigen::VectorXd v_;
};

// Curvature operator R_{ijkl} in an orthonormal frame, sign convention
// R_{ijij} = sectional curvature of the (e_i, e_j) plane.
struct AlgebraicCurvature {
  Rank4 rm;
};

// Space form of constant sectional curvature `sec`:
// R_{ijkl} = sec * (delta_ik delta_jl - delta_il delta_jk).
AlgebraicCurvature space_form_curvature(int n, double sec);

// Frame curvature of a doubly warped metric: planes containing the base
// direction e_1 have sectional curvature L, purely spherical planes have K.
AlgebraicCurvature warped_frame_curvature(int n, double L, double K);

// Product of two surfaces of constant curvature sec1 (plane e_1, e_2) and
// sec2 (plane e_3, e_4); mixed planes are flat.  Always dimension 4.
AlgebraicCurvature product_of_spheres_curvature(double sec1, double sec2);

// Ric_{ik} = sum_j R_{ijkj}.
Eigen::MatrixXd ricci_of(const AlgebraicCurvature& curv);

// R = tr Ric.
double scalar_of(const AlgebraicCurvature& curv);

// Max violation of the pair symmetries, antisymmetries and the first Bianchi
// identity over all index tuples.
double symmetry_violation(const AlgebraicCurvature& curv);

// B_{ijkl} = sum_{p,q} R_{piqj} R_{pkql}.  Throws InvalidStateError when
// symmetry_violation(curv) > kSymmetryTol.
Rank4 hamilton_B(const AlgebraicCurvature& curv);

// max_{i,k} | sum_j (B_{ijkj} - 2 B_{ijjk}) |  -- identically zero for any
// algebraic curvature tensor.
double b_identity_residual(const Rank4& B);

// Weyl part of curv given its Ricci tensor and scalar curvature (standard
// Kulkarni-Nomizu subtraction).  Requires n >= 3.
Rank4 weyl_from_rm(const AlgebraicCurvature& curv, const Eigen::MatrixXd& ric,
                   double R);

// Sum of squares of all components of a rank-4 tensor.
double frame_norm2(const Rank4& t);

// max_{j,l} | sum_i W_{ijil} |  -- the total trace of the Weyl part, which
// must vanish.
double trace_norm(const Rank4& w);

// | |Rm|^2 - ( |W|^2 + 4/(n-2) |Ric0|^2 + 2/(n(n-1)) R^2 ) | for the given
// curvature -- the orthogonal decomposition identity.
double decomposition_residual(const AlgebraicCurvature& curv);

}  // namespace ryflow
