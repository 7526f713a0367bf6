#include "ryflow/algebraic.hpp"

#include <cmath>
#include <string>

namespace ryflow {

namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace

AlgebraicCurvature space_form_curvature(int n, double sec) {
  AlgebraicCurvature out{Rank4(n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out.rm(i, j, k, l) =
              sec * (delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k));
  return out;
}

AlgebraicCurvature warped_frame_curvature(int n, double L, double K) {
  if (n < 3) {
    throw InvalidStateError("warped_frame_curvature: need n >= 3");
  }
  AlgebraicCurvature out{Rank4(n)};
  // Only components with {i,j} == {k,l} as unordered plane pairs are nonzero
  // for this diagonalizable curvature operator.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sec = (i == 0 || j == 0) ? L : K;
      out.rm(i, j, i, j) = sec;
      out.rm(i, j, j, i) = -sec;
    }
  }
  return out;
}

AlgebraicCurvature product_of_spheres_curvature(double sec1, double sec2) {
  AlgebraicCurvature out{Rank4(4)};
  const auto set_plane = [&out](int a, int b, double sec) {
    out.rm(a, b, a, b) = sec;
    out.rm(b, a, b, a) = sec;
    out.rm(a, b, b, a) = -sec;
    out.rm(b, a, a, b) = -sec;
  };
  set_plane(0, 1, sec1);
  set_plane(2, 3, sec2);
  return out;
}

Eigen::MatrixXd ricci_of(const AlgebraicCurvature& curv) {
  const int n = curv.rm.dim();
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += curv.rm(i, j, k, j);
      ric(i, k) = s;
    }
  return ric;
}

double scalar_of(const AlgebraicCurvature& curv) {
  return ricci_of(curv).trace();
}

double symmetry_violation(const AlgebraicCurvature& curv) {
  const int n = curv.rm.dim();
  const Rank4& r = curv.rm;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = r(i, j, k, l);
          worst = std::max(worst, std::abs(v + r(j, i, k, l)));
          worst = std::max(worst, std::abs(v + r(i, j, l, k)));
          worst = std::max(worst, std::abs(v - r(k, l, i, j)));
          worst = std::max(
              worst, std::abs(v + r(j, k, i, l) + r(k, i, j, l)));
        }
  return worst;
}

Rank4 hamilton_B(const AlgebraicCurvature& curv) {
  const double viol = symmetry_violation(curv);
  if (viol > kSymmetryTol) {
    throw InvalidStateError(
        "hamilton_B: input violates curvature symmetries by " +
        std::to_string(viol));
  }
  const int n = curv.rm.dim();
  Rank4 B(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              s += curv.rm(p, i, q, j) * curv.rm(p, k, q, l);
          B(i, j, k, l) = s;
        }
  return B;
}

double b_identity_residual(const Rank4& B) {
  const int n = B.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += B(i, j, k, j) - 2.0 * B(i, j, j, k);
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

Rank4 weyl_from_rm(const AlgebraicCurvature& curv, const Eigen::MatrixXd& ric,
                   double R) {
  const int n = curv.rm.dim();
  if (n < 3) {
    throw InvalidStateError("weyl_from_rm: need n >= 3");
  }
  const double nn = static_cast<double>(n);
  Rank4 W(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double schur =
              (ric(i, k) * delta(j, l) - ric(i, l) * delta(j, k) +
               ric(j, l) * delta(i, k) - ric(j, k) * delta(i, l)) /
              (nn - 2.0);
          const double scal =
              R * (delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k)) /
              ((nn - 1.0) * (nn - 2.0));
          W(i, j, k, l) = curv.rm(i, j, k, l) - schur + scal;
        }
  return W;
}

double frame_norm2(const Rank4& t) { return t.flat().squaredNorm(); }

double trace_norm(const Rank4& w) {
  const int n = w.dim();
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w(i, j, i, l);
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

double decomposition_residual(const AlgebraicCurvature& curv) {
  const int n = curv.rm.dim();
  const double nn = static_cast<double>(n);
  const Eigen::MatrixXd ric = ricci_of(curv);
  const double R = ric.trace();
  const Rank4 W = weyl_from_rm(curv, ric, R);
  const Eigen::MatrixXd ric0 =
      ric - (R / nn) * Eigen::MatrixXd::Identity(n, n);
  const double lhs = frame_norm2(curv.rm);
  const double rhs = frame_norm2(W) + 4.0 / (nn - 2.0) * ric0.squaredNorm() +
                     2.0 / (nn * (nn - 1.0)) * R * R;
  return std::abs(lhs - rhs);
}

}  // namespace ryflow
