#pragma once

// Periodic central finite-difference helpers shared by the curvature and
// diagnostics code.  All stencils are second-order on uniform grids.

#include <Eigen/Dense>

namespace ryflow::fd {

// f((i+1) mod n) - f((i-1) mod n), divided by 2h.
inline Eigen::ArrayXd d1(const Eigen::ArrayXd& f, double h) {
  const auto n = f.size();
  Eigen::ArrayXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index ip = (i + 1) % n;
    const Eigen::Index im = (i + n - 1) % n;
    out(i) = (f(ip) - f(im)) / (2.0 * h);
  }
  return out;
}

// Standard 3-point second derivative with periodic wraparound.
inline Eigen::ArrayXd d2(const Eigen::ArrayXd& f, double h) {
  const auto n = f.size();
  Eigen::ArrayXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index ip = (i + 1) % n;
    const Eigen::Index im = (i + n - 1) % n;
    out(i) = (f(ip) - 2.0 * f(i) + f(im)) / (h * h);
  }
  return out;
}

// 5-point periodic Laplacian of a doubly periodic grid function.
inline Eigen::ArrayXXd laplacian_flat(const Eigen::ArrayXXd& f, double h) {
  const auto n = f.rows();
  Eigen::ArrayXXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index ip = (i + 1) % n;
    const Eigen::Index im = (i + n - 1) % n;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index jp = (j + 1) % n;
      const Eigen::Index jm = (j + n - 1) % n;
      out(i, j) = (f(ip, j) + f(im, j) + f(i, jp) + f(i, jm) - 4.0 * f(i, j)) /
                  (h * h);
    }
  }
  return out;
}

// Componentwise central gradients of a doubly periodic grid function.
inline void gradient_flat(const Eigen::ArrayXXd& f, double h,
                          Eigen::ArrayXXd& fx, Eigen::ArrayXXd& fy) {
  const auto n = f.rows();
  fx.resize(n, n);
  fy.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index ip = (i + 1) % n;
    const Eigen::Index im = (i + n - 1) % n;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index jp = (j + 1) % n;
      const Eigen::Index jm = (j + n - 1) % n;
      fx(i, j) = (f(ip, j) - f(im, j)) / (2.0 * h);
      fy(i, j) = (f(i, jp) - f(i, jm)) / (2.0 * h);
    }
  }
}

}  // namespace ryflow::fd
