#include "ryflow/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ryflow {

namespace {

int sym_size(int n) { return n * (n + 1) / 2; }

// Index of the off-diagonal pair (i, j), i < j, within the packed basis
// (after the n diagonal slots).
int pair_index(int n, int i, int j) {
  // Pairs in lexicographic order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
  int idx = n;
  for (int a = 0; a < i; ++a) idx += n - 1 - a;
  return idx + (j - i - 1);
}

}  // namespace

SymbolMatrix build_symbol_matrix(const FlowParams& p) {
  if (p.dim < 2) {
    throw InvalidStateError("build_symbol_matrix: dim must be >= 2");
  }
  const int n = p.dim;
  const int m = sym_size(n);
  SymbolMatrix out;
  out.dim = n;
  out.m = Eigen::MatrixXd::Zero(m, m);
  // Diagonal components: sigma(h)_{ii} = alpha h_{ii} + beta sum_{j>=2} h_{jj}.
  for (int i = 0; i < n; ++i) {
    out.m(i, i) = p.alpha;
    for (int j = 1; j < n; ++j) out.m(i, j) += p.beta;
  }
  // Off-diagonal components are just scaled by alpha.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int k = pair_index(n, i, j);
      out.m(k, k) = p.alpha;
    }
  }
  return out;
}

Eigen::MatrixXd apply_symbol_direct(const FlowParams& p,
                                    const Eigen::MatrixXd& h) {
  const auto n = h.rows();
  if (h.cols() != n) {
    throw InvalidStateError("apply_symbol_direct: h must be square");
  }
  const double tr_tail = h.trace() - h(0, 0);
  Eigen::MatrixXd out = p.alpha * h;
  out.diagonal().array() += p.beta * tr_tail;
  return out;
}

Eigen::VectorXd pack_sym(const Eigen::MatrixXd& h) {
  const int n = static_cast<int>(h.rows());
  Eigen::VectorXd v(sym_size(n));
  for (int i = 0; i < n; ++i) v(i) = h(i, i);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) v(pair_index(n, i, j)) = h(i, j);
  }
  return v;
}

Eigen::MatrixXd unpack_sym(const Eigen::VectorXd& v, int dim) {
  Eigen::MatrixXd h(dim, dim);
  for (int i = 0; i < dim; ++i) h(i, i) = v(i);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      h(i, j) = h(j, i) = v(pair_index(dim, i, j));
    }
  }
  return h;
}

std::vector<double> symbol_spectrum(const SymbolMatrix& s) {
  // The matrix is upper triangular in a suitable ordering but not symmetric,
  // so use the general dense eigensolver.
  Eigen::EigenSolver<Eigen::MatrixXd> solver(s.m);
  if (solver.info() != Eigen::Success) {
    throw InvalidStateError("symbol_spectrum: eigensolver failed");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(s.m.rows()));
  for (Eigen::Index i = 0; i < s.m.rows(); ++i) {
    const auto ev = solver.eigenvalues()(i);
    if (std::abs(ev.imag()) > kSymbolImagTol) {
      throw InvalidStateError(
          "symbol_spectrum: unexpected complex eigenvalue with imag = " +
          std::to_string(ev.imag()));
    }
    out.push_back(ev.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

double char_poly_V(const FlowParams& p, double lambda) {
  const int k = p.dim - 1;
  Eigen::MatrixXd v = Eigen::MatrixXd::Constant(k, k, p.beta);
  v.diagonal().array() += p.alpha - lambda;
  return v.determinant();
}

EllipticityVerdict is_strongly_elliptic(const FlowParams& p) {
  const double n = static_cast<double>(p.dim);
  EllipticityVerdict out;
  out.min_eigenvalue = std::min(p.alpha, p.alpha + (n - 1.0) * p.beta);
  if (std::abs(out.min_eigenvalue) <= kEllipticityBoundaryTol) {
    out.verdict = Ellipticity::kBoundary;
  } else if (out.min_eigenvalue > 0.0) {
    out.verdict = Ellipticity::kElliptic;
  } else {
    out.verdict = Ellipticity::kNotElliptic;
  }
  return out;
}

}  // namespace ryflow
