#pragma once

// Principal symbol of the linearized flow operator in DeTurck gauge at a
// unit covector xi.  In an orthonormal basis adapted to xi = e1, the symbol
// acting on symmetric 2-tensors h is
//
//   sigma(h)_{ik} = alpha * h_{ik} + beta * (tr h - h_{11}) * delta_{ik}.
//
// With the component ordering (h_11, ..., h_nn, h_12, h_13, ..., h_{n-1,n})
// the matrix is block upper triangular:
//
//   U = [ alpha   beta * 1^T   0 ]
//       [ 0       V            0 ]
//       [ 0       0            alpha * I ],
//
// where V = alpha * I + beta * J acts on (h_22, ..., h_nn) and J is the
// all-ones matrix of size n-1.  The spectrum is therefore
// { alpha  (multiplicity n(n+1)/2 - 1),  alpha + (n-1)*beta  (multiplicity 1) }.

#include <Eigen/Dense>
#include <vector>

#include "ryflow/params.hpp"

namespace ryflow {

// Eigenvalues whose imaginary part exceeds this are reported as a failure of
// the (real-spectrum) structure the block form guarantees.
inline constexpr double kSymbolImagTol = 1e-10;

// Parameter points closer than this to the regime boundary are classified as
// kBoundary rather than elliptic/not.
inline constexpr double kEllipticityBoundaryTol = 1e-14;

struct SymbolMatrix {
  // Size n(n+1)/2, ordered diagonal components first (h_11, ..., h_nn), then
  // off-diagonal pairs (1,2), (1,3), ..., (n-1,n) in lexicographic order.
  Eigen::MatrixXd m;
  int dim = 0;
};

// Dense symbol matrix in the ordering documented above.  Requires dim >= 2.
SymbolMatrix build_symbol_matrix(const FlowParams& p);

// Applies the symbol directly to a symmetric matrix h (component formula,
// no basis packing) -- used to cross-check build_symbol_matrix.
Eigen::MatrixXd apply_symbol_direct(const FlowParams& p,
                                    const Eigen::MatrixXd& h);

// Pack a symmetric n-by-n matrix into the basis ordering of SymbolMatrix,
// and back.
Eigen::VectorXd pack_sym(const Eigen::MatrixXd& h);
Eigen::MatrixXd unpack_sym(const Eigen::VectorXd& v, int dim);

// All eigenvalues of the symbol matrix, sorted ascending.  Throws
// InvalidStateError if any eigenvalue has |imag| > kSymbolImagTol (the block
// structure guarantees a real spectrum; a violation means the matrix was
// built wrong).
std::vector<double> symbol_spectrum(const SymbolMatrix& s);

// det(V - lambda * I) for the inner (n-1)x(n-1) block V = alpha I + beta J,
// evaluated numerically.  Closed form: (alpha-lambda)^{n-2} *
// (alpha + (n-1)*beta - lambda).
double char_poly_V(const FlowParams& p, double lambda);

enum class Ellipticity { kElliptic, kNotElliptic, kBoundary };

struct EllipticityVerdict {
  Ellipticity verdict = Ellipticity::kNotElliptic;
  // min(alpha, alpha + (n-1)*beta): positive iff strongly elliptic.
  double min_eigenvalue = 0.0;
};

// Strong ellipticity holds iff alpha > 0 and alpha + (n-1)*beta > 0; points
// within kEllipticityBoundaryTol of either equality are kBoundary.
EllipticityVerdict is_strongly_elliptic(const FlowParams& p);

}  // namespace ryflow
