#ifndef QWIELANDT_NUMKERNEL_HPP
#define QWIELANDT_NUMKERNEL_HPP

#include <vector>

#include "qwielandt/common.hpp"

namespace qwl {

//=========================================================================
// Dense complex-matrix kernels
//=========================================================================

struct HermEig {
  VecR eigenvalues;  // ascending
  MatC eigenvectors; // unitary, columns match eigenvalues
};

// Eigendecomposition of a Hermitian matrix. Throws Error(not_hermitian)
// when ||A - A'||_F > 1e-12 * ||A||_F.
HermEig herm_eig(const MatC& a);

// Number of singular values above rel_tol * sigma_max. Zero matrix -> 0.
int svd_rank(const MatC& a, double rel_tol);

// Sum of singular values.
double trace_norm(const MatC& a);

// Largest singular value.
double operator_norm(const MatC& a);

// Orthonormal basis of { v : ||Lv|| <= rel_tol * sigma_max(L) * ||v|| }.
// scale_floor anchors the threshold for numerically-zero systems: the cut
// is rel_tol * max(sigma_max, scale_floor).
std::vector<VecC> nullspace(const MatC& l, double rel_tol,
                            double scale_floor = 0.0);

// Kronecker product, (A (x) B)[(i1*rB+i2),(j1*cB+j2)] = A(i1,j1) B(i2,j2).
MatC kron(const MatC& a, const MatC& b);

// Partial trace / partial transpose of a (d1*d2)x(d1*d2) matrix over the
// given tensor leg (1 = first factor, 2 = second factor).
MatC partial_trace(const MatC& m, int d1, int d2, int leg);
MatC partial_transpose(const MatC& m, int d1, int d2, int leg);

// Column-stacking vectorization: vec(X)[r + rows*c] = X(r, c), so that
// vec(A X B) = (B^T (x) A) vec(X).
VecC vec(const MatC& a);
MatC unvec(const VecC& v, int rows, int cols);

// Hilbert-Schmidt inner product tr(A' B).
Complex hs_inner(const MatC& a, const MatC& b);

// Rank-revealing orthonormalization of a list of matrices under the HS
// inner product (SVD based; near-dependent directions are dropped at
// rel_tol relative to the largest singular value).
std::vector<MatC> hs_orthonormalize(const std::vector<MatC>& mats,
                                    double rel_tol = 1e-10);

//=========================================================================
// Operator subspaces
//=========================================================================

struct OperatorSubspace {
  int d = 0;                // ambient dimension (subspace of M_d)
  std::vector<MatC> basis;  // HS-orthonormal
  bool verified_star_closed = false;
  bool verified_mult_closed = false;

  int dim() const { return static_cast<int>(basis.size()); }

  // d^2 x d^2 orthogonal projector onto span{vec(basis)}.
  MatC projector() const;
};

// Frobenius norm of the difference of the orthogonal projectors onto the
// two spans. Throws Error(dimension_mismatch) if ambient dims differ.
double subspace_distance(const OperatorSubspace& b1, const OperatorSubspace& b2);

// Builds a subspace from arbitrary (not necessarily orthonormal) matrices.
OperatorSubspace subspace_from_span(int d, const std::vector<MatC>& mats,
                                    double rel_tol = 1e-10);

}  // namespace qwl

#endif
