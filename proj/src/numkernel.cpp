#include "qwielandt/numkernel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qwl {

HermEig herm_eig(const MatC& a) {
  if (a.rows() != a.cols()) {
    throw Error(Errc::not_hermitian, "herm_eig: matrix is not square");
  }
  require_finite(a, "herm_eig");
  const double scale = a.norm();
  const double dev = (a - a.adjoint()).norm();
  if (dev > 1e-12 * std::max(scale, 1e-300)) {
    throw Error(Errc::not_hermitian,
                "herm_eig: ||A - A'|| = " + std::to_string(dev) +
                    " exceeds 1e-12 * ||A||");
  }
  Eigen::SelfAdjointEigenSolver<MatC> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::bad_input, "herm_eig: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

int svd_rank(const MatC& a, double rel_tol) {
  require_finite(a, "svd_rank");
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<MatC> svd(a);
  const VecR sigma = svd.singularValues();
  if (sigma.size() == 0) return 0;
  const double smax = sigma(0);
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > rel_tol * smax) ++rank;
  }
  return rank;
}

double trace_norm(const MatC& a) {
  if (a.rows() != a.cols()) {
    throw Error(Errc::shape_mismatch, "trace_norm: matrix is not square");
  }
  Eigen::JacobiSVD<MatC> svd(a);
  return svd.singularValues().sum();
}

double operator_norm(const MatC& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatC> svd(a);
  return svd.singularValues()(0);
}

std::vector<VecC> nullspace(const MatC& l, double rel_tol,
                            double scale_floor) {
  require_finite(l, "nullspace");
  Eigen::JacobiSVD<MatC> svd(l, Eigen::ComputeFullV);
  const VecR sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cut = rel_tol * std::max(smax, scale_floor);
  const auto n = l.cols();
  std::vector<VecC> basis;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = i < sigma.size() ? sigma(i) : 0.0;
    if (s <= cut) {
      basis.push_back(svd.matrixV().col(i));
    }
  }
  return basis;
}

MatC kron(const MatC& a, const MatC& b) {
  MatC out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

static void check_bipartite(const MatC& m, int d1, int d2, int leg,
                            const char* where) {
  if (d1 <= 0 || d2 <= 0 || leg < 1 || leg > 2) {
    throw Error(Errc::bad_params, std::string(where) + ": bad leg/dims");
  }
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw Error(Errc::shape_mismatch,
                std::string(where) + ": matrix is not (d1*d2) square");
  }
}

MatC partial_trace(const MatC& m, int d1, int d2, int leg) {
  check_bipartite(m, d1, d2, leg, "partial_trace");
  if (leg == 1) {
    MatC out = MatC::Zero(d2, d2);
    for (int a = 0; a < d1; ++a)
      for (int b = 0; b < d2; ++b)
        for (int e = 0; e < d2; ++e) out(b, e) += m(a * d2 + b, a * d2 + e);
    return out;
  }
  MatC out = MatC::Zero(d1, d1);
  for (int a = 0; a < d1; ++a)
    for (int c = 0; c < d1; ++c)
      for (int b = 0; b < d2; ++b) out(a, c) += m(a * d2 + b, c * d2 + b);
  return out;
}

MatC partial_transpose(const MatC& m, int d1, int d2, int leg) {
  check_bipartite(m, d1, d2, leg, "partial_transpose");
  MatC out(m.rows(), m.cols());
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b)
      for (int c = 0; c < d1; ++c)
        for (int e = 0; e < d2; ++e) {
          if (leg == 1) {
            out(a * d2 + b, c * d2 + e) = m(c * d2 + b, a * d2 + e);
          } else {
            out(a * d2 + b, c * d2 + e) = m(a * d2 + e, c * d2 + b);
          }
        }
  return out;
}

VecC vec(const MatC& a) {
  return Eigen::Map<const VecC>(a.data(), a.size());
}

MatC unvec(const VecC& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw Error(Errc::shape_mismatch, "unvec: size mismatch");
  }
  return Eigen::Map<const MatC>(v.data(), rows, cols);
}

Complex hs_inner(const MatC& a, const MatC& b) {
  return (a.adjoint() * b).trace();
}

std::vector<MatC> hs_orthonormalize(const std::vector<MatC>& mats,
                                    double rel_tol) {
  if (mats.empty()) return {};
  const auto rows = mats[0].rows();
  const auto cols = mats[0].cols();
  MatC stacked(rows * cols, static_cast<Eigen::Index>(mats.size()));
  for (size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() != rows || mats[i].cols() != cols) {
      throw Error(Errc::shape_mismatch, "hs_orthonormalize: mixed shapes");
    }
    stacked.col(static_cast<Eigen::Index>(i)) = vec(mats[i]);
  }
  Eigen::JacobiSVD<MatC> svd(stacked, Eigen::ComputeThinU);
  const VecR sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  std::vector<MatC> basis;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > rel_tol * smax && sigma(i) > 0.0) {
      basis.push_back(unvec(svd.matrixU().col(i), static_cast<int>(rows),
                            static_cast<int>(cols)));
    }
  }
  return basis;
}

MatC OperatorSubspace::projector() const {
  MatC p = MatC::Zero(d * d, d * d);
  for (const auto& b : basis) {
    const VecC v = vec(b);
    p += v * v.adjoint();
  }
  return p;
}

double subspace_distance(const OperatorSubspace& b1,
                         const OperatorSubspace& b2) {
  if (b1.d != b2.d) {
    throw Error(Errc::dimension_mismatch,
                "subspace_distance: ambient dimensions differ");
  }
  return (b1.projector() - b2.projector()).norm();
}

OperatorSubspace subspace_from_span(int d, const std::vector<MatC>& mats,
                                    double rel_tol) {
  OperatorSubspace s;
  s.d = d;
  s.basis = hs_orthonormalize(mats, rel_tol);
  return s;
}

}  // namespace qwl
