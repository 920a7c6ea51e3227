#ifndef QWIELANDT_TESTS_SUPPORT_HPP
#define QWIELANDT_TESTS_SUPPORT_HPP

#include <doctest.h>

#include "qwielandt/mapmodel.hpp"
#include "qwielandt/zoo.hpp"

namespace qwtest {

using namespace qwl;

inline MatC random_hermitian(int d, Rng& rng) {
  const MatC g = zoo::ginibre(d, d, rng);
  return hermitian_part(g);
}

inline MatC random_psd(int d, Rng& rng) {
  const MatC g = zoo::ginibre(d, d, rng);
  return g * g.adjoint();
}

inline MatC matrix_unit(int d, int i, int j) {
  MatC e = MatC::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

inline bool mat_near(const MatC& a, const MatC& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a - b).norm() <= tol;
}

// Column-normalized copy of a nonnegative pattern.
inline MatR column_stochastic(MatR w) {
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    const double s = w.col(j).sum();
    if (s > 0) w.col(j) /= s;
  }
  return w;
}

}  // namespace qwtest

#endif
