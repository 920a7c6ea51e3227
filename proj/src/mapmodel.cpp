#include "qwielandt/mapmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace qwl {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Falsified: return "Falsified";
    case Verdict::Unfalsified: return "Unfalsified";
  }
  return "Unfalsified";
}

//=========================================================================
// Construction
//=========================================================================

static int square_side(Eigen::Index n, const char* where) {
  const int s = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
  if (static_cast<Eigen::Index>(s) * s != n) {
    throw Error(Errc::shape_mismatch,
                std::string(where) + ": size is not a perfect square");
  }
  return s;
}

SuperOperator SuperOperator::from_transfer(MatC transfer) {
  if (transfer.rows() != transfer.cols()) {
    throw Error(Errc::shape_mismatch, "from_transfer: transfer must be square");
  }
  require_finite(transfer, "from_transfer");
  SuperOperator s;
  s.d_ = square_side(transfer.rows(), "from_transfer");
  s.choi_ = choi_from_transfer(transfer, s.d_);
  s.transfer_ = std::move(transfer);
  return s;
}

SuperOperator SuperOperator::from_kraus(const std::vector<MatC>& ops) {
  if (ops.empty()) {
    throw Error(Errc::shape_mismatch, "from_kraus: empty Kraus list");
  }
  const auto d = ops[0].rows();
  if (d == 0 || ops[0].cols() != d) {
    throw Error(Errc::shape_mismatch, "from_kraus: operators must be square");
  }
  MatC transfer = MatC::Zero(d * d, d * d);
  for (const auto& a : ops) {
    if (a.rows() != d || a.cols() != d) {
      throw Error(Errc::shape_mismatch, "from_kraus: inconsistent shapes");
    }
    require_finite(a, "from_kraus");
    transfer += kron(a.conjugate(), a);
  }
  SuperOperator s = from_transfer(std::move(transfer));
  s.kraus_ = ops;
  return s;
}

SuperOperator SuperOperator::from_choi(const MatC& choi) {
  if (choi.rows() != choi.cols()) {
    throw Error(Errc::shape_mismatch, "from_choi: Choi must be square");
  }
  require_finite(choi, "from_choi");
  const int d = square_side(choi.rows(), "from_choi");
  return from_transfer(transfer_from_choi(choi, d));
}

SuperOperator SuperOperator::from_action(
    int d, const std::function<MatC(const MatC&)>& fn) {
  if (d <= 0) throw Error(Errc::bad_params, "from_action: d must be positive");
  MatC transfer(d * d, d * d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      MatC unit = MatC::Zero(d, d);
      unit(i, j) = 1.0;
      const MatC out = fn(unit);
      if (out.rows() != d || out.cols() != d) {
        throw Error(Errc::shape_mismatch, "from_action: action changed shape");
      }
      transfer.col(i + static_cast<Eigen::Index>(d) * j) = vec(out);
    }
  }
  return from_transfer(std::move(transfer));
}

MatC SuperOperator::apply(const MatC& x) const {
  if (x.rows() != d_ || x.cols() != d_) {
    throw Error(Errc::dimension_mismatch, "apply: input dimension mismatch");
  }
  return unvec(transfer_ * vec(x), d_, d_);
}

SuperOperator SuperOperator::tagged(std::string tag) const {
  SuperOperator s = *this;
  s.construction_ = std::move(tag);
  return s;
}

//=========================================================================
// Choi reshuffle: C[(i*d+k),(j*d+l)] = T[(k+d*l),(i+d*j)]
//=========================================================================

MatC choi_from_transfer(const MatC& transfer, int d) {
  MatC c(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          c(i * d + k, j * d + l) = transfer(k + d * l, i + d * j);
  return c;
}

MatC transfer_from_choi(const MatC& choi, int d) {
  MatC t(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          t(k + d * l, i + d * j) = choi(i * d + k, j * d + l);
  return t;
}

std::vector<MatC> to_kraus(const SuperOperator& s, const ToleranceConfig& tol) {
  const int d = s.dim();
  const MatC c = hermitian_part(s.choi());
  const HermEig eig = herm_eig(c);
  const double scale = c.norm();
  const double lmin = eig.eigenvalues.size() > 0 ? eig.eigenvalues(0) : 0.0;
  if (lmin < -tol.psd_tol * std::max(scale, 1e-300)) {
    throw Error(Errc::not_completely_positive,
                "to_kraus: Choi matrix has eigenvalue " + std::to_string(lmin));
  }
  const double lmax = eig.eigenvalues(eig.eigenvalues.size() - 1);
  std::vector<MatC> kraus;
  for (Eigen::Index i = eig.eigenvalues.size() - 1; i >= 0; --i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda > tol.rank_rel_tol * lmax && lambda > 0.0) {
      kraus.push_back(std::sqrt(lambda) *
                      unvec(eig.eigenvectors.col(i), d, d));
    }
  }
  return kraus;
}

//=========================================================================
// Algebra
//=========================================================================

SuperOperator identity_map(int d) {
  return SuperOperator::from_transfer(MatC::Identity(d * d, d * d));
}

SuperOperator compose(const SuperOperator& s1, const SuperOperator& s2) {
  if (s1.dim() != s2.dim()) {
    throw Error(Errc::dimension_mismatch, "compose: dimension mismatch");
  }
  return SuperOperator::from_transfer(s1.transfer() * s2.transfer());
}

SuperOperator power(const SuperOperator& s, int k) {
  if (k < 0) throw Error(Errc::bad_params, "power: k must be >= 0");
  MatC acc = MatC::Identity(s.transfer().rows(), s.transfer().cols());
  MatC base = s.transfer();
  int e = k;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return SuperOperator::from_transfer(std::move(acc));
}

SuperOperator tensor(const SuperOperator& s1, const SuperOperator& s2) {
  const int d1 = s1.dim();
  const int d2 = s2.dim();
  const int dd = d1 * d2;
  // Precompute the action on factor matrix units, then assemble columns of
  // the composite transfer from Phi(E_ij) (x) Psi(E_kl).
  std::vector<MatC> out1(static_cast<size_t>(d1) * d1);
  std::vector<MatC> out2(static_cast<size_t>(d2) * d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) {
      MatC unit = MatC::Zero(d1, d1);
      unit(i, j) = 1.0;
      out1[static_cast<size_t>(i) * d1 + j] = s1.apply(unit);
    }
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j) {
      MatC unit = MatC::Zero(d2, d2);
      unit(i, j) = 1.0;
      out2[static_cast<size_t>(i) * d2 + j] = s2.apply(unit);
    }
  MatC transfer(dd * dd, dd * dd);
  for (int r1 = 0; r1 < d1; ++r1)
    for (int r2 = 0; r2 < d2; ++r2)
      for (int c1 = 0; c1 < d1; ++c1)
        for (int c2 = 0; c2 < d2; ++c2) {
          const int row = r1 * d2 + r2;
          const int col = c1 * d2 + c2;
          const MatC block = kron(out1[static_cast<size_t>(r1) * d1 + c1],
                                  out2[static_cast<size_t>(r2) * d2 + c2]);
          transfer.col(row + static_cast<Eigen::Index>(dd) * col) = vec(block);
        }
  return SuperOperator::from_transfer(std::move(transfer));
}

SuperOperator adjoint(const SuperOperator& s) {
  return SuperOperator::from_transfer(s.transfer().adjoint());
}

SuperOperator scale_add(double alpha, const SuperOperator& s1, double beta,
                        const SuperOperator& s2) {
  if (s1.dim() != s2.dim()) {
    throw Error(Errc::dimension_mismatch, "scale_add: dimension mismatch");
  }
  return SuperOperator::from_transfer(alpha * s1.transfer() +
                                      beta * s2.transfer());
}

//=========================================================================
// Predicates
//=========================================================================

static double min_eig(const MatC& hermitian) {
  Eigen::SelfAdjointEigenSolver<MatC> solver(hermitian_part(hermitian));
  return solver.eigenvalues()(0);
}

static VecC random_unit_vector(int d, Rng& rng) {
  VecC psi(d);
  for (int i = 0; i < d; ++i) psi(i) = rng.cgaussian();
  const double n = psi.norm();
  if (n < 1e-12) {
    psi.setZero();
    psi(0) = 1.0;
    return psi;
  }
  return psi / n;
}

static MatC random_ginibre(int rows, int cols, Rng& rng) {
  MatC g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.cgaussian();
  return g;
}

MapPredicates predicates(const SuperOperator& s, const ToleranceConfig& tol,
                         long samples, uint64_t seed) {
  const int d = s.dim();
  const MatC& c = s.choi();
  MapPredicates out;

  const MatC eye = MatC::Identity(d, d);

  {  // trace preservation <=> tr_2(Choi) = 1
    const double dev = (partial_trace(c, d, d, 2) - eye).norm();
    out.trace_preserving.verdict =
        dev <= tol.psd_tol ? Verdict::Certified : Verdict::Falsified;
    out.trace_preserving.margin = dev;
  }
  {  // unitality <=> Phi(1) = 1
    const double dev = (s.apply(eye) - eye).norm();
    out.unital.verdict =
        dev <= tol.psd_tol ? Verdict::Certified : Verdict::Falsified;
    out.unital.margin = dev;
  }
  {  // hermiticity preservation <=> Choi Hermitian
    const double dev = (c - c.adjoint()).norm();
    out.hermiticity_preserving.verdict =
        dev <= tol.psd_tol * std::max(c.norm(), 1.0) ? Verdict::Certified
                                                     : Verdict::Falsified;
    out.hermiticity_preserving.margin = dev;
  }

  double choi_lmin = 0.0;
  {  // complete positivity <=> Choi PSD
    Eigen::SelfAdjointEigenSolver<MatC> solver(hermitian_part(c));
    choi_lmin = solver.eigenvalues()(0);
    const double scale = std::max(c.norm(), 1e-300);
    if (choi_lmin >= -tol.psd_tol * scale) {
      out.cp.verdict = Verdict::Certified;
    } else {
      out.cp.verdict = Verdict::Falsified;
      out.cp.witness = unvec(solver.eigenvectors().col(0), d, d);
    }
    out.cp.margin = choi_lmin;
  }
  {  // PPT <=> CP and Choi partial transpose PSD
    const double pt_lmin = min_eig(partial_transpose(c, d, d, 1));
    const double scale = std::max(c.norm(), 1e-300);
    const bool pt_ok = pt_lmin >= -tol.psd_tol * scale;
    out.ppt.verdict = (out.cp.verdict == Verdict::Certified && pt_ok)
                          ? Verdict::Certified
                          : Verdict::Falsified;
    out.ppt.margin = pt_lmin;
  }

  {  // sampled positivity falsifier on rank-one projections
    Rng rng(splitmix64(seed ^ 0x706F73ULL));
    out.positive_sampled.verdict = Verdict::Unfalsified;
    double worst = std::numeric_limits<double>::infinity();
    for (long k = 0; k < samples; ++k) {
      const VecC psi = random_unit_vector(d, rng);
      const MatC in = psi * psi.adjoint();
      const double lmin = min_eig(s.apply(in));
      worst = std::min(worst, lmin);
      if (lmin < -tol.strict_pos_tol) {
        out.positive_sampled.verdict = Verdict::Falsified;
        out.positive_sampled.witness = in;
        out.positive_sampled.samples_used = k + 1;
        break;
      }
    }
    if (out.positive_sampled.verdict == Verdict::Unfalsified) {
      out.positive_sampled.samples_used = samples;
    }
    out.positive_sampled.margin = worst;
  }

  {  // Schwarz inequality
    if (out.cp.verdict == Verdict::Certified &&
        out.unital.verdict == Verdict::Certified) {
      // Unital CP maps satisfy the Schwarz inequality; no sampling needed.
      out.schwarz.verdict = Verdict::Certified;
      out.schwarz.margin = choi_lmin;
    } else {
      Rng rng(splitmix64(seed ^ 0x736368ULL));
      out.schwarz.verdict = Verdict::Unfalsified;
      double worst = std::numeric_limits<double>::infinity();
      for (long k = 0; k < samples; ++k) {
        // a = 1 is probed first; it is the single most discriminating input.
        MatC a;
        if (k == 0) {
          a = eye;
        } else {
          a = random_ginibre(d, d, rng);
          a /= std::max(a.norm(), 1e-300);
        }
        const MatC defect = s.apply(a.adjoint() * a) -
                            s.apply(a).adjoint() * s.apply(a);
        const double lmin = min_eig(defect);
        worst = std::min(worst, lmin);
        if (lmin < -tol.psd_tol) {
          out.schwarz.verdict = Verdict::Falsified;
          out.schwarz.witness = a;
          out.schwarz.samples_used = k + 1;
          break;
        }
      }
      if (out.schwarz.verdict == Verdict::Unfalsified) {
        out.schwarz.samples_used = samples;
      }
      out.schwarz.margin = worst;
    }
  }

  return out;
}

PredicateVerdict entanglement_breaking_check(const SuperOperator& s,
                                             const ToleranceConfig& tol) {
  const int d = s.dim();
  const MatC& c = s.choi();
  const double scale = std::max(c.norm(), 1e-300);
  PredicateVerdict out;

  Eigen::SelfAdjointEigenSolver<MatC> choi_solver(hermitian_part(c));
  const double cp_lmin = choi_solver.eigenvalues()(0);
  if (cp_lmin < -tol.psd_tol * scale) {
    out.verdict = Verdict::Falsified;  // not even CP
    out.margin = cp_lmin;
    out.witness = unvec(choi_solver.eigenvectors().col(0), d, d);
    return out;
  }

  const MatC pt = partial_transpose(c, d, d, 1);
  Eigen::SelfAdjointEigenSolver<MatC> pt_solver(hermitian_part(pt));
  const double pt_lmin = pt_solver.eigenvalues()(0);
  out.margin = pt_lmin;
  if (pt_lmin < -tol.psd_tol * scale) {
    // PPT fails, which refutes entanglement breaking at any dimension.
    out.verdict = Verdict::Falsified;
    out.witness = unvec(pt_solver.eigenvectors().col(0), d, d);
    return out;
  }
  if (d == 2) {
    // 2 (x) 2: PPT is equivalent to separability of the Choi state.
    out.verdict = Verdict::Certified;
    return out;
  }
  out.verdict = s.construction() == "holevo_eb" ? Verdict::Certified
                                                : Verdict::Unfalsified;
  return out;
}

Hypotheses cheap_hypotheses(const SuperOperator& s, const ToleranceConfig& tol,
                            long falsifier_samples, uint64_t seed) {
  const int d = s.dim();
  const MatC eye = MatC::Identity(d, d);
  const MatC& c = s.choi();
  Hypotheses h;
  h.trace_preserving = (partial_trace(c, d, d, 2) - eye).norm() <= tol.psd_tol;
  h.unital = (s.apply(eye) - eye).norm() <= tol.psd_tol;
  const double scale = std::max(c.norm(), 1e-300);
  h.cp = min_eig(c) >= -tol.psd_tol * scale;
  h.ppt = h.cp && min_eig(partial_transpose(c, d, d, 1)) >= -tol.psd_tol * scale;
  if (h.cp && h.unital) {
    h.schwarz_certified = true;
    return h;
  }
  Rng rng(splitmix64(seed ^ 0x736368ULL));
  for (long k = 0; k < falsifier_samples; ++k) {
    MatC a;
    if (k == 0) {
      a = eye;
    } else {
      a = random_ginibre(d, d, rng);
      a /= std::max(a.norm(), 1e-300);
    }
    const MatC defect =
        s.apply(a.adjoint() * a) - s.apply(a).adjoint() * s.apply(a);
    if (min_eig(defect) < -tol.psd_tol) {
      h.schwarz_falsified = true;
      break;
    }
  }
  return h;
}

}  // namespace qwl
