#include "qwielandt/zoo.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qwielandt/primitivity.hpp"

namespace qwl {
namespace zoo {

//=========================================================================
// Random primitives
//=========================================================================

MatC ginibre(int rows, int cols, Rng& rng) {
  MatC g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.cgaussian();
  return g;
}

MatC haar_unitary(int d, Rng& rng) {
  const MatC g = ginibre(d, d, rng);
  Eigen::HouseholderQR<MatC> qr(g);
  MatC q = qr.householderQ() * MatC::Identity(d, d);
  const MatC r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex rii = r(i, i);
    const double m = std::abs(rii);
    q.col(i) *= m > 1e-300 ? rii / m : Complex(1.0, 0.0);
  }
  return q;
}

VecC random_unit_vector(int d, Rng& rng) {
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

MatC random_density(int d, Rng& rng) {
  const MatC g = ginibre(d, d, rng);
  MatC rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

MatC random_psd_rank(int d, int rank, Rng& rng) {
  if (rank < 1 || rank > d) {
    throw Error(Errc::bad_params, "random_psd_rank: rank out of range");
  }
  const MatC g = ginibre(d, rank, rng);
  Eigen::HouseholderQR<MatC> qr(g);
  const MatC q = qr.householderQ() * MatC::Identity(d, rank);
  std::vector<double> w = dirichlet_weights(rank, rng);
  MatC out = MatC::Zero(d, d);
  for (int k = 0; k < rank; ++k) {
    out += w[k] * (q.col(k) * q.col(k).adjoint());
  }
  return out;
}

std::vector<double> dirichlet_weights(int n, Rng& rng) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double u;
    do {
      u = rng.uniform();
    } while (u >= 1.0);
    w[i] = -std::log(1.0 - u);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return w;
}

MatR sinkhorn(MatR w, int max_iters, double tol) {
  const int d = static_cast<int>(w.rows());
  for (int it = 0; it < max_iters; ++it) {
    for (int i = 0; i < d; ++i) {
      const double r = w.row(i).sum();
      if (r > 0) w.row(i) /= r;
    }
    for (int j = 0; j < d; ++j) {
      const double c = w.col(j).sum();
      if (c > 0) w.col(j) /= c;
    }
    double dev = 0.0;
    for (int i = 0; i < d; ++i) dev = std::max(dev, std::abs(w.row(i).sum() - 1.0));
    for (int j = 0; j < d; ++j) dev = std::max(dev, std::abs(w.col(j).sum() - 1.0));
    if (dev < tol) break;
  }
  return w;
}

MatR random_primitive_column_stochastic(int d, Rng& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    // Per-matrix edge density so sparse (large-index) and dense patterns
    // both appear in the ensemble.
    const double density = 0.25 + 0.6 * rng.uniform();
    MatR w = MatR::Zero(d, d);
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i) {
        if (rng.uniform() < density) w(i, j) = 0.35 + rng.uniform();
      }
      // every column needs support for column stochasticity
      if (w.col(j).sum() == 0.0) {
        const int i = static_cast<int>(rng.next_u64() % d);
        w(i, j) = 0.35 + rng.uniform();
      }
    }
    if (!classical_wielandt(w).primitive) continue;
    for (int j = 0; j < d; ++j) w.col(j) /= w.col(j).sum();
    return w;
  }
  throw Error(Errc::rejection_cap_exceeded,
              "random_primitive_column_stochastic: no primitive pattern found");
}

//=========================================================================
// Named maps
//=========================================================================

SuperOperator identity_channel(int d) {
  return SuperOperator::from_kraus({MatC::Identity(d, d)}).tagged("identity");
}

SuperOperator omega_channel(int d) {
  const MatC eye = MatC::Identity(d, d);
  return SuperOperator::from_action(d, [&](const MatC& x) {
           return MatC(x.trace() / double(d) * eye);
         })
      .tagged("omega");
}

SuperOperator depolarizing(int d, double p) {
  if (p < 0.0 || p > 1.0) {
    throw Error(Errc::bad_params, "depolarizing: p must lie in [0, 1]");
  }
  std::vector<MatC> kraus;
  kraus.push_back(std::sqrt(1.0 - p) * MatC::Identity(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      MatC e = MatC::Zero(d, d);
      e(i, j) = std::sqrt(p / d);
      kraus.push_back(std::move(e));
    }
  return SuperOperator::from_kraus(kraus).tagged("depolarizing");
}

SuperOperator transpose_depolarizing_d3() {
  const MatC eye = MatC::Identity(3, 3);
  return SuperOperator::from_action(3, [&](const MatC& x) {
           return MatC(0.5 * (x.trace() * eye - x.transpose()));
         })
      .tagged("transpose_depolarizing_d3");
}

SuperOperator choi_schwarz_m2() {
  const MatC eye = MatC::Identity(2, 2);
  return SuperOperator::from_action(2, [&](const MatC& x) {
           return MatC(0.5 * x.transpose() + 0.25 * x.trace() * eye);
         })
      .tagged("choi_schwarz_m2");
}

SuperOperator unitary_channel(const MatC& u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw Error(Errc::bad_params, "unitary_channel: not square");
  }
  const MatC eye = MatC::Identity(u.rows(), u.cols());
  if ((u.adjoint() * u - eye).norm() > 1e-9) {
    throw Error(Errc::bad_params, "unitary_channel: matrix is not unitary");
  }
  return SuperOperator::from_kraus({u}).tagged("unitary");
}

SuperOperator amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw Error(Errc::bad_params, "amplitude_damping: gamma must lie in [0, 1]");
  }
  MatC a1 = MatC::Zero(2, 2);
  a1(0, 0) = 1.0;
  a1(1, 1) = std::sqrt(1.0 - gamma);
  MatC a2 = MatC::Zero(2, 2);
  a2(0, 1) = std::sqrt(gamma);
  return SuperOperator::from_kraus({a1, a2}).tagged("amplitude_damping");
}

SuperOperator block_sum(const SuperOperator& s1, const SuperOperator& s2) {
  const int d1 = s1.dim();
  const int d2 = s2.dim();
  const int d = d1 + d2;
  ToleranceConfig tol;
  const std::vector<MatC> k1 = s1.has_kraus() ? s1.kraus() : to_kraus(s1, tol);
  const std::vector<MatC> k2 = s2.has_kraus() ? s2.kraus() : to_kraus(s2, tol);
  std::vector<MatC> kraus;
  for (const auto& a : k1) {
    MatC pad = MatC::Zero(d, d);
    pad.topLeftCorner(d1, d1) = a;
    kraus.push_back(std::move(pad));
  }
  for (const auto& b : k2) {
    MatC pad = MatC::Zero(d, d);
    pad.bottomRightCorner(d2, d2) = b;
    kraus.push_back(std::move(pad));
  }
  return SuperOperator::from_kraus(kraus).tagged("block_sum");
}

MatR wielandt_pattern(int d) {
  if (d < 2) throw Error(Errc::bad_params, "wielandt_pattern: d must be >= 2");
  MatR w = MatR::Zero(d, d);
  for (int j = 0; j + 1 < d; ++j) w(j + 1, j) = 1.0;  // cycle j -> j+1
  w(0, d - 1) = 1.0;                                  // close the cycle
  w(1, d - 1) = 1.0;                                  // one chord
  return w;
}

SuperOperator named(const std::string& name, int d, const NamedParams& params) {
  if (name == "identity") return identity_channel(d);
  if (name == "omega") return omega_channel(d);
  if (name == "depolarizing") return depolarizing(d, params.p);
  if (name == "transpose_depolarizing_d3") {
    if (d != 0 && d != 3) {
      throw Error(Errc::bad_params, "transpose_depolarizing_d3: fixed to d = 3");
    }
    return transpose_depolarizing_d3();
  }
  if (name == "choi_schwarz_m2") {
    if (d != 0 && d != 2) {
      throw Error(Errc::bad_params, "choi_schwarz_m2: fixed to d = 2");
    }
    return choi_schwarz_m2();
  }
  if (name == "unitary") {
    Rng rng(params.seed);
    return unitary_channel(haar_unitary(d, rng));
  }
  if (name == "amplitude_damping") {
    if (d != 0 && d != 2) {
      throw Error(Errc::bad_params, "amplitude_damping: fixed to d = 2");
    }
    return amplitude_damping(params.gamma);
  }
  if (name == "wielandt_embedded") {
    MatR w = wielandt_pattern(d);
    for (int j = 0; j < d; ++j) w.col(j) /= w.col(j).sum();
    return embed_stochastic(w);
  }
  throw Error(Errc::unknown_name, "named: unknown map '" + name + "'");
}

//=========================================================================
// Ensembles
//=========================================================================

Family family_from_string(const std::string& name) {
  if (name == "haar_kraus") return Family::haar_kraus;
  if (name == "mixed_unitary") return Family::mixed_unitary;
  if (name == "doubly_stochastic_embed") return Family::doubly_stochastic_embed;
  if (name == "eb_holevo") return Family::eb_holevo;
  if (name == "ppt_rejection") return Family::ppt_rejection;
  throw Error(Errc::unknown_name, "unknown ensemble family '" + name + "'");
}

const char* family_name(Family f) {
  switch (f) {
    case Family::haar_kraus: return "haar_kraus";
    case Family::mixed_unitary: return "mixed_unitary";
    case Family::doubly_stochastic_embed: return "doubly_stochastic_embed";
    case Family::eb_holevo: return "eb_holevo";
    case Family::ppt_rejection: return "ppt_rejection";
  }
  return "unknown";
}

namespace {

SuperOperator sample_haar_kraus(int d, int n, Rng& rng) {
  // Column partition of a Haar isometry C^d -> C^(n d); trace preserving by
  // construction.
  const MatC g = ginibre(n * d, d, rng);
  Eigen::HouseholderQR<MatC> qr(g);
  const MatC v = qr.householderQ() * MatC::Identity(n * d, d);
  std::vector<MatC> kraus;
  kraus.reserve(n);
  for (int k = 0; k < n; ++k) {
    kraus.push_back(v.middleRows(k * d, d));
  }
  return SuperOperator::from_kraus(kraus).tagged("haar_kraus");
}

SuperOperator sample_mixed_unitary(int d, int n, Rng& rng) {
  const std::vector<double> w = dirichlet_weights(n, rng);
  std::vector<MatC> kraus;
  kraus.reserve(n);
  for (int k = 0; k < n; ++k) {
    kraus.push_back(std::sqrt(w[k]) * haar_unitary(d, rng));
  }
  return SuperOperator::from_kraus(kraus).tagged("mixed_unitary");
}

SuperOperator sample_doubly_stochastic_embed(int d, Rng& rng) {
  MatR w(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) w(i, j) = 0.1 + rng.uniform();
  w = sinkhorn(w);
  // Renormalize columns exactly so the embedding precondition holds.
  for (int j = 0; j < d; ++j) w.col(j) /= w.col(j).sum();
  return embed_stochastic(w);
}

SuperOperator sample_eb_holevo(int d, int n, bool unital, Rng& rng) {
  n = std::max(n, 2);
  for (int attempt = 0; attempt < 200; ++attempt) {
    // POVM from a random PSD resolution of the identity.
    std::vector<MatC> g(n);
    MatC s = MatC::Zero(d, d);
    for (int k = 0; k < n; ++k) {
      const MatC gk = ginibre(d, d, rng);
      g[k] = gk * gk.adjoint();
      s += g[k];
    }
    Eigen::SelfAdjointEigenSolver<MatC> es(s);
    const MatC s_inv_half = es.operatorInverseSqrt();
    std::vector<MatC> povm(n);
    for (int k = 0; k < n; ++k) povm[k] = s_inv_half * g[k] * s_inv_half;

    std::vector<MatC> states(n);
    for (int k = 0; k < n; ++k) states[k] = random_density(d, rng);

    bool ok = true;
    if (unital) {
      // Symmetrize the prepared states toward sum_k tr(F_k) R_k = 1 by
      // repeated congruence with the inverse square root of the defect.
      for (int it = 0; it < 500; ++it) {
        MatC m = MatC::Zero(d, d);
        for (int k = 0; k < n; ++k) {
          m += povm[k].trace() * states[k];
        }
        if ((m - MatC::Identity(d, d)).norm() < 1e-11) break;
        Eigen::SelfAdjointEigenSolver<MatC> me(hermitian_part(m));
        if (me.eigenvalues()(0) <= 1e-12) {
          ok = false;
          break;
        }
        const MatC m_inv_half = me.operatorInverseSqrt();
        for (int k = 0; k < n; ++k) {
          MatC r = m_inv_half * states[k] * m_inv_half;
          states[k] = r / r.trace().real();
        }
        if (it == 499) ok = false;
      }
      if (ok) {
        MatC m = MatC::Zero(d, d);
        for (int k = 0; k < n; ++k) m += povm[k].trace() * states[k];
        ok = (m - MatC::Identity(d, d)).norm() < 1e-9;
      }
    }
    if (!ok) continue;

    SuperOperator s_out = SuperOperator::from_action(d, [&](const MatC& x) {
      MatC out = MatC::Zero(d, d);
      for (int k = 0; k < n; ++k) {
        out += (povm[k] * x).trace() * states[k];
      }
      return out;
    });
    return s_out.tagged("holevo_eb");
  }
  throw Error(Errc::rejection_cap_exceeded,
              "eb_holevo: unitality symmetrization did not converge");
}

SuperOperator sample_ppt_rejection(int d, Rng& rng) {
  ToleranceConfig tol;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const MatC g = ginibre(d * d, d * d, rng);
    const MatC w = g * g.adjoint();
    const MatC rho = partial_trace(w, d, d, 2);
    Eigen::SelfAdjointEigenSolver<MatC> es(hermitian_part(rho));
    if (es.eigenvalues()(0) <= 1e-10) continue;
    const MatC x = es.operatorInverseSqrt();
    const MatC choi = kron(x, MatC::Identity(d, d)) * w *
                      kron(x, MatC::Identity(d, d)).adjoint();
    const MatC pt = partial_transpose(choi, d, d, 1);
    Eigen::SelfAdjointEigenSolver<MatC> pt_eig(hermitian_part(pt));
    if (pt_eig.eigenvalues()(0) < -tol.psd_tol * choi.norm()) continue;
    return SuperOperator::from_choi(choi).tagged("ppt_rejection");
  }
  throw Error(Errc::rejection_cap_exceeded,
              "ppt_rejection: no PPT Choi matrix within the retry budget");
}

}  // namespace

std::vector<SuperOperator> sample(const EnsembleSpec& spec) {
  if (spec.count < 1) {
    throw Error(Errc::bad_params, "sample: count must be >= 1");
  }
  if (spec.d < 2) {
    throw Error(Errc::bad_params, "sample: d must be >= 2");
  }
  Rng rng(spec.seed);
  std::vector<SuperOperator> out;
  out.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    switch (spec.family) {
      case Family::haar_kraus:
        out.push_back(sample_haar_kraus(spec.d, std::max(spec.n_kraus, 1), rng));
        break;
      case Family::mixed_unitary:
        out.push_back(
            sample_mixed_unitary(spec.d, std::max(spec.n_kraus, 2), rng));
        break;
      case Family::doubly_stochastic_embed:
        out.push_back(sample_doubly_stochastic_embed(spec.d, rng));
        break;
      case Family::eb_holevo:
        out.push_back(sample_eb_holevo(spec.d, spec.n_kraus, spec.unital, rng));
        break;
      case Family::ppt_rejection:
        out.push_back(sample_ppt_rejection(spec.d, rng));
        break;
    }
  }
  return out;
}

}  // namespace zoo
}  // namespace qwl
