#include "qwielandt/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qwielandt/multdomain.hpp"
#include "qwielandt/spectral.hpp"
#include "qwielandt/zoo.hpp"

namespace qwl {

const char* zero_error_branch_name(ZeroErrorBranch b) {
  return b == ZeroErrorBranch::PrimitiveBranch ? "PrimitiveBranch"
                                               : "NonPrimitiveBranch";
}

//=========================================================================
// Contraction coefficient
//=========================================================================

namespace {

// Orthogonal pure pair from 4d real parameters: the second vector is
// Gram-Schmidt orthogonalized against the first.
struct PurePair {
  VecC psi;
  VecC phi;
};

PurePair params_to_pair(const VecR& x, int d) {
  PurePair pair;
  pair.psi = VecC(d);
  VecC raw(d);
  for (int i = 0; i < d; ++i) {
    pair.psi(i) = Complex(x(i), x(d + i));
    raw(i) = Complex(x(2 * d + i), x(3 * d + i));
  }
  double n = pair.psi.norm();
  if (n < 1e-12) {
    pair.psi.setZero();
    pair.psi(0) = 1.0;
  } else {
    pair.psi /= n;
  }
  raw -= (pair.psi.adjoint() * raw)(0) * pair.psi;
  n = raw.norm();
  if (n < 1e-9) {
    // Degenerate second vector; pick the canonical direction least aligned
    // with psi and orthogonalize that instead.
    int j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
      const double a = std::abs(pair.psi(i));
      if (a < best) {
        best = a;
        j = i;
      }
    }
    raw.setZero();
    raw(j) = 1.0;
    raw -= (pair.psi.adjoint() * raw)(0) * pair.psi;
    n = raw.norm();
  }
  pair.phi = raw / n;
  return pair;
}

double pair_ratio(const SuperOperator& s, const PurePair& pair) {
  const MatC delta =
      pair.psi * pair.psi.adjoint() - pair.phi * pair.phi.adjoint();
  return 0.5 * trace_norm(s.apply(delta));
}

// Plain Nelder-Mead maximizer over the pure-pair parameterization.
double maximize_pair_ratio(const SuperOperator& s, int starts, int max_iters,
                           uint64_t seed) {
  const int d = s.dim();
  const int n = 4 * d;
  auto objective = [&](const VecR& x) {
    return -pair_ratio(s, params_to_pair(x, d));
  };

  std::vector<VecR> start_points;
  for (int i = 0; i < d && static_cast<int>(start_points.size()) < starts; ++i) {
    for (int j = i + 1; j < d && static_cast<int>(start_points.size()) < starts;
         ++j) {
      VecR x = VecR::Zero(n);
      x(i) = 1.0;
      x(2 * d + j) = 1.0;
      start_points.push_back(x);
    }
  }
  Rng rng(seed);
  while (static_cast<int>(start_points.size()) < std::max(starts, 1)) {
    VecR x(n);
    for (int i = 0; i < n; ++i) x(i) = rng.gaussian();
    start_points.push_back(x);
  }

  double best = 0.0;
  for (const VecR& x0 : start_points) {
    std::vector<VecR> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (int i = 1; i <= n; ++i) xs[i](i - 1) += 0.35;
    for (int i = 0; i <= n; ++i) fs[i] = objective(xs[i]);
    std::vector<int> order(n + 1);
    auto sort_order = [&] {
      for (int i = 0; i <= n; ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return fs[a] < fs[b]; });
    };
    for (int iter = 0; iter < max_iters; ++iter) {
      sort_order();
      const int worst = order[n], second = order[n - 1];
      if (std::abs(fs[worst] - fs[order[0]]) <
          1e-13 * (1.0 + std::abs(fs[order[0]]))) {
        break;
      }
      VecR centroid = VecR::Zero(n);
      for (int i = 0; i <= n; ++i) {
        if (i != worst) centroid += xs[i];
      }
      centroid /= n;
      const VecR reflected = centroid + (centroid - xs[worst]);
      const double fr = objective(reflected);
      if (fr < fs[order[0]]) {
        const VecR expanded = centroid + 2.0 * (centroid - xs[worst]);
        const double fe = objective(expanded);
        if (fe < fr) {
          xs[worst] = expanded;
          fs[worst] = fe;
        } else {
          xs[worst] = reflected;
          fs[worst] = fr;
        }
      } else if (fr < fs[second]) {
        xs[worst] = reflected;
        fs[worst] = fr;
      } else {
        const VecR contracted = centroid + 0.5 * (xs[worst] - centroid);
        const double fc = objective(contracted);
        if (fc < fs[worst]) {
          xs[worst] = contracted;
          fs[worst] = fc;
        } else {
          for (int i = 0; i <= n; ++i) {
            if (i == order[0]) continue;
            xs[i] = xs[order[0]] + 0.5 * (xs[i] - xs[order[0]]);
            fs[i] = objective(xs[i]);
          }
        }
      }
    }
    sort_order();
    best = std::max(best, -fs[order[0]]);
  }
  return best;
}

}  // namespace

ContractionReport contraction_coefficient(const SuperOperator& s,
                                          const ToleranceConfig& tol,
                                          const ContractionOptions& opt) {
  const int d = s.dim();
  const Hypotheses hyp = cheap_hypotheses(s, tol);
  if (!hyp.trace_preserving) {
    throw Error(Errc::not_trace_preserving,
                "contraction_coefficient: map is not trace preserving");
  }

  ContractionReport rep;
  rep.c_lower = maximize_pair_ratio(s, opt.starts, opt.max_iters, opt.seed);

  // delta_star: largest delta with (1+delta) Phi - delta Omega still
  // positive, probed by the sampled rank-one falsifier.
  const SuperOperator omega = zoo::omega_channel(d);
  MultistartOptions probe;
  probe.starts = opt.probe_starts;
  probe.max_iters = opt.probe_iters;
  probe.seed = splitmix64(opt.seed ^ 0xDE17A5ULL);
  auto positive_at = [&](double delta) {
    const SuperOperator psi = scale_add(1.0 + delta, s, -delta, omega);
    const SphereMinResult r =
        minimize_min_output_eig(psi, probe, -2.0 * tol.psd_tol);
    return r.min_value >= -tol.psd_tol;
  };

  if (positive_at(opt.delta_cap)) {
    rep.delta_star = opt.delta_cap;
    rep.delta_capped = true;
  } else {
    double lo = 0.0;
    double hi = opt.delta_cap;
    for (int step = 0; step < opt.bisect_steps; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (positive_at(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    rep.delta_star = lo;
  }
  rep.c_upper_from_delta = 1.0 / (1.0 + rep.delta_star);
  rep.strictly_contractive =
      rep.c_lower < 1.0 - 1e-6 && rep.delta_star > 0.0;
  return rep;
}

//=========================================================================
// Powers at the primitivity and word indices
//=========================================================================

namespace {

// Upper bracket of the primitivity index alone (no bound bookkeeping).
std::optional<int> bracket_omega_upper(const SuperOperator& s, int cap,
                                       const ToleranceConfig& tol,
                                       const MultistartOptions& opt) {
  for (int k = 1; k <= cap; ++k) {
    const StrictPositivityResult r =
        strict_positivity_core(power(s, k), tol, opt);
    if (r.verdict != PositivityVerdict::CertifiedSingular) return k;
  }
  return std::nullopt;
}

}  // namespace

PowerContraction contractivity_of_power(const SuperOperator& s,
                                        const ToleranceConfig& tol,
                                        const ContractionOptions& opt) {
  const int d = s.dim();
  const SpectralReport spectral = analyze_spectrum(s, tol);
  if (spectral.primitive.verdict == Verdict::Falsified) {
    throw Error(Errc::not_primitive,
                "contractivity_of_power: map is not primitive");
  }
  MultistartOptions pos_opt;
  pos_opt.seed = splitmix64(opt.seed ^ 0x0311ULL);
  const int cap = 2 * (d - 1) * (d - 1) + 2;
  const auto omega_upper = bracket_omega_upper(s, cap, tol, pos_opt);
  if (!omega_upper) {
    throw Error(Errc::cap_exceeded,
                "contractivity_of_power: no strictly positive power by cap");
  }

  PowerContraction out;
  out.omega_power = *omega_upper;
  out.at_omega = contraction_coefficient(power(s, *omega_upper), tol, opt);

  const Hypotheses hyp = cheap_hypotheses(s, tol);
  std::vector<MatC> kraus;
  if (s.has_kraus()) {
    kraus = s.kraus();
  } else if (hyp.cp) {
    kraus = to_kraus(s, tol);
  }
  if (!kraus.empty()) {
    const int word_cap = (d * d) * (d * d) + 1;
    try {
      const int i = word_span_index(kraus, word_cap);
      out.i_power = i;
      out.at_i = contraction_coefficient(power(s, i), tol, opt);
    } catch (const Error&) {
      // no word certificate; omega-power report stands alone
    }
  }
  return out;
}

//=========================================================================
// Zero-error dichotomy
//=========================================================================

ZeroErrorCertificate zero_error_dichotomy(const SuperOperator& s,
                                          const ToleranceConfig& tol,
                                          const MultistartOptions& opt) {
  const int d = s.dim();
  const Hypotheses hyp = cheap_hypotheses(s, tol);
  if (!hyp.unital || !hyp.trace_preserving || !hyp.cp) {
    throw Error(Errc::bad_params,
                "zero_error_dichotomy: requires a unital CP channel");
  }
  std::vector<MatC> kraus = s.has_kraus() ? s.kraus() : to_kraus(s, tol);
  if (kraus.empty()) {
    throw Error(Errc::bad_params, "zero_error_dichotomy: no Kraus operators");
  }

  const SpectralReport spectral = analyze_spectrum(s, tol);
  ZeroErrorCertificate cert;

  if (spectral.primitive.verdict == Verdict::Certified) {
    cert.branch = ZeroErrorBranch::PrimitiveBranch;
    const int cap = 2 * (d - 1) * (d - 1) + 2;
    const auto omega_upper = bracket_omega_upper(s, cap, tol, opt);
    if (!omega_upper) {
      throw Error(Errc::inconclusive_span,
                  "zero_error_dichotomy: primitive map without a strictly "
                  "positive power by cap");
    }
    // Span of {a'_w a_v} over length-omega word pairs. The words of length
    // omega span the same space as any Kraus set of S^omega, so products of
    // a basis of that space suffice.
    const std::vector<MatC> words = to_kraus(power(s, *omega_upper), tol);
    const std::vector<MatC> basis = hs_orthonormalize(words);
    std::vector<MatC> products;
    products.reserve(basis.size() * basis.size());
    for (const auto& b : basis)
      for (const auto& c : basis) products.push_back(b.adjoint() * c);
    const int span_dim =
        static_cast<int>(hs_orthonormalize(products, tol.rank_rel_tol).size());
    cert.span_dim = span_dim;
    if (span_dim != d * d) {
      throw Error(Errc::inconclusive_span,
                  "zero_error_dichotomy: word-pair span dimension " +
                      std::to_string(span_dim) + " < d^2 at omega (finding)");
    }
    return cert;
  }

  // Non-primitive branch: exhibit a projection in the stabilized algebra and
  // verify exact recovery by the adjoint powers.
  cert.branch = ZeroErrorBranch::NonPrimitiveBranch;
  const ChainReport chain = mult_chain(s, tol);
  if (chain.trivial) {
    throw Error(Errc::inconclusive_span,
                "zero_error_dichotomy: stabilized algebra is trivial but "
                "primitivity was not certified (finding)");
  }
  std::optional<MatC> projection;
  for (const auto& b : chain.stabilized.basis) {
    for (const MatC cand :
         {hermitian_part(b),
          MatC(hermitian_part(Complex(0, 1) * (b - b.adjoint())))}) {
      const MatC centered =
          cand - (cand.trace() / double(d)) * MatC::Identity(d, d);
      if (centered.norm() < tol.subspace_tol) continue;
      const HermEig eig = herm_eig(hermitian_part(cand));
      const double mid = 0.5 * (eig.eigenvalues(0) + eig.eigenvalues(d - 1));
      MatC proj = MatC::Zero(d, d);
      int rank = 0;
      for (int i = 0; i < d; ++i) {
        if (eig.eigenvalues(i) > mid) {
          proj += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
          ++rank;
        }
      }
      if (rank > 0 && rank < d) {
        projection = proj;
        break;
      }
    }
    if (projection) break;
  }
  if (!projection) {
    throw Error(Errc::inconclusive_span,
                "zero_error_dichotomy: no nontrivial projection found in the "
                "stabilized algebra");
  }
  cert.projection = projection;
  const MatC& t = s.transfer();
  MatC tn = MatC::Identity(d * d, d * d);
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    tn = tn * t;
    const MatC recovered = unvec(tn.adjoint() * (tn * vec(*projection)), d, d);
    worst = std::max(worst, (recovered - *projection).norm());
    cert.recovery_checked_n.push_back(n);
  }
  cert.max_recovery_residual = worst;
  return cert;
}

}  // namespace qwl
