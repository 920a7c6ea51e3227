#include "qwielandt/primitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "qwielandt/multdomain.hpp"
#include "qwielandt/spectral.hpp"

namespace qwl {

const char* positivity_verdict_name(PositivityVerdict v) {
  switch (v) {
    case PositivityVerdict::CertifiedSingular: return "CertifiedSingular";
    case PositivityVerdict::CertifiedPositive: return "CertifiedPositive";
    case PositivityVerdict::NumericallyPositive: return "NumericallyPositive";
  }
  return "NumericallyPositive";
}

const char* certificate_source_name(CertificateSource s) {
  switch (s) {
    case CertificateSource::word_span_full: return "word_span_full";
    case CertificateSource::analytic: return "analytic";
    case CertificateSource::multistart: return "multistart";
  }
  return "multistart";
}

//=========================================================================
// Sphere minimization of psi -> lambda_min(S(psi psi*))
//=========================================================================

namespace {

struct EigPair {
  double lmin;
  double lmax;
};

EigPair output_extremes(const SuperOperator& s, const VecC& psi) {
  const MatC out = hermitian_part(s.apply(MatC(psi * psi.adjoint())));
  Eigen::SelfAdjointEigenSolver<MatC> es(out);
  const auto& ev = es.eigenvalues();
  return {ev(0), std::abs(ev(ev.size() - 1))};
}

VecC params_to_state(const VecR& x, int d) {
  VecC psi(d);
  for (int i = 0; i < d; ++i) psi(i) = Complex(x(i), x(d + i));
  const double n = psi.norm();
  if (n < 1e-12) {
    psi.setZero();
    psi(0) = 1.0;
    return psi;
  }
  return psi / n;
}

VecR state_to_params(const VecC& psi) {
  const int d = static_cast<int>(psi.size());
  VecR x(2 * d);
  for (int i = 0; i < d; ++i) {
    x(i) = psi(i).real();
    x(d + i) = psi(i).imag();
  }
  return x;
}

struct NmResult {
  double value;
  VecR point;
  long evals;
};

// Plain Nelder-Mead; the objective is scale invariant along rays, so the
// unconstrained parameterization of the sphere is safe.
template <typename F>
NmResult nelder_mead(F&& f, const VecR& start, int max_iters,
                     std::optional<double> stop_below) {
  const int n = static_cast<int>(start.size());
  std::vector<VecR> xs(n + 1, start);
  std::vector<double> fs(n + 1);
  long evals = 0;
  for (int i = 1; i <= n; ++i) xs[i](i - 1) += 0.35;
  for (int i = 0; i <= n; ++i) {
    fs[i] = f(xs[i]);
    ++evals;
  }
  std::vector<int> order(n + 1);
  auto sort_order = [&] {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fs[a] < fs[b]; });
  };

  for (int iter = 0; iter < max_iters; ++iter) {
    sort_order();
    const int best = order[0], worst = order[n], second = order[n - 1];
    if (stop_below && fs[best] < *stop_below) break;
    if (std::abs(fs[worst] - fs[best]) <
        1e-14 * (1.0 + std::abs(fs[best]))) {
      break;
    }
    VecR centroid = VecR::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += xs[i];
    }
    centroid /= n;

    const VecR reflected = centroid + (centroid - xs[worst]);
    const double fr = f(reflected);
    ++evals;
    if (fr < fs[order[0]]) {
      const VecR expanded = centroid + 2.0 * (centroid - xs[worst]);
      const double fe = f(expanded);
      ++evals;
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
      const double fc = f(contracted);
      ++evals;
      if (fc < fs[worst]) {
        xs[worst] = contracted;
        fs[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == order[0]) continue;
          xs[i] = xs[order[0]] + 0.5 * (xs[i] - xs[order[0]]);
          fs[i] = f(xs[i]);
          ++evals;
        }
      }
    }
  }
  sort_order();
  return {fs[order[0]], xs[order[0]], evals};
}

std::vector<VecC> start_states(const SuperOperator& s,
                               const MultistartOptions& opt) {
  const int d = s.dim();
  std::vector<VecC> starts;
  for (int j = 0; j < d; ++j) {
    VecC e = VecC::Zero(d);
    e(j) = 1.0;
    starts.push_back(e);
  }
  starts.push_back(VecC::Constant(d, Complex(1.0, 0.0) / std::sqrt(double(d))));
  Rng rng(opt.seed);
  while (static_cast<int>(starts.size()) < std::max(opt.starts, d + 1)) {
    VecC psi(d);
    for (int i = 0; i < d; ++i) psi(i) = rng.cgaussian();
    const double n = psi.norm();
    if (n < 1e-9) continue;
    starts.push_back(psi / n);
  }
  return starts;
}

}  // namespace

SphereMinResult minimize_min_output_eig(const SuperOperator& s,
                                        const MultistartOptions& opt,
                                        std::optional<double> stop_below) {
  const int d = s.dim();
  const auto starts = start_states(s, opt);
  auto objective = [&](const VecR& x) {
    return output_extremes(s, params_to_state(x, d)).lmin;
  };

  SphereMinResult best;
  best.min_value = std::numeric_limits<double>::infinity();

  // Scan pass: every start gets evaluated before any refinement so cheap
  // witnesses (canonical directions in particular) short-circuit the search.
  for (size_t i = 0; i < starts.size(); ++i) {
    const double v = output_extremes(s, starts[i]).lmin;
    ++best.evaluations;
    if (v < best.min_value) {
      best.min_value = v;
      best.argmin = starts[i];
      best.best_start = static_cast<int>(i);
    }
    if (stop_below && best.min_value < *stop_below) return best;
  }

  for (size_t i = 0; i < starts.size(); ++i) {
    const NmResult r = nelder_mead(objective, state_to_params(starts[i]),
                                   opt.max_iters, stop_below);
    best.evaluations += r.evals;
    if (r.value < best.min_value) {
      best.min_value = r.value;
      best.argmin = params_to_state(r.point, d);
      best.best_start = static_cast<int>(i);
    }
    if (stop_below && best.min_value < *stop_below) return best;
  }
  return best;
}

//=========================================================================
// Strict positivity
//=========================================================================

namespace {

int kraus_span_dim(const std::vector<MatC>& kraus, double rel_tol) {
  if (kraus.empty()) return 0;
  const auto d = kraus[0].rows();
  MatC stacked(d * d, static_cast<Eigen::Index>(kraus.size()));
  for (size_t i = 0; i < kraus.size(); ++i) {
    stacked.col(static_cast<Eigen::Index>(i)) = vec(kraus[i]);
  }
  return svd_rank(stacked, rel_tol);
}

bool relative_singular(const EigPair& e, double rank_rel_tol) {
  return e.lmin <= rank_rel_tol * std::max(e.lmax, 0.0);
}

}  // namespace

StrictPositivityResult strict_positivity_core(const SuperOperator& s,
                                              const ToleranceConfig& tol,
                                              const MultistartOptions& opt) {
  const int d = s.dim();
  StrictPositivityResult out;

  // Outputs of trace-one inputs have lambda_max >= tr/d, so this absolute
  // floor implies the relative singularity test for trace-preserving maps.
  const double stop_floor = tol.rank_rel_tol / d;

  const auto starts = start_states(s, opt);
  double scan_best = std::numeric_limits<double>::infinity();
  VecC scan_arg;
  for (const auto& psi : starts) {
    const EigPair e = output_extremes(s, psi);
    if (e.lmin < scan_best) {
      scan_best = e.lmin;
      scan_arg = psi;
    }
    if (relative_singular(e, tol.rank_rel_tol)) {
      out.verdict = PositivityVerdict::CertifiedSingular;
      out.witness = psi;
      out.min_eig_found = e.lmin;
      out.source = CertificateSource::multistart;
      return out;
    }
  }

  // Positive certificates that do not require search.
  const double choi_scale = std::max(s.choi().norm(), 1e-300);
  Eigen::SelfAdjointEigenSolver<MatC> choi_eig(hermitian_part(s.choi()));
  const bool cp = choi_eig.eigenvalues()(0) >= -tol.psd_tol * choi_scale;
  if (cp) {
    std::vector<MatC> kraus =
        s.has_kraus() ? s.kraus() : to_kraus(s, tol);
    if (kraus_span_dim(kraus, tol.rank_rel_tol) == d * d) {
      out.verdict = PositivityVerdict::CertifiedPositive;
      out.source = CertificateSource::word_span_full;
      out.min_eig_found = scan_best;
      return out;
    }
  }
  if (s.construction() == "omega") {
    out.verdict = PositivityVerdict::CertifiedPositive;
    out.source = CertificateSource::analytic;
    out.min_eig_found = 1.0 / d;
    return out;
  }

  // Full multistart refinement.
  const SphereMinResult r = minimize_min_output_eig(s, opt, stop_floor);
  const VecC witness = r.argmin.size() > 0 ? r.argmin : scan_arg;
  const EigPair e = output_extremes(s, witness);
  out.min_eig_found = e.lmin;
  if (relative_singular(e, tol.rank_rel_tol)) {
    out.verdict = PositivityVerdict::CertifiedSingular;
    out.witness = witness;
    out.source = CertificateSource::multistart;
    return out;
  }
  out.verdict = PositivityVerdict::NumericallyPositive;
  out.source = CertificateSource::multistart;
  return out;
}

StrictPositivityResult strict_positivity(const SuperOperator& s,
                                         const ToleranceConfig& tol,
                                         const MultistartOptions& opt) {
  const MapPredicates preds = predicates(s, tol, 512, opt.seed);
  if (preds.positive_sampled.verdict == Verdict::Falsified) {
    throw Error(Errc::not_positive,
                "strict_positivity: positivity sampler falsified the map");
  }
  return strict_positivity_core(s, tol, opt);
}

//=========================================================================
// Word span index
//=========================================================================

int word_span_index(const std::vector<MatC>& kraus, int cap) {
  if (kraus.empty()) {
    throw Error(Errc::bad_params, "word_span_index: empty Kraus list");
  }
  const int d = static_cast<int>(kraus[0].rows());
  const int full = d * d;

  std::vector<MatC> span = hs_orthonormalize(kraus);
  OperatorSubspace prev = subspace_from_span(d, span);
  for (int k = 1; k <= cap; ++k) {
    if (static_cast<int>(span.size()) == full) return k;
    std::vector<MatC> next_raw;
    next_raw.reserve(kraus.size() * span.size());
    for (const auto& a : kraus) {
      for (const auto& b : span) next_raw.push_back(a * b);
    }
    std::vector<MatC> next = hs_orthonormalize(next_raw);
    OperatorSubspace cur = subspace_from_span(d, next);
    if (k > 1 && cur.dim() == prev.dim() &&
        subspace_distance(cur, prev) < 1e-9) {
      // The span reproduces itself; it will never grow.
      throw Error(Errc::cap_exceeded,
                  "word_span_index: span stuck at dimension " +
                      std::to_string(cur.dim()));
    }
    prev = cur;
    span = std::move(next);
  }
  throw Error(Errc::cap_exceeded,
              "word_span_index: no full span within cap " + std::to_string(cap));
}

//=========================================================================
// Classical Wielandt index
//=========================================================================

ClassicalWielandtResult classical_wielandt(const MatR& w) {
  const int d = static_cast<int>(w.rows());
  if (w.cols() != d || d == 0) {
    throw Error(Errc::shape_mismatch, "classical_wielandt: matrix not square");
  }
  using BoolMat = std::vector<uint8_t>;
  auto at = [d](BoolMat& m, int i, int j) -> uint8_t& { return m[i * d + j]; };
  BoolMat base(d * d, 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) at(base, i, j) = w(i, j) > 0.0 ? 1 : 0;

  auto all_ones = [&](const BoolMat& m) {
    for (uint8_t v : m) {
      if (!v) return false;
    }
    return true;
  };
  auto bool_mult = [&](const BoolMat& a, const BoolMat& b) {
    BoolMat out(d * d, 0);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        if (!a[i * d + k]) continue;
        for (int j = 0; j < d; ++j) {
          if (b[k * d + j]) out[i * d + j] = 1;
        }
      }
    return out;
  };

  const int cap = d * d - 2 * d + 2 + 1;
  BoolMat cur = base;
  for (int k = 1; k <= cap; ++k) {
    if (all_ones(cur)) return {true, k};
    cur = bool_mult(cur, base);
  }
  return {false, std::nullopt};
}

SuperOperator embed_stochastic(const MatR& w) {
  const int d = static_cast<int>(w.rows());
  if (w.cols() != d || d == 0) {
    throw Error(Errc::not_stochastic, "embed_stochastic: matrix not square");
  }
  for (int j = 0; j < d; ++j) {
    double col = 0.0;
    for (int i = 0; i < d; ++i) {
      if (w(i, j) < -1e-12) {
        throw Error(Errc::not_stochastic,
                    "embed_stochastic: negative entry");
      }
      col += w(i, j);
    }
    if (std::abs(col - 1.0) > 1e-9) {
      throw Error(Errc::not_stochastic,
                  "embed_stochastic: column " + std::to_string(j) +
                      " sums to " + std::to_string(col));
    }
  }
  std::vector<MatC> kraus;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (w(i, j) > 0.0) {
        MatC a = MatC::Zero(d, d);
        a(i, j) = std::sqrt(w(i, j));
        kraus.push_back(std::move(a));
      }
    }
  return SuperOperator::from_kraus(kraus).tagged("stochastic_embed");
}

//=========================================================================
// Index report
//=========================================================================

const BoundRow* IndexReport::bound(const std::string& name) const {
  for (const auto& row : bounds) {
    if (row.name == name) return &row;
  }
  return nullptr;
}

namespace {

Verdict to_verdict(bool certified) {
  return certified ? Verdict::Certified : Verdict::Falsified;
}

void push_bound(IndexReport& rep, const std::string& name, long claimed,
                std::optional<int> observed, bool applicable) {
  BoundRow row;
  row.name = name;
  row.claimed = claimed;
  row.applicable = applicable;
  if (observed) {
    row.observed = *observed;
    row.satisfied = applicable && *observed <= claimed;
  } else {
    row.observed = -1;  // upper bracket not found by cap
    row.satisfied = false;
  }
  rep.bounds.push_back(std::move(row));
}

}  // namespace

IndexReport omega_index(const SuperOperator& s, int cap,
                        const ToleranceConfig& tol,
                        const MultistartOptions& opt) {
  const int d = s.dim();
  IndexReport rep;
  rep.d = d;

  const SpectralReport spectral = analyze_spectrum(s, tol);
  if (spectral.primitive.verdict == Verdict::Falsified) {
    throw Error(Errc::not_primitive,
                "omega_index: spectral analysis falsified primitivity");
  }

  const Hypotheses hyp = cheap_hypotheses(s, tol);
  rep.hypotheses.trace_preserving = to_verdict(hyp.trace_preserving);
  rep.hypotheses.unital = to_verdict(hyp.unital);
  rep.hypotheses.cp = to_verdict(hyp.cp);
  rep.hypotheses.ppt = to_verdict(hyp.ppt);
  rep.hypotheses.eb = entanglement_breaking_check(s, tol).verdict;
  rep.hypotheses.schwarz = hyp.schwarz_certified ? Verdict::Certified
                           : hyp.schwarz_falsified ? Verdict::Falsified
                                                   : Verdict::Unfalsified;
  rep.hypotheses.primitive = spectral.primitive.verdict;

  // Kraus-derived quantities.
  std::vector<MatC> kraus;
  if (s.has_kraus()) {
    kraus = s.kraus();
  } else if (hyp.cp) {
    kraus = to_kraus(s, tol);
  }
  if (!kraus.empty()) {
    rep.n_kraus = kraus_span_dim(kraus, tol.rank_rel_tol);
  }

  const bool schwarz_hypothesis = hyp.trace_preserving && !hyp.schwarz_falsified;
  long quantum_cap = 0;
  if (rep.n_kraus) {
    quantum_cap =
        (static_cast<long>(d) * d - *rep.n_kraus + 1) * d * d + 1;
  }
  if (cap <= 0) {
    if (schwarz_hypothesis) {
      cap = 2 * (d - 1) * (d - 1) + 2;
    } else if (quantum_cap > 0) {
      cap = static_cast<int>(quantum_cap);
    } else {
      cap = d * d * d * d + 1;
    }
  }

  // Bracket the index. Once a power is strictly positive all larger powers
  // are (trace preservation keeps iterates nonzero), so the first positive
  // power closes the bracket.
  for (int k = 1; k <= cap; ++k) {
    const StrictPositivityResult r =
        strict_positivity_core(power(s, k), tol, opt);
    if (r.verdict == PositivityVerdict::CertifiedSingular) {
      rep.omega_lower = k + 1;
      continue;
    }
    rep.omega_upper = k;
    rep.omega_upper_source = r.source;
    break;
  }
  if (!rep.omega_upper) {
    rep.diagnostics += "cap " + std::to_string(cap) +
                       " exceeded without a positive power; ";
  } else if (*rep.omega_upper + 1 <= cap) {
    // Monotonicity spot check at the next power (scan pass only).
    MultistartOptions quick = opt;
    quick.max_iters = 0;
    const StrictPositivityResult r =
        strict_positivity_core(power(s, *rep.omega_upper + 1), tol, quick);
    if (r.verdict == PositivityVerdict::CertifiedSingular) {
      rep.diagnostics +=
          "monotonicity violation: singular witness at k = " +
          std::to_string(*rep.omega_upper + 1) + "; ";
    }
  }

  // kappa via the multiplicative chain (Schwarz-hypothesis maps only).
  if (schwarz_hypothesis) {
    try {
      rep.kappa = mult_chain(s, tol).kappa;
    } catch (const Error& e) {
      rep.diagnostics += std::string("kappa unavailable: ") + e.what() + "; ";
    }
  }

  // Kraus word index.
  if (!kraus.empty() && quantum_cap > 0) {
    try {
      rep.i_index = word_span_index(kraus, static_cast<int>(quantum_cap));
    } catch (const Error&) {
      rep.diagnostics += "word span never filled (consistent with non-primitivity); ";
    }
  }
  if (rep.i_index && rep.omega_upper && *rep.omega_upper > *rep.i_index) {
    rep.diagnostics += "omega_upper exceeds i_index; ";
  }

  // Bound rows.
  push_bound(rep, "classical", static_cast<long>(d) * d - 2 * d + 2,
             rep.omega_upper,
             s.construction() == "stochastic_embed");
  push_bound(rep, "quantum",
             rep.n_kraus ? (static_cast<long>(d) * d - *rep.n_kraus + 1) * d * d
                         : 0,
             rep.i_index,
             rep.n_kraus.has_value() && rep.i_index.has_value() &&
                 spectral.primitive.verdict == Verdict::Certified);
  push_bound(rep, "main",
             rep.kappa ? static_cast<long>(*rep.kappa) * (d - 1) : 0,
             rep.omega_upper, schwarz_hypothesis && rep.kappa.has_value());
  push_bound(rep, "corollary", 2L * (d - 1) * (d - 1), rep.omega_upper,
             schwarz_hypothesis);
  push_bound(rep, "ppt_eb", static_cast<long>(d) * (d - 1), rep.omega_upper,
             hyp.unital && (rep.hypotheses.ppt == Verdict::Certified ||
                            rep.hypotheses.eb == Verdict::Certified));
  return rep;
}

IndexReport verify_bounds(const SuperOperator& s, const ToleranceConfig& tol,
                          const MultistartOptions& opt) {
  IndexReport rep = omega_index(s, 0, tol, opt);
  const int d = rep.d;

  // PPT/EB extras: the multiplicative domain must be abelian and the chain
  // cannot be longer than d.
  if (const BoundRow* row = rep.bound("ppt_eb"); row && row->applicable) {
    const OperatorSubspace dom = mult_domain(s, tol).domain;
    double worst_comm = 0.0;
    for (const auto& a : dom.basis) {
      for (const auto& b : dom.basis) {
        worst_comm = std::max(worst_comm, (a * b - b * a).norm());
      }
    }
    if (worst_comm >= tol.subspace_tol) {
      rep.diagnostics += "ppt_eb: multiplicative domain not abelian (residual " +
                         std::to_string(worst_comm) + "); ";
    }
    if (rep.kappa && *rep.kappa > d) {
      rep.diagnostics += "ppt_eb: kappa exceeds d; ";
    }
  }

  // Adjoint corollary: recompute the index of the adjoint map when it is
  // trace preserving (i.e. the map is unital).
  const Hypotheses hyp = cheap_hypotheses(s, tol);
  bool adjoint_applicable = false;
  std::optional<int> adjoint_omega;
  if (hyp.unital && hyp.trace_preserving) {
    const SuperOperator adj = adjoint(s);
    const Hypotheses adj_hyp = cheap_hypotheses(adj, tol);
    if (adj_hyp.trace_preserving && !adj_hyp.schwarz_falsified) {
      try {
        adjoint_omega = omega_index(adj, 0, tol, opt).omega_upper;
        adjoint_applicable = true;
      } catch (const Error&) {
        adjoint_applicable = false;
      }
    }
  }
  push_bound(rep, "adjoint", 2L * (d - 1) * (d - 1), adjoint_omega,
             adjoint_applicable);
  return rep;
}

}  // namespace qwl
