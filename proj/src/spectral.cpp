#include "qwielandt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "qwielandt/primitivity.hpp"

namespace qwl {

namespace {

// Phase-fix and Hermitize the eigenvector at a real eigenvalue, then
// normalize to unit trace when the trace is usable.
MatC clean_fixed_point(const VecC& v, int d) {
  MatC x = unvec(v, d, d);
  const Complex tr = x.trace();
  if (std::abs(tr) > 1e-9 * x.norm()) {
    x *= std::conj(tr) / std::abs(tr);  // rotate trace onto the real axis
  }
  x = hermitian_part(x);
  const double rtr = x.trace().real();
  if (std::abs(rtr) > 1e-9 * std::max(x.norm(), 1e-300)) {
    x /= rtr;
  } else if (x.norm() > 0) {
    x /= x.norm();
  }
  return x;
}

}  // namespace

SpectralReport analyze_spectrum(const SuperOperator& s,
                                const ToleranceConfig& tol) {
  const int d = s.dim();
  SpectralReport rep;

  Eigen::ComplexEigenSolver<MatC> solver(s.transfer());
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::bad_input, "analyze_spectrum: eigensolver failed");
  }
  const VecC raw = solver.eigenvalues();

  rep.eigenvalues.assign(raw.data(), raw.data() + raw.size());
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](const Complex& a, const Complex& b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });

  double radius = 0.0;
  for (const auto& z : rep.eigenvalues) radius = std::max(radius, std::abs(z));
  rep.spectral_radius = radius;

  double mu = 0.0;
  for (const auto& z : rep.eigenvalues) {
    const double m = std::abs(z);
    if (m >= radius - tol.peripheral_tol) {
      rep.peripheral.push_back(z);
    } else {
      mu = std::max(mu, m);
    }
  }
  rep.second_modulus = mu;

  // Eigenvector at the eigenvalue nearest 1.
  Eigen::Index nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    const double dist = std::abs(raw(i) - Complex(1.0, 0.0));
    if (dist < best) {
      best = dist;
      nearest = i;
    }
  }
  rep.fixed_point = clean_fixed_point(solver.eigenvectors().col(nearest), d);

  // Route A: the Perron point. Non-degenerate eigenvalue at the spectral
  // radius (as the positive real point lambda = r) with a positive-definite
  // eigenvector.
  int near_radius_real = 0;
  for (const auto& z : rep.eigenvalues) {
    if (std::abs(z - Complex(radius, 0.0)) <= tol.peripheral_tol) {
      ++near_radius_real;
    }
  }
  bool route_a = false;
  double fp_ratio = 0.0;
  {
    bool simple = near_radius_real == 1;
    if (simple && radius > 0) {
      Eigen::SelfAdjointEigenSolver<MatC> fp_eig(rep.fixed_point);
      const double lmin = fp_eig.eigenvalues()(0);
      const double lmax = fp_eig.eigenvalues()(d - 1);
      fp_ratio = lmax > 0 ? lmin / lmax : 0.0;
      route_a = fp_ratio > tol.strict_pos_tol;
    }
  }

  // Route B: classical Frobenius analogue, a strict-positivity probe of
  // ((id + E)/2)^(d-1).
  bool route_b = true;
  StrictPositivityResult probe;
  if (d > 1) {
    const SuperOperator half_sum = scale_add(0.5, identity_map(d), 0.5, s);
    MultistartOptions probe_opt;
    probe_opt.starts = 32;
    probe_opt.max_iters = 250;
    probe = strict_positivity_core(power(half_sum, d - 1), tol, probe_opt);
    route_b = probe.verdict != PositivityVerdict::CertifiedSingular;
  }

  if (route_a && route_b) {
    rep.irreducible.verdict = Verdict::Certified;
    rep.irreducible.margin = fp_ratio;
  } else if (!route_a && !route_b) {
    rep.irreducible.verdict = Verdict::Falsified;
    rep.irreducible.margin = probe.min_eig_found;
    if (probe.witness) {
      const VecC& w = *probe.witness;
      rep.irreducible.witness = MatC(w * w.adjoint());
    }
  } else {
    rep.irreducible.verdict = Verdict::Unfalsified;
    rep.diagnostics += route_a
        ? "irreducibility routes disagree: spectral test passed, positivity probe found a singular direction; "
        : "irreducibility routes disagree: positivity probe passed, spectral test failed; ";
  }

  // Primitivity: irreducible, peripheral spectrum = {1}, eigenvalue 1 simple.
  int near_one = 0;
  bool peripheral_only_one = true;
  for (const auto& z : rep.peripheral) {
    if (std::abs(z - Complex(1.0, 0.0)) <= tol.peripheral_tol) {
      ++near_one;
    } else {
      peripheral_only_one = false;
    }
  }
  if (rep.irreducible.verdict == Verdict::Certified && peripheral_only_one &&
      near_one == 1) {
    rep.primitive.verdict = Verdict::Certified;
    rep.primitive.margin = radius > 0 ? radius - mu : 0.0;
  } else if (rep.irreducible.verdict == Verdict::Falsified ||
             !peripheral_only_one || near_one != 1) {
    rep.primitive.verdict = Verdict::Falsified;
    rep.primitive.margin = static_cast<double>(near_one);
    if (rep.irreducible.witness) rep.primitive.witness = rep.irreducible.witness;
  } else {
    rep.primitive.verdict = Verdict::Unfalsified;
  }

  return rep;
}

SuperOperator asymptotic_projector(const SuperOperator& s,
                                   const ToleranceConfig& tol) {
  const SpectralReport rep = analyze_spectrum(s, tol);
  if (rep.primitive.verdict != Verdict::Certified) {
    throw Error(Errc::not_primitive,
                "asymptotic_projector: map is not certified primitive");
  }
  const Hypotheses hyp = cheap_hypotheses(s, tol);
  if (!hyp.trace_preserving || !hyp.unital) {
    throw Error(Errc::bad_params,
                "asymptotic_projector: requires a unital trace-preserving map");
  }

  const MatC& t = s.transfer();
  Eigen::ComplexEigenSolver<MatC> right(t);
  Eigen::ComplexEigenSolver<MatC> left(MatC(t.adjoint()));
  auto nearest_one = [](const Eigen::ComplexEigenSolver<MatC>& es) {
    Eigen::Index best_i = 0;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double dist = std::abs(es.eigenvalues()(i) - Complex(1.0, 0.0));
      if (dist < best) {
        best = dist;
        best_i = i;
      }
    }
    return best_i;
  };
  const VecC v = right.eigenvectors().col(nearest_one(right));
  const VecC w = left.eigenvectors().col(nearest_one(left));
  const Complex overlap = w.adjoint() * v;
  if (std::abs(overlap) < 1e-12) {
    throw Error(Errc::not_primitive,
                "asymptotic_projector: defective eigenvalue 1");
  }
  return SuperOperator::from_transfer(MatC(v * w.adjoint() / overlap));
}

}  // namespace qwl
