#ifndef QWIELANDT_PRIMITIVITY_HPP
#define QWIELANDT_PRIMITIVITY_HPP

#include "qwielandt/mapmodel.hpp"

namespace qwl {

//=========================================================================
// Strict positivity oracle
//=========================================================================

enum class PositivityVerdict { CertifiedSingular, CertifiedPositive, NumericallyPositive };
enum class CertificateSource { word_span_full, analytic, multistart };

const char* positivity_verdict_name(PositivityVerdict v);
const char* certificate_source_name(CertificateSource s);

struct MultistartOptions {
  int starts = 64;
  int max_iters = 500;
  uint64_t seed = 0x5EEDBA5Eull;
};

struct SphereMinResult {
  double min_value = 0.0;
  VecC argmin;
  int best_start = -1;
  long evaluations = 0;
};

// Seeded multistart Nelder-Mead minimization of psi -> lambda_min(S(psi psi*))
// over the unit sphere. Deterministic reduction: min by value, ties resolved
// by start index. Canonical basis vectors are always among the starts. Stops
// early once the value drops below `stop_below`, when given.
SphereMinResult minimize_min_output_eig(const SuperOperator& s,
                                        const MultistartOptions& opt,
                                        std::optional<double> stop_below = {});

struct StrictPositivityResult {
  PositivityVerdict verdict = PositivityVerdict::NumericallyPositive;
  std::optional<VecC> witness;    // unit vector, present for CertifiedSingular
  double min_eig_found = 0.0;
  CertificateSource source = CertificateSource::multistart;
};

// Decides strict positivity on rank-one inputs (which suffice). The
// multistart search is a sound falsifier; positive certificates come from
// the Kraus-word span (CP maps) or analytic structure (tagged maps), and
// everything else is reported as NumericallyPositive with its margin.
// Throws Error(not_positive) when the positivity sampler falsifies the map.
StrictPositivityResult strict_positivity(const SuperOperator& s,
                                         const ToleranceConfig& tol = {},
                                         const MultistartOptions& opt = {});

// Same decision procedure without the positivity-sampler precondition;
// used by internal probes on maps already known positive.
StrictPositivityResult strict_positivity_core(const SuperOperator& s,
                                              const ToleranceConfig& tol,
                                              const MultistartOptions& opt);

//=========================================================================
// Index computations and bound verification
//=========================================================================

struct BoundRow {
  std::string name;     // classical | quantum | main | corollary | ppt_eb | adjoint
  long claimed = 0;
  long observed = 0;
  bool satisfied = false;
  bool applicable = false;
};

struct HypothesisFlags {
  Verdict trace_preserving = Verdict::Unfalsified;
  Verdict unital = Verdict::Unfalsified;
  Verdict cp = Verdict::Unfalsified;
  Verdict ppt = Verdict::Unfalsified;
  Verdict eb = Verdict::Unfalsified;
  Verdict schwarz = Verdict::Unfalsified;
  Verdict primitive = Verdict::Unfalsified;
};

struct IndexReport {
  int d = 0;
  int omega_lower = 1;
  std::optional<int> omega_upper;           // nullopt = not found by cap
  CertificateSource omega_upper_source = CertificateSource::multistart;
  std::optional<int> i_index;
  std::optional<int> kappa;
  std::optional<int> n_kraus;               // linearly independent Kraus count
  std::vector<BoundRow> bounds;
  HypothesisFlags hypotheses;
  std::string diagnostics;

  const BoundRow* bound(const std::string& name) const;
};

// Brackets the primitivity index by iterating strict positivity over powers
// k = 1..cap (cap <= 0 picks the hypothesis-dependent default), exploiting
// monotonicity for trace-preserving maps. Fills kappa, the word index and
// every applicable bound row. Throws Error(not_primitive) when the spectral
// verdict is Falsified.
IndexReport omega_index(const SuperOperator& s, int cap = 0,
                        const ToleranceConfig& tol = {},
                        const MultistartOptions& opt = {});

// Least k for which length-k products of the Kraus operators span M_d.
// Throws Error(cap_exceeded) when the span never fills (consistent with
// non-primitivity).
int word_span_index(const std::vector<MatC>& kraus, int cap);

struct ClassicalWielandtResult {
  bool primitive = false;
  std::optional<int> p;
};

// Boolean-semiring powers of the zero pattern until all entries are
// reachable; cap d^2 - 2d + 2 plus one.
ClassicalWielandtResult classical_wielandt(const MatR& w);

// TP CP map with Kraus sqrt(W_ij) E_ij; acts on diagonals as W and kills
// off-diagonal matrix units, so its primitivity index equals the classical
// one. Throws Error(not_stochastic) unless columns sum to 1 and W >= 0.
SuperOperator embed_stochastic(const MatR& w);

// Full bound verification: omega_index plus the PPT/EB extras (abelian
// multiplicative domain, kappa <= d) and the adjoint-corollary row.
IndexReport verify_bounds(const SuperOperator& s,
                          const ToleranceConfig& tol = {},
                          const MultistartOptions& opt = {});

}  // namespace qwl

#endif
