#ifndef QWIELANDT_MAPMODEL_HPP
#define QWIELANDT_MAPMODEL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qwielandt/numkernel.hpp"

namespace qwl {

//=========================================================================
// Verdicts
//=========================================================================

enum class Verdict { Certified, Falsified, Unfalsified };

const char* verdict_name(Verdict v);

struct PredicateVerdict {
  Verdict verdict = Verdict::Unfalsified;
  std::optional<MatC> witness;
  long samples_used = 0;
  double margin = 0.0;
};

//=========================================================================
// SuperOperator
//
// A linear map on M_d stored canonically as the d^2 x d^2 transfer matrix
// under column-stacking vectorization, vec(Phi(X)) = transfer * vec(X).
// The Choi matrix C = sum_ij E_ij (x) Phi(E_ij) is computed at construction
// (it is the PSD/TP workhorse); a Kraus cache is kept when the map was built
// from Kraus operators. Instances are immutable and safe to share across
// threads.
//=========================================================================

class SuperOperator {
 public:
  // Empty state (d = 0); any real instance comes from the named factories.
  SuperOperator() = default;

  static SuperOperator from_transfer(MatC transfer);
  static SuperOperator from_kraus(const std::vector<MatC>& ops);
  static SuperOperator from_choi(const MatC& choi);
  // Builds the transfer matrix column by column from the action on matrix
  // units; convention-proof way to define maps given a formula.
  static SuperOperator from_action(int d,
                                   const std::function<MatC(const MatC&)>& fn);

  int dim() const { return d_; }
  const MatC& transfer() const { return transfer_; }
  const MatC& choi() const { return choi_; }

  bool has_kraus() const { return !kraus_.empty(); }
  const std::vector<MatC>& kraus() const { return kraus_; }

  MatC apply(const MatC& x) const;

  // Optional provenance tag set by constructors in the zoo; consumed by
  // checks that are only decidable by construction (e.g. entanglement
  // breaking at d >= 3).
  const std::string& construction() const { return construction_; }
  SuperOperator tagged(std::string tag) const;

 private:
  int d_ = 0;
  MatC transfer_;
  MatC choi_;
  std::vector<MatC> kraus_;
  std::string construction_;
};

//=========================================================================
// Conversions and algebra
//=========================================================================

MatC choi_from_transfer(const MatC& transfer, int d);
MatC transfer_from_choi(const MatC& choi, int d);

// Kraus operators from the Choi eigendecomposition. Requires a CP map:
// throws Error(not_completely_positive) when lambda_min(Choi) < -psd_tol*||C||.
std::vector<MatC> to_kraus(const SuperOperator& s,
                           const ToleranceConfig& tol = {});

SuperOperator identity_map(int d);
SuperOperator compose(const SuperOperator& s1, const SuperOperator& s2);
SuperOperator power(const SuperOperator& s, int k);
SuperOperator tensor(const SuperOperator& s1, const SuperOperator& s2);
SuperOperator adjoint(const SuperOperator& s);
SuperOperator scale_add(double alpha, const SuperOperator& s1, double beta,
                        const SuperOperator& s2);

//=========================================================================
// Structural predicates
//=========================================================================

struct MapPredicates {
  PredicateVerdict trace_preserving;
  PredicateVerdict unital;
  PredicateVerdict hermiticity_preserving;
  PredicateVerdict cp;
  PredicateVerdict ppt;
  PredicateVerdict positive_sampled;
  PredicateVerdict schwarz;
};

// Full predicate record. Sampled checks (positivity, Schwarz falsification)
// draw `samples` Ginibre inputs from the given seed; the Schwarz sampler
// always probes a = 1 first.
MapPredicates predicates(const SuperOperator& s,
                         const ToleranceConfig& tol = {},
                         long samples = 10000,
                         uint64_t seed = 0x51CA97ULL);

PredicateVerdict entanglement_breaking_check(const SuperOperator& s,
                                             const ToleranceConfig& tol = {});

// Cheap deterministic subset of the predicate record used internally to
// gate hypotheses (no large sampling budgets).
struct Hypotheses {
  bool trace_preserving = false;
  bool unital = false;
  bool cp = false;
  bool ppt = false;
  bool schwarz_falsified = false;
  bool schwarz_certified = false;  // via CP + unital
};

Hypotheses cheap_hypotheses(const SuperOperator& s,
                            const ToleranceConfig& tol = {},
                            long falsifier_samples = 256,
                            uint64_t seed = 0xC0FFEEULL);

}  // namespace qwl

#endif
