#ifndef QWIELANDT_MULTDOMAIN_HPP
#define QWIELANDT_MULTDOMAIN_HPP

#include "qwielandt/mapmodel.hpp"

namespace qwl {

//=========================================================================
// Multiplicative domains, the decreasing chain and its stabilization
//=========================================================================

struct MultDomainResult {
  OperatorSubspace domain;                    // primary: bimodule nullspace
  std::optional<OperatorSubspace> isometry_domain;  // fast path, when applicable
  double route_distance = -1.0;               // projector distance of the two
  bool routes_agree = true;
  std::string diagnostics;
};

// Primary algorithm: nullspace of the stacked 2d^4 x d^2 linear system
// { vec(Phi(a E_ij) - Phi(a) Phi(E_ij)), vec(Phi(E_ij a) - Phi(E_ij) Phi(a)) }.
// For trace-preserving maps whose Schwarz check is not falsified, the result
// is cross-checked against ker(I - T'T) (the HS-isometry subspace); on
// disagreement the primary result is kept and reported.
MultDomainResult mult_domain(const SuperOperator& s,
                             const ToleranceConfig& tol = {});

struct ChainReport {
  std::vector<int> dims;        // domain dimension per iterate, n = 1, 2, ...
  int kappa = 0;
  OperatorSubspace stabilized;  // M at the stabilization point
  bool trivial = false;         // dim 1 and contains the identity direction
};

// Computes the domains of successive powers until three consecutive
// subspaces coincide; kappa is the first index of the stable run. Requires
// a trace-preserving map with Schwarz not falsified (the hypotheses under
// which the chain is a decreasing chain of C*-subalgebras). Throws
// Error(chain_cap_exceeded) when no stabilization occurs by the cap.
ChainReport mult_chain(const SuperOperator& s, const ToleranceConfig& tol = {});

struct TensorSplitResult {
  bool split_ok = false;
  bool kappa_rule_ok = false;
  double split_distance = 0.0;
  int kappa_tensor = 0;
  int kappa_1 = 0;
  int kappa_2 = 0;
};

// Checks M_{Phi (x) Psi} = M_Phi (x) M_Psi and the kappa max-rule on a pair
// of unital trace-preserving CP maps.
TensorSplitResult tensor_split_check(const SuperOperator& s1,
                                     const SuperOperator& s2,
                                     const ToleranceConfig& tol = {});

// Trivial multiplicative domain <=> fully irreducible (for TP Schwarz maps),
// cross-checked by sampling singular PSD inputs of every rank and verifying
// the strict rank increase. Disagreement in the certifying direction
// downgrades to Unfalsified.
PredicateVerdict fully_irreducible_check(const SuperOperator& s,
                                         const ToleranceConfig& tol = {},
                                         int samples_per_rank = 25,
                                         uint64_t seed = 0xF011ULL);

// Closure residuals (star and multiplicative) of a computed domain basis;
// sets the verified flags when below subspace_tol.
void verify_algebra_closure(OperatorSubspace& space, double subspace_tol);

}  // namespace qwl

#endif
