#ifndef QWIELANDT_DYNAMICS_HPP
#define QWIELANDT_DYNAMICS_HPP

#include "qwielandt/primitivity.hpp"

namespace qwl {

//=========================================================================
// Trace-norm contraction analysis
//=========================================================================

struct ContractionOptions {
  int starts = 64;          // multistart budget for the pure-pair search
  int max_iters = 300;
  int probe_starts = 24;    // positivity probe inside the delta bisection
  int probe_iters = 200;
  int bisect_steps = 40;
  double delta_cap = 1e3;
  uint64_t seed = 0xC0117ACULL;
};

struct ContractionReport {
  double c_lower = 0.0;            // best contraction ratio found
  double delta_star = 0.0;         // largest delta with (1+d)Phi - d*Omega positive
  bool delta_capped = false;
  double c_upper_from_delta = 1.0; // 1 / (1 + delta_star)
  bool strictly_contractive = false;
};

// c_lower maximizes (1/2)||Phi(psi psi* - phi phi*)||_1 over orthogonal pure
// pairs (the extreme points of the traceless trace-norm ball); delta_star by
// bisection with a sampled rank-one positivity probe. Requires a trace
// preserving map; throws Error(not_trace_preserving) otherwise.
ContractionReport contraction_coefficient(const SuperOperator& s,
                                          const ToleranceConfig& tol = {},
                                          const ContractionOptions& opt = {});

struct PowerContraction {
  int omega_power = 0;
  ContractionReport at_omega;
  std::optional<int> i_power;
  std::optional<ContractionReport> at_i;
};

// Contraction reports for S^omega and (when Kraus are available) S^i.
// Requires a primitive channel.
PowerContraction contractivity_of_power(const SuperOperator& s,
                                        const ToleranceConfig& tol = {},
                                        const ContractionOptions& opt = {});

//=========================================================================
// Zero-error dichotomy certificates
//=========================================================================

enum class ZeroErrorBranch { PrimitiveBranch, NonPrimitiveBranch };

const char* zero_error_branch_name(ZeroErrorBranch b);

struct ZeroErrorCertificate {
  ZeroErrorBranch branch = ZeroErrorBranch::PrimitiveBranch;
  std::optional<int> span_dim;       // dim span{a'_w a_v} at word length omega
  std::optional<MatC> projection;    // nontrivial projection from the stable algebra
  std::vector<int> recovery_checked_n;
  double max_recovery_residual = 0.0;
};

// Primitive branch: the length-omega word products span M_d, which rules out
// both zero-error transmission modes for S^omega. Non-primitive branch:
// exhibits a projection in the stabilized multiplicative domain recovered
// exactly by the adjoint power. Requires a unital CP channel with Kraus
// operators. Throws Error(inconclusive_span) if the primitive span is
// deficient (that would be a reportable finding).
ZeroErrorCertificate zero_error_dichotomy(const SuperOperator& s,
                                          const ToleranceConfig& tol = {},
                                          const MultistartOptions& opt = {});

}  // namespace qwl

#endif
