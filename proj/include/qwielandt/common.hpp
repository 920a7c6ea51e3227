#ifndef QWIELANDT_COMMON_HPP
#define QWIELANDT_COMMON_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qwl {

using Complex = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;

//=========================================================================
// Errors
//=========================================================================

enum class Errc {
  not_hermitian,
  dimension_mismatch,
  shape_mismatch,
  not_completely_positive,
  not_primitive,
  not_stochastic,
  not_trace_preserving,
  not_positive,
  chain_cap_exceeded,
  cap_exceeded,
  inconclusive_span,
  rejection_cap_exceeded,
  unknown_name,
  bad_params,
  bad_input,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

//=========================================================================
// Tolerances
//=========================================================================

struct ToleranceConfig {
  double psd_tol = 1e-8;
  double rank_rel_tol = 1e-8;
  double peripheral_tol = 1e-7;
  double strict_pos_tol = 1e-6;
  double subspace_tol = 1e-7;
  // 0 means "use the ambient default d*d" at the point of use.
  int chain_dim_cap = 0;

  void validate() const;
  int chain_cap_for(int d) const {
    return chain_dim_cap > 0 ? chain_dim_cap : d * d;
  }
};

//=========================================================================
// Seeded RNG
//
// All randomized routines take explicit 64-bit seeds. Gaussians are produced
// by Box-Muller on top of the raw 64-bit stream so the byte-level output of
// seeded runs does not depend on the standard library's distribution
// implementations.
//=========================================================================

uint64_t splitmix64(uint64_t x);

class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();
  double uniform();    // [0, 1)
  double gaussian();   // N(0, 1)
  Complex cgaussian(); // standard complex normal, E|z|^2 = 1

  // Deterministic derived stream; independent of draws taken so far.
  Rng fork(uint64_t stream) const;

 private:
  uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
  uint64_t seed_;
};

//=========================================================================
// Small matrix helpers shared across modules
//=========================================================================

inline MatC hermitian_part(const MatC& a) { return 0.5 * (a + a.adjoint()); }

// Throws Error(bad_input) when any entry is NaN/Inf.
void require_finite(const MatC& a, const std::string& where);

}  // namespace qwl

#endif
