#ifndef QWIELANDT_SPECTRAL_HPP
#define QWIELANDT_SPECTRAL_HPP

#include "qwielandt/mapmodel.hpp"

namespace qwl {

//=========================================================================
// Transfer-matrix spectrum, irreducibility/primitivity verdicts,
// spectral gap and the asymptotic projector.
//=========================================================================

struct SpectralReport {
  std::vector<Complex> eigenvalues;  // sorted by (re, im) for stable output
  double spectral_radius = 0.0;
  std::vector<Complex> peripheral;   // |lambda| >= radius - peripheral_tol
  double second_modulus = 0.0;       // largest modulus strictly below the shell
  MatC fixed_point;                  // eigenvector at eigenvalue nearest 1
  PredicateVerdict irreducible;
  PredicateVerdict primitive;
  std::string diagnostics;
};

SpectralReport analyze_spectrum(const SuperOperator& s,
                                const ToleranceConfig& tol = {});

// Spectral projector of the transfer matrix at the eigenvalue nearest 1.
// Requires a primitive (Certified) unital trace-preserving map; for those
// it acts as rho -> tr(rho) 1/d. Throws Error(not_primitive) otherwise.
SuperOperator asymptotic_projector(const SuperOperator& s,
                                   const ToleranceConfig& tol = {});

}  // namespace qwl

#endif
