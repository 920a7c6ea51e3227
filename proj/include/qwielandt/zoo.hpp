#ifndef QWIELANDT_ZOO_HPP
#define QWIELANDT_ZOO_HPP

#include "qwielandt/mapmodel.hpp"

namespace qwl {
namespace zoo {

//=========================================================================
// Deterministic named maps
//=========================================================================

SuperOperator identity_channel(int d);
// x -> tr(x) 1/d, the completely depolarizing map.
SuperOperator omega_channel(int d);
// x -> (1-p) x + p tr(x) 1/d.
SuperOperator depolarizing(int d, double p);
// x -> (tr(x) 1 - x^t) / 2 on M_3 (unital TP channel with trivial
// multiplicative domain but no strict positivity at the first power).
SuperOperator transpose_depolarizing_d3();
// The M_2 Schwarz map that is not 2-positive: x -> x^t/2 + tr(x) 1/4.
SuperOperator choi_schwarz_m2();
SuperOperator unitary_channel(const MatC& u);
SuperOperator amplitude_damping(double gamma);
// Direct sum acting blockwise on M_{d1+d2}; off-diagonal blocks are killed.
SuperOperator block_sum(const SuperOperator& s1, const SuperOperator& s2);

// Extremal primitive 0/1 pattern (cycle plus one chord) whose classical
// primitivity index attains d^2 - 2d + 2.
MatR wielandt_pattern(int d);

// Name-based registry used by the CLI: identity, omega, depolarizing,
// transpose_depolarizing_d3, choi_schwarz_m2, unitary, amplitude_damping,
// wielandt_embedded. Throws Error(unknown_name) / Error(bad_params).
struct NamedParams {
  double p = 0.5;
  double gamma = 0.5;
  uint64_t seed = 7;  // for "unitary" (Haar draw)
};
SuperOperator named(const std::string& name, int d,
                    const NamedParams& params = {});

//=========================================================================
// Seeded random ensembles
//=========================================================================

enum class Family {
  haar_kraus,
  mixed_unitary,
  doubly_stochastic_embed,
  eb_holevo,
  ppt_rejection,
};

Family family_from_string(const std::string& name);
const char* family_name(Family f);

struct EnsembleSpec {
  Family family = Family::mixed_unitary;
  int d = 2;
  int count = 1;
  uint64_t seed = 42;
  int n_kraus = 2;      // haar_kraus, mixed_unitary, eb_holevo outcomes
  double p = 0.5;       // reserved for parametric families
  bool unital = false;  // eb_holevo: symmetrize toward unitality
};

// Deterministic given the seed; one RNG stream per spec, consumed
// sequentially. Throws Error(rejection_cap_exceeded) when rejection
// families exhaust their retry budget.
std::vector<SuperOperator> sample(const EnsembleSpec& spec);

//=========================================================================
// Random primitives shared by the ensembles and tests
//=========================================================================

MatC ginibre(int rows, int cols, Rng& rng);
MatC haar_unitary(int d, Rng& rng);
VecC random_unit_vector(int d, Rng& rng);
MatC random_density(int d, Rng& rng);              // full rank, trace one
MatC random_psd_rank(int d, int rank, Rng& rng);   // trace one, given rank
std::vector<double> dirichlet_weights(int n, Rng& rng);

// Alternating row/column normalization of a positive matrix; converges to a
// doubly stochastic matrix for strictly positive patterns.
MatR sinkhorn(MatR w, int max_iters = 1000, double tol = 1e-12);

// Random primitive column-stochastic matrix: seeded pattern with uniform
// weights (edge density drawn per matrix), resampled until primitive.
MatR random_primitive_column_stochastic(int d, Rng& rng);

}  // namespace zoo
}  // namespace qwl

#endif
