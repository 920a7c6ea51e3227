#include "qwielandt/common.hpp"

#include <cmath>

namespace qwl {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::not_hermitian: return "not_hermitian";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::shape_mismatch: return "shape_mismatch";
    case Errc::not_completely_positive: return "not_completely_positive";
    case Errc::not_primitive: return "not_primitive";
    case Errc::not_stochastic: return "not_stochastic";
    case Errc::not_trace_preserving: return "not_trace_preserving";
    case Errc::not_positive: return "not_positive";
    case Errc::chain_cap_exceeded: return "chain_cap_exceeded";
    case Errc::cap_exceeded: return "cap_exceeded";
    case Errc::inconclusive_span: return "inconclusive_span";
    case Errc::rejection_cap_exceeded: return "rejection_cap_exceeded";
    case Errc::unknown_name: return "unknown_name";
    case Errc::bad_params: return "bad_params";
    case Errc::bad_input: return "bad_input";
  }
  return "unknown";
}

void ToleranceConfig::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !(v < 1e-2)) {
      throw Error(Errc::bad_params,
                  std::string("tolerance ") + name +
                      " must lie strictly inside (0, 1e-2)");
    }
  };
  check(psd_tol, "psd_tol");
  check(rank_rel_tol, "rank_rel_tol");
  check(peripheral_tol, "peripheral_tol");
  check(strict_pos_tol, "strict_pos_tol");
  check(subspace_tol, "subspace_tol");
  if (chain_dim_cap < 0) {
    throw Error(Errc::bad_params, "chain_dim_cap must be positive (or 0 for auto)");
  }
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Rng::Rng(uint64_t seed) : state_(splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ull)), seed_(seed) {
  if (state_ == 0) state_ = 0x853C49E6748FEA9Bull;
}

uint64_t Rng::next_u64() {
  // xorshift64* — small, fast, reproducible everywhere.
  uint64_t x = state_;
  x ^= x >> 12;
  x ^= x << 25;
  x ^= x >> 27;
  state_ = x;
  return x * 0x2545F4914F6CDD1Dull;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

Complex Rng::cgaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) / std::sqrt(2.0);
}

Rng Rng::fork(uint64_t stream) const {
  return Rng(splitmix64(seed_ + 0x9E3779B97F4A7C15ull * (stream + 1)));
}

void require_finite(const MatC& a, const std::string& where) {
  if (!a.allFinite()) {
    throw Error(Errc::bad_input, where + ": matrix has non-finite entries");
  }
}

}  // namespace qwl
