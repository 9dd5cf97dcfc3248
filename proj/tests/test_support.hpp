#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "braggsim/projection.hpp"

namespace braggsim::testing {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Seeded uniforms straight from the mt19937_64 stream so draws are identical
/// across standard libraries.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  cplx disc(double radius = 1.0) {
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, uniform(0.0, 2.0 * kPi));
  }
};

inline JointState random_state(Rng& rng, int n_max = 2) {
  std::vector<cplx> amps(static_cast<size_t>((n_max + 1) * (n_max + 1)));
  for (cplx& z : amps) z = rng.disc();
  return JointState::from_unnormalized(n_max, std::move(amps));
}

/// Product of two random local superpositions with up to two excitations.
inline JointState random_separable_state(Rng& rng, int n_max = 2) {
  std::vector<cplx> local_a(static_cast<size_t>(n_max + 1));
  std::vector<cplx> local_b(static_cast<size_t>(n_max + 1));
  for (int k = 0; k <= std::min(2, n_max); ++k) {
    local_a[static_cast<size_t>(k)] = rng.disc();
    local_b[static_cast<size_t>(k)] = rng.disc();
  }
  std::vector<cplx> amps(static_cast<size_t>((n_max + 1) * (n_max + 1)));
  for (int m = 0; m <= n_max; ++m) {
    for (int n = 0; n <= n_max; ++n) {
      amps[static_cast<size_t>(m * (n_max + 1) + n)] =
          local_a[static_cast<size_t>(m)] * local_b[static_cast<size_t>(n)];
    }
  }
  return JointState::from_unnormalized(n_max, std::move(amps));
}

/// |01> + |10> over sqrt(2).
inline JointState bell_like_state(int n_max = 2) {
  std::vector<cplx> amps(static_cast<size_t>((n_max + 1) * (n_max + 1)), cplx(0.0, 0.0));
  amps[1] = cplx(1.0, 0.0);
  amps[static_cast<size_t>(n_max + 1)] = cplx(1.0, 0.0);
  return JointState::from_unnormalized(n_max, std::move(amps));
}

inline JointState vacuum_state(int n_max = 2) {
  std::vector<cplx> amps(static_cast<size_t>((n_max + 1) * (n_max + 1)), cplx(0.0, 0.0));
  amps[0] = cplx(1.0, 0.0);
  return JointState::from_unnormalized(n_max, std::move(amps));
}

}  // namespace braggsim::testing
