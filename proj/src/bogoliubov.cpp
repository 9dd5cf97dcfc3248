#include "braggsim/bogoliubov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace braggsim {

BogoliubovMode dispersion(const ModeParams& params) {
  const double x = params.x;
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("dispersion: x must be positive and finite, got " +
                            std::to_string(x));
  }
  BogoliubovMode mode;
  // omega_B / mu = sqrt((x+1)^2 - 1); written as sqrt(x(x+2)) to avoid
  // cancellation for x << 1.
  mode.omega_b_over_mu = std::sqrt(x * (x + 2.0));
  const double v2 = 0.5 * ((x + 1.0) / mode.omega_b_over_mu - 1.0);
  mode.v_q = std::sqrt(v2);
  mode.u_q = std::sqrt(v2 + 1.0);
  mode.f_q = mode.u_q - mode.v_q;
  return mode;
}

double eta_from_physical(long long n_atoms, double rabi, const BogoliubovMode& mode) {
  if (n_atoms < 1) {
    throw std::domain_error("eta_from_physical: n_atoms must be >= 1, got " +
                            std::to_string(n_atoms));
  }
  return std::sqrt(static_cast<double>(n_atoms)) * mode.f_q * rabi;
}

}  // namespace braggsim
