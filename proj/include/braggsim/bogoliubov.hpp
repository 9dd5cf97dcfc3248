#pragma once

namespace braggsim {

/// Mode parameters in dimensionless form: x = (free-atom kinetic energy) /
/// (chemical potential) for the Bragg momentum mode. Since the chemical
/// potential sets the healing length, x = (q*xi)^2.
struct ModeParams {
  double x = 1.0;
};

/// Bogoliubov mode functions for one momentum mode. u_q^2 - v_q^2 = 1 and
/// f_q = u_q - v_q; omega_b_over_mu is the quasiparticle energy in units of
/// the chemical potential.
struct BogoliubovMode {
  double u_q = 1.0;
  double v_q = 0.0;
  double f_q = 1.0;
  double omega_b_over_mu = 1.0;
};

/// Quasiparticle dispersion and mode functions from x = kinetic/chemical.
/// Throws std::domain_error for x <= 0.
BogoliubovMode dispersion(const ModeParams& params);

/// Effective collective atom-field coupling eta = sqrt(N) * f_q * Omega.
/// Throws std::domain_error for n_atoms < 1.
double eta_from_physical(long long n_atoms, double rabi, const BogoliubovMode& mode);

}  // namespace braggsim
