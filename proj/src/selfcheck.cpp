#include "braggsim/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <vector>

#include "braggsim/fock.hpp"
#include "braggsim/projection.hpp"
#include "braggsim/witness.hpp"

namespace braggsim {

namespace {

/// Deterministic uniforms from the raw mt19937_64 stream (distribution
/// objects are implementation-defined, the engine itself is not).
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  cplx disc(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    const double phase = uniform(0.0, 2.0 * 3.141592653589793);
    return std::polar(r, phase);
  }
};

JointState random_state(Rng& rng, int n_max) {
  std::vector<cplx> amps(static_cast<size_t>((n_max + 1) * (n_max + 1)));
  for (cplx& z : amps) z = rng.disc(1.0);
  return JointState::from_unnormalized(n_max, std::move(amps));
}

double coeff_distance(const ScatterCoeffs& x, const ScatterCoeffs& y) {
  const double scale = std::max({1.0, std::abs(x.a_q), std::abs(x.a_minus_q), std::abs(x.a_c)});
  return std::max({std::abs(x.a_q - y.a_q), std::abs(x.a_minus_q - y.a_minus_q),
                   std::abs(x.a_c - y.a_c)}) /
         scale;
}

bool check_propagator(std::ostream& out) {
  double worst_defect = 0.0;
  double worst_oracle = 0.0;
  for (double eta : {0.0, 0.5, 7.7}) {
    const CondensateDrive drive{cplx(eta, 0.0), 1.0};
    for (int i = 0; i <= 200; ++i) {
      const double tau = 0.05 * i;
      const ScatterCoeffs coeffs = propagate(drive, tau);
      worst_defect = std::max(worst_defect, coeffs.symplectic_defect());
      if (tau > 0.0) {
        const ScatterCoeffs oracle = propagate_ode_oracle(drive, tau, 1e-3);
        worst_oracle = std::max(worst_oracle, coeff_distance(coeffs, oracle));
      }
    }
  }
  const bool ok = worst_defect <= 1e-8 && worst_oracle <= 1e-6;
  out << (ok ? "ok" : "FAIL")
      << " propagator: max symplectic defect " << worst_defect
      << ", max deviation from RK4 " << worst_oracle << "\n";
  return ok;
}

bool check_projection(std::ostream& out) {
  Rng rng(0x9e3779b97f4a7c15ull);
  double worst = 0.0;
  for (int draw = 0; draw < 10; ++draw) {
    const CondensateDrive drive_a{cplx(rng.uniform(0.0, 2.0), 0.0), rng.uniform(0.5, 1.5)};
    const CondensateDrive drive_b{cplx(rng.uniform(0.0, 2.0), 0.0), rng.uniform(0.5, 1.5)};
    const double tau = rng.uniform(0.1, 1.5);
    const ScatterCoeffs ca = propagate(drive_a, tau);
    const ScatterCoeffs cb = propagate(drive_b, tau);
    const ProbeField pa{rng.disc(0.5)};
    const ProbeField pb{rng.disc(0.5)};
    const BeamSplitter bs =
        make_beam_splitter(rng.uniform(0.2, 0.98), rng.uniform(0.0, 6.28), rng.uniform(0.0, 6.28));

    const JointState direct = fix_global_phase(conditional_state(ca, cb, pa, pb, bs, 2));
    const JointState oracle = fix_global_phase(brute_force_oracle(ca, cb, pa, pb, bs, 10));
    for (size_t k = 0; k < direct.amplitudes.size(); ++k) {
      worst = std::max(worst, std::abs(direct.amplitudes[k] - oracle.amplitudes[k]));
    }
  }
  const bool ok = worst <= 1e-6;
  out << (ok ? "ok" : "FAIL") << " projection: max |conditional_state - brute force| " << worst
      << "\n";
  return ok;
}

bool check_pt_spectrum(std::ostream& out) {
  Rng rng(0x2545f4914f6cdd1dull);
  double worst = 0.0;
  for (int draw = 0; draw < 50; ++draw) {
    const JointState state = random_state(rng, 2);
    const auto direct = hermitian_eigenvalues(
        partial_transpose(density_matrix(state), state.n_max).entries);
    const auto predicted = pt_spectrum_oracle(schmidt_coefficients(state));
    for (size_t k = 0; k < direct.size(); ++k) {
      worst = std::max(worst, std::abs(direct[k] - predicted[k]));
    }
  }
  const bool ok = worst <= 1e-9;
  out << (ok ? "ok" : "FAIL") << " pt spectrum: max |direct - Schmidt formula| " << worst << "\n";
  return ok;
}

bool check_variances(std::ostream& out) {
  Rng rng(0xda942042e4dd58b5ull);
  double worst = 0.0;
  for (int draw = 0; draw < 50; ++draw) {
    const JointState state = random_state(rng, 2);
    const WitnessReport rep = su11_inequality(state);
    const auto [var1, var2] = pt_variance_oracle(state);
    worst = std::max({worst, std::abs(rep.var1 - var1), std::abs(rep.var2 - var2)});
  }
  const bool ok = worst <= 1e-10;
  out << (ok ? "ok" : "FAIL") << " su11 variances: max |closed form - transposed-state oracle| "
      << worst << "\n";
  return ok;
}

}  // namespace

bool run_self_checks(std::ostream& out) {
  bool ok = true;
  ok &= check_propagator(out);
  ok &= check_projection(out);
  ok &= check_pt_spectrum(out);
  ok &= check_variances(out);
  out << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
  return ok;
}

}  // namespace braggsim
