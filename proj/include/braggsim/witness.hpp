#pragma once

#include <optional>
#include <utility>

#include "braggsim/fock.hpp"

namespace braggsim {

/// Moments entering the pairing-operator inequality, all taken in the
/// original (untransposed) state:
///   n2    = 2 <A^dag A B^dag B>
///   n_tot = <A^dag A> + <B^dag B> + 1
///   cross = <A^dag B>
///   m_term = 2 Re<A^dag^2 B^2> - (2 Re cross)^2
struct Su11Moments {
  double n2 = 0.0;
  double n_tot = 1.0;
  double m_term = 0.0;
  cplx cross{0.0, 0.0};
};

/// Full entanglement diagnostics for one state. var1 and var2 are the
/// variances of the pair operators A^dag B^dag + A B and (A^dag B^dag - A B)/i
/// evaluated under the partially transposed state; lhs = var1 * var2 must be
/// >= rhs = n_tot^2 for every separable state, so violated certifies
/// entanglement. reduced_form carries -m^2 - 4 (n_tot + m) |cross|^2 (equal to
/// lhs - rhs) whenever n2 vanishes.
struct WitnessReport {
  double n2 = 0.0;
  double n_tot = 1.0;
  double m_term = 0.0;
  cplx cross{0.0, 0.0};
  double var1 = 1.0;
  double var2 = 1.0;
  double lhs = 1.0;
  double rhs = 1.0;
  bool violated = false;
  std::optional<double> reduced_form;
  double min_pt_eig = 0.0;
  double xi_xp = 1.0;
};

Su11Moments su11_moments(const JointState& state);

/// Inequality fields only; min_pt_eig and xi_xp are left at their defaults.
WitnessReport su11_inequality(const JointState& state);

/// (var1, var2) from the explicitly transposed density matrix, with the pair
/// operators built as matrices on a space enlarged by two quanta per mode so
/// pair creation is never clipped. Independent of the closed forms in
/// su11_inequality.
std::pair<double, double> pt_variance_oracle(const JointState& state);

/// Minimum eigenvalue of the partially transposed density matrix.
double negativity(const JointState& state);

/// Quadrature entanglement parameter
///   xi = [Var(X_A + X_B) + Var(P_A - P_B)] / 2
/// with X = (S + S^dag)/sqrt(2), P = (S - S^dag)/(i sqrt(2)); xi < 1 is
/// sufficient for entanglement (necessary only for Gaussian states).
double duan_simon_xi(const JointState& state);

/// su11_inequality plus min_pt_eig and xi_xp.
WitnessReport evaluate_witness(const JointState& state);

}  // namespace braggsim
