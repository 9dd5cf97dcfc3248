#pragma once

#include <array>
#include <complex>

namespace braggsim {

using cplx = std::complex<double>;

/// 3x3 complex matrix in row-major order, used for the mode-coupling matrix
/// and its propagator.
struct Mat3 {
  std::array<cplx, 9> a{};

  cplx& operator()(int i, int j) { return a[static_cast<size_t>(3 * i + j)]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(3 * i + j)]; }

  static Mat3 identity();
};

Mat3 operator*(const Mat3& lhs, const Mat3& rhs);

/// Drive parameters of one condensate, in units of the quasiparticle energy:
/// eta_tilde = eta / omega_B (effective atom-field coupling), delta_tilde =
/// delta / omega_B (pump-probe detuning).
struct CondensateDrive {
  cplx eta_tilde{0.0, 0.0};
  double delta_tilde = 1.0;
};

/// Heisenberg coefficients of the evolved probe mode at dimensionless time
/// tau = omega_B * t:
///   c(tau) = a_q * alpha_q^dag + a_minus_q * alpha_{-q} + a_c * c(0).
/// Commutator preservation requires |a_c|^2 + |a_minus_q|^2 - |a_q|^2 = 1.
struct ScatterCoeffs {
  cplx a_q{0.0, 0.0};
  cplx a_minus_q{0.0, 0.0};
  cplx a_c{1.0, 0.0};
  double tau = 0.0;

  /// |(|a_c|^2 + |a_minus_q|^2 - |a_q|^2) - 1| scaled by the coefficient
  /// magnitude, so it stays meaningful when the coefficients grow.
  double symplectic_defect() const;
};

/// Eigendecomposition of the coupling matrix, kept as a cross-check path for
/// the propagator. condition_estimate is ||D||_F * ||D^-1||_F of the
/// eigenvector matrix; large values flag near-defective M.
struct PropagatorDecomposition {
  Mat3 m_matrix;
  std::array<cplx, 3> eigenvalues{};
  Mat3 d_matrix;      // columns are unit-norm eigenvectors
  Mat3 d_inverse;
  double condition_estimate = 0.0;
};

/// Coupling matrix M of the Heisenberg system dX/dtau = i M X for the triad
/// X = (alpha_q, alpha_{-q}^dag, c^dag). Throws std::invalid_argument for
/// non-finite entries or |eta_tilde| >= 1e3.
Mat3 build_m_matrix(const CondensateDrive& drive);

/// Eigendecomposition of build_m_matrix(drive); eigenvalues are polished by
/// Newton iteration on the characteristic polynomial.
PropagatorDecomposition decompose(const CondensateDrive& drive);

/// Propagator P(tau) = exp(i tau M) by scaling-and-squaring.
Mat3 propagator(const CondensateDrive& drive, double tau);

/// Scattering coefficients at tau from the third row of the propagator:
/// a_q = conj(P31), a_minus_q = conj(P32), a_c = conj(P33).
/// Throws std::domain_error for tau < 0 and std::overflow_error when
/// max|Im lambda| * tau > 600 (the exponential would not be representable).
ScatterCoeffs propagate(const CondensateDrive& drive, double tau);

/// Same coefficients through the diagonalized form D E(tau) D^-1. Intended as
/// a cross-check; skip when decomposition.condition_estimate > 1e6.
ScatterCoeffs propagate_eigen(const PropagatorDecomposition& dec, double tau);

/// Independent check of propagate: classical RK4 integration of dX/dtau = iMX
/// columnwise. Throws std::invalid_argument for step <= 0 or, when tau > 0,
/// step > tau / 10.
ScatterCoeffs propagate_ode_oracle(const CondensateDrive& drive, double tau, double step);

}  // namespace braggsim
