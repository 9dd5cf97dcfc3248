#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "braggsim/dynamics.hpp"
#include "braggsim/optics.hpp"

namespace braggsim {

/// Coherent probe field; mean photon number is |amplitude|^2.
struct ProbeField {
  cplx amplitude{0.0, 0.0};
};

/// Thrown when the two-photon coincidence probability vanishes and no
/// conditional state exists.
struct ZeroCoincidenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Normalized pure state of the two condensates over the joint quasiparticle
/// number basis |m, n>, amplitudes in row-major order (index m * (n_max+1) + n).
///
/// raw_weight is the squared norm the amplitudes had before normalization
/// (proportional to the two-photon coincidence probability); amp_scale is the
/// largest pre-normalization magnitude, kept so raw_weight = amp_scale^2 *
/// scaled_norm stays reconstructible when the coefficients grow large.
struct JointState {
  int n_max = 2;
  std::vector<cplx> amplitudes;
  double raw_weight = 0.0;
  double amp_scale = 1.0;

  int dim() const { return n_max + 1; }
  cplx at(int m, int n) const { return amplitudes[static_cast<size_t>(m * dim() + n)]; }
  cplx& at(int m, int n) { return amplitudes[static_cast<size_t>(m * dim() + n)]; }

  /// Normalizes the given amplitudes; throws std::runtime_error when their
  /// squared norm is below 1e-30.
  static JointState from_unnormalized(int n_max, std::vector<cplx> amps);
};

/// Rotates the global phase so the largest-magnitude amplitude (first in
/// row-major order on ties) is real and positive.
JointState fix_global_phase(JointState state);

/// Joint two-condensate state conditioned on a two-photon coincidence.
/// Null measurement on the field returns the quasiparticle state
///   u*S_A x 0_B + v*0_A x S_B + w*Sigma_A x Sigma_B
/// with u = r t, v = r' t', w = r r' + t t'. Throws std::invalid_argument on
/// bad inputs and std::runtime_error when the coincidence weight vanishes.
JointState conditional_state(const ScatterCoeffs& coeffs_a, const ScatterCoeffs& coeffs_b,
                             const ProbeField& probe_a, const ProbeField& probe_b,
                             const BeamSplitter& bs, int n_max = 2);

/// Squared norm of the pre-normalization amplitudes (coincidence-rate proxy).
double coincidence_weight(const JointState& state);

/// Ground-truth reconstruction of the conditional state on the full truncated
/// space (q and -q quasiparticle modes of both condensates plus both probe
/// fields). The evolved probe operators are applied term by term as ladder
/// actions, the detector product is applied to |0> x |alpha, beta>, and the
/// result is projected back onto the coherent fields. Requires
/// photon_cutoff >= 8 and probe amplitudes of magnitude <= 1.
JointState brute_force_oracle(const ScatterCoeffs& coeffs_a, const ScatterCoeffs& coeffs_b,
                              const ProbeField& probe_a, const ProbeField& probe_b,
                              const BeamSplitter& bs, int photon_cutoff);

}  // namespace braggsim
