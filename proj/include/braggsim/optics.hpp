#pragma once

#include <complex>

namespace braggsim {

using cplx = std::complex<double>;

/// Lossless beam splitter with transmission magnitude |t| = |t'| = t_mag and
/// transmission phases phi (left input) and phi_prime (right input).
/// Reflection picks up the usual pi/2 phase: r = i|r|e^{i phi},
/// r' = i|r|e^{i phi'}, which makes the amplitude matrix [[r, t'], [t, r']]
/// unitary and satisfies the reciprocity relations
/// r* t' + r' t* = 0 and r* t + r' t'* = 0.
struct BeamSplitter {
  double t_mag = 0.7071067811865476;
  double phi = 0.0;
  double phi_prime = 0.0;

  double r_mag() const;
  cplx t() const;
  cplx t_prime() const;
  cplx r() const;
  cplx r_prime() const;
};

/// Validated constructor; throws std::domain_error unless 0 <= t_mag <= 1.
BeamSplitter make_beam_splitter(double t_mag, double phi, double phi_prime);

/// Couplings of the two detector modes to the scattered probe modes:
///   C_D1 = d1_a * c_a + d1_b * c_b,   C_D2 = d2_a * c_a + d2_b * c_b.
struct DetectorCouplings {
  cplx d1_a, d1_b, d2_a, d2_b;
};

/// Detector operators after the beam splitter: d1 = (r, t'), d2 = (t, r').
DetectorCouplings detector_couplings(const BeamSplitter& bs);

}  // namespace braggsim
