#include "braggsim/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace braggsim {

namespace {

constexpr double kZeroWeight = 1e-30;
constexpr double kMaxProbeIntensity = 1e6;
constexpr double kCoherentTailBound = 1e-9;

void check_probe(const ProbeField& probe, const char* name) {
  if (!std::isfinite(probe.amplitude.real()) || !std::isfinite(probe.amplitude.imag())) {
    throw std::invalid_argument(std::string("conditional_state: probe ") + name +
                                " amplitude must be finite");
  }
  if (std::norm(probe.amplitude) > kMaxProbeIntensity) {
    throw std::invalid_argument(std::string("conditional_state: probe ") + name +
                                " intensity exceeds 1e6");
  }
}

/// Normalize `amps` in place; returns {raw_weight, amp_scale}. Scales by the
/// largest magnitude first so the squared norm cannot overflow even when the
/// scattering coefficients have grown exponentially.
std::pair<double, double> normalize(std::vector<cplx>& amps) {
  double max_abs = 0.0;
  for (const cplx& z : amps) max_abs = std::max(max_abs, std::abs(z));
  if (max_abs == 0.0) return {0.0, 0.0};
  double scaled_norm2 = 0.0;
  for (cplx& z : amps) {
    z /= max_abs;
    scaled_norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(scaled_norm2);
  for (cplx& z : amps) z *= inv;
  return {max_abs * max_abs * scaled_norm2, max_abs};
}

// ---------------------------------------------------------------------------
// Brute-force oracle machinery: a flat tensor space with per-mode ladder
// actions. Modes: 0 = q_A, 1 = -q_A, 2 = q_B, 3 = -q_B, 4 = field_a,
// 5 = field_b.
// ---------------------------------------------------------------------------

struct TensorSpace {
  std::vector<int> dims;
  std::vector<long long> strides;
  long long total = 1;

  explicit TensorSpace(std::vector<int> d) : dims(std::move(d)) {
    strides.assign(dims.size(), 1);
    for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
      strides[static_cast<size_t>(k)] =
          strides[static_cast<size_t>(k + 1)] * dims[static_cast<size_t>(k + 1)];
    }
    for (int d2 : dims) total *= d2;
  }

  int occupation(long long index, int mode) const {
    return static_cast<int>((index / strides[static_cast<size_t>(mode)]) %
                            dims[static_cast<size_t>(mode)]);
  }
};

using Vec = std::vector<cplx>;

/// out += coeff * a_mode |v>
void accumulate_annihilate(const TensorSpace& space, int mode, cplx coeff, const Vec& v,
                           Vec& out) {
  if (coeff == cplx(0.0, 0.0)) return;
  const long long stride = space.strides[static_cast<size_t>(mode)];
  for (long long i = 0; i < space.total; ++i) {
    const int n = space.occupation(i, mode);
    if (n == 0 || v[static_cast<size_t>(i)] == cplx(0.0, 0.0)) continue;
    out[static_cast<size_t>(i - stride)] +=
        coeff * std::sqrt(static_cast<double>(n)) * v[static_cast<size_t>(i)];
  }
}

/// out += coeff * a_mode^dag |v>; throws if the truncation would clip.
void accumulate_create(const TensorSpace& space, int mode, cplx coeff, const Vec& v, Vec& out) {
  if (coeff == cplx(0.0, 0.0)) return;
  const long long stride = space.strides[static_cast<size_t>(mode)];
  const int top = space.dims[static_cast<size_t>(mode)] - 1;
  for (long long i = 0; i < space.total; ++i) {
    const int n = space.occupation(i, mode);
    if (v[static_cast<size_t>(i)] == cplx(0.0, 0.0)) continue;
    if (n == top) {
      throw std::logic_error("brute_force_oracle: creation clipped by mode truncation");
    }
    out[static_cast<size_t>(i + stride)] +=
        coeff * std::sqrt(static_cast<double>(n + 1)) * v[static_cast<size_t>(i)];
  }
}

/// Evolved probe operator c_j(t) = a_q chi_q^dag + a_{-q} chi_{-q} + a_c c_j(0).
Vec apply_scattered_mode(const TensorSpace& space, const ScatterCoeffs& coeffs, int q_mode,
                         int mq_mode, int field_mode, const Vec& v) {
  Vec out(static_cast<size_t>(space.total), cplx(0.0, 0.0));
  accumulate_create(space, q_mode, coeffs.a_q, v, out);
  accumulate_annihilate(space, mq_mode, coeffs.a_minus_q, v, out);
  accumulate_annihilate(space, field_mode, coeffs.a_c, v, out);
  return out;
}

std::vector<cplx> coherent_amplitudes(cplx alpha, int cutoff) {
  std::vector<cplx> amps(static_cast<size_t>(cutoff + 1));
  amps[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) {
    amps[static_cast<size_t>(n)] =
        amps[static_cast<size_t>(n - 1)] * alpha / std::sqrt(static_cast<double>(n));
  }
  double captured = 0.0;
  for (const cplx& z : amps) captured += std::norm(z);
  if (1.0 - captured > kCoherentTailBound) {
    throw std::runtime_error(
        "brute_force_oracle: coherent-state truncation error " + std::to_string(1.0 - captured) +
        " at cutoff " + std::to_string(cutoff) + "; raise photon_cutoff");
  }
  return amps;
}

}  // namespace

JointState JointState::from_unnormalized(int n_max, std::vector<cplx> amps) {
  if (n_max < 1) {
    throw std::invalid_argument("JointState: n_max must be >= 1");
  }
  const size_t want = static_cast<size_t>((n_max + 1) * (n_max + 1));
  if (amps.size() != want) {
    throw std::invalid_argument("JointState: expected " + std::to_string(want) +
                                " amplitudes, got " + std::to_string(amps.size()));
  }
  JointState state;
  state.n_max = n_max;
  state.amplitudes = std::move(amps);
  const auto [weight, scale] = normalize(state.amplitudes);
  if (weight < kZeroWeight) {
    throw ZeroCoincidenceError("JointState: squared norm below 1e-30 (zero coincidence weight)");
  }
  state.raw_weight = weight;
  state.amp_scale = scale;
  return state;
}

JointState fix_global_phase(JointState state) {
  size_t best = 0;
  double best_abs = -1.0;
  for (size_t k = 0; k < state.amplitudes.size(); ++k) {
    const double a = std::abs(state.amplitudes[k]);
    if (a > best_abs) {
      best_abs = a;
      best = k;
    }
  }
  if (best_abs <= 0.0) return state;
  const cplx phase = state.amplitudes[best] / best_abs;
  for (cplx& z : state.amplitudes) z /= phase;
  return state;
}

JointState conditional_state(const ScatterCoeffs& coeffs_a, const ScatterCoeffs& coeffs_b,
                             const ProbeField& probe_a, const ProbeField& probe_b,
                             const BeamSplitter& bs, int n_max) {
  if (n_max < 2) {
    throw std::invalid_argument("conditional_state: n_max must be >= 2 to hold the "
                                "two-photon support");
  }
  check_probe(probe_a, "A");
  check_probe(probe_b, "B");
  if (coeffs_a.tau != coeffs_b.tau) {
    throw std::invalid_argument("conditional_state: coefficients must share one tau");
  }

  const cplx u = bs.r() * bs.t();
  const cplx v = bs.r_prime() * bs.t_prime();
  // rr' + tt' = e^{i(phi+phi')}(|t|^2 - |r|^2) cancels identically for a
  // balanced splitter; snap away the representation error of t_mag = 1/sqrt2
  // so the |1,1> amplitude vanishes exactly there.
  cplx w = bs.r() * bs.r_prime() + bs.t() * bs.t_prime();
  if (std::abs(2.0 * bs.t_mag * bs.t_mag - 1.0) <= 1e-15) w = cplx(0.0, 0.0);

  // Every amplitude is a sum of products of two factors from
  // {a_q, a_c alpha, b_q, b_c beta}. The coefficients grow like e^{|Im l| tau},
  // so divide the factors by their largest magnitude first; the quadratic
  // products then stay representable over the whole range the propagator
  // guard admits. True amplitudes are scale^2 times the scaled ones.
  const double coeff_scale =
      std::max({1.0, std::abs(coeffs_a.a_q), std::abs(coeffs_b.a_q),
                std::abs(coeffs_a.a_c * probe_a.amplitude),
                std::abs(coeffs_b.a_c * probe_b.amplitude)});
  const cplx aq = coeffs_a.a_q / coeff_scale;
  const cplx bq = coeffs_b.a_q / coeff_scale;
  const cplx ac_alpha = coeffs_a.a_c * probe_a.amplitude / coeff_scale;
  const cplx bc_beta = coeffs_b.a_c * probe_b.amplitude / coeff_scale;
  const double root2 = std::sqrt(2.0);

  const int d = n_max + 1;
  std::vector<cplx> amps(static_cast<size_t>(d * d), cplx(0.0, 0.0));
  auto set = [&](int m, int n, cplx val) { amps[static_cast<size_t>(m * d + n)] = val; };

  set(0, 0, u * ac_alpha * ac_alpha + v * bc_beta * bc_beta + w * ac_alpha * bc_beta);
  set(1, 0, u * 2.0 * aq * ac_alpha + w * aq * bc_beta);
  set(0, 1, v * 2.0 * bq * bc_beta + w * ac_alpha * bq);
  set(2, 0, u * root2 * aq * aq);
  set(0, 2, v * root2 * bq * bq);
  set(1, 1, w * aq * bq);

  JointState state;
  state.n_max = n_max;
  state.amplitudes = std::move(amps);
  const auto [weight, scale] = normalize(state.amplitudes);
  const double squared = coeff_scale * coeff_scale;
  if (weight == 0.0 || weight * squared * squared < kZeroWeight) {
    throw ZeroCoincidenceError("conditional_state: coincidence probability is zero for these "
                               "parameters");
  }
  state.raw_weight = weight * squared * squared;
  state.amp_scale = scale * squared;
  return state;
}

double coincidence_weight(const JointState& state) { return state.raw_weight; }

JointState brute_force_oracle(const ScatterCoeffs& coeffs_a, const ScatterCoeffs& coeffs_b,
                              const ProbeField& probe_a, const ProbeField& probe_b,
                              const BeamSplitter& bs, int photon_cutoff) {
  if (photon_cutoff < 8) {
    throw std::invalid_argument("brute_force_oracle: photon_cutoff must be >= 8");
  }
  if (std::abs(probe_a.amplitude) > 1.0 + 1e-12 || std::abs(probe_b.amplitude) > 1.0 + 1e-12) {
    throw std::invalid_argument("brute_force_oracle: probe amplitudes must have magnitude <= 1");
  }

  const int fd = photon_cutoff + 1;
  const TensorSpace space({3, 3, 3, 3, fd, fd});
  const auto coh_a = coherent_amplitudes(probe_a.amplitude, photon_cutoff);
  const auto coh_b = coherent_amplitudes(probe_b.amplitude, photon_cutoff);

  // |Psi_0> = |0,0,0,0> x |alpha> x |beta>
  Vec psi(static_cast<size_t>(space.total), cplx(0.0, 0.0));
  for (int na = 0; na < fd; ++na) {
    for (int nb = 0; nb < fd; ++nb) {
      psi[static_cast<size_t>(na * space.strides[4] + nb * space.strides[5])] =
          coh_a[static_cast<size_t>(na)] * coh_b[static_cast<size_t>(nb)];
    }
  }

  auto apply_ca = [&](const Vec& v) { return apply_scattered_mode(space, coeffs_a, 0, 1, 4, v); };
  auto apply_cb = [&](const Vec& v) { return apply_scattered_mode(space, coeffs_b, 2, 3, 5, v); };

  // C_D1 = t' c_b + r c_a, then C_D2 = t c_a + r' c_b.
  Vec after_d1(static_cast<size_t>(space.total), cplx(0.0, 0.0));
  {
    const Vec ca = apply_ca(psi);
    const Vec cb = apply_cb(psi);
    for (long long i = 0; i < space.total; ++i) {
      after_d1[static_cast<size_t>(i)] = bs.t_prime() * cb[static_cast<size_t>(i)] +
                                         bs.r() * ca[static_cast<size_t>(i)];
    }
  }
  Vec after_d2(static_cast<size_t>(space.total), cplx(0.0, 0.0));
  {
    const Vec ca = apply_ca(after_d1);
    const Vec cb = apply_cb(after_d1);
    for (long long i = 0; i < space.total; ++i) {
      after_d2[static_cast<size_t>(i)] = bs.t() * ca[static_cast<size_t>(i)] +
                                         bs.r_prime() * cb[static_cast<size_t>(i)];
    }
  }

  // Project the fields onto <alpha, beta| and keep the quasiparticle indices.
  std::vector<cplx> quasi(static_cast<size_t>(3 * 3 * 3 * 3), cplx(0.0, 0.0));
  for (long long i = 0; i < space.total; ++i) {
    const cplx z = after_d2[static_cast<size_t>(i)];
    if (z == cplx(0.0, 0.0)) continue;
    const int na = space.occupation(i, 4);
    const int nb = space.occupation(i, 5);
    const int qa = space.occupation(i, 0);
    const int mqa = space.occupation(i, 1);
    const int qb = space.occupation(i, 2);
    const int mqb = space.occupation(i, 3);
    quasi[static_cast<size_t>(((qa * 3 + mqa) * 3 + qb) * 3 + mqb)] +=
        std::conj(coh_a[static_cast<size_t>(na)]) * std::conj(coh_b[static_cast<size_t>(nb)]) * z;
  }

  // The -q modes are only ever annihilated, so they must stay in vacuum.
  double mq_weight = 0.0;
  double all_weight = 0.0;
  for (int qa = 0; qa < 3; ++qa) {
    for (int mqa = 0; mqa < 3; ++mqa) {
      for (int qb = 0; qb < 3; ++qb) {
        for (int mqb = 0; mqb < 3; ++mqb) {
          const double wgt =
              std::norm(quasi[static_cast<size_t>(((qa * 3 + mqa) * 3 + qb) * 3 + mqb)]);
          all_weight += wgt;
          if (mqa > 0 || mqb > 0) mq_weight += wgt;
        }
      }
    }
  }
  if (all_weight > 0.0 && mq_weight > 1e-20 * all_weight) {
    throw std::logic_error("brute_force_oracle: unexpected weight in the -q modes");
  }

  const int n_max = 2;
  std::vector<cplx> amps(static_cast<size_t>((n_max + 1) * (n_max + 1)), cplx(0.0, 0.0));
  for (int m = 0; m <= n_max; ++m) {
    for (int n = 0; n <= n_max; ++n) {
      amps[static_cast<size_t>(m * (n_max + 1) + n)] =
          quasi[static_cast<size_t>(((m * 3 + 0) * 3 + n) * 3 + 0)];
    }
  }
  return JointState::from_unnormalized(n_max, std::move(amps));
}

}  // namespace braggsim
