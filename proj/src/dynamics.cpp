#include "braggsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace braggsim {

namespace {

constexpr double kEtaSanityBound = 1e3;
constexpr double kImagExponentBound = 600.0;

Mat3 scaled(const Mat3& m, cplx factor) {
  Mat3 out;
  for (size_t k = 0; k < 9; ++k) out.a[k] = m.a[k] * factor;
  return out;
}

Mat3 add(const Mat3& lhs, const Mat3& rhs) {
  Mat3 out;
  for (size_t k = 0; k < 9; ++k) out.a[k] = lhs.a[k] + rhs.a[k];
  return out;
}

double one_norm(const Mat3& m) {
  double best = 0.0;
  for (int j = 0; j < 3; ++j) {
    double col = 0.0;
    for (int i = 0; i < 3; ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

double frobenius(const Mat3& m) {
  double sum = 0.0;
  for (const cplx& z : m.a) sum += std::norm(z);
  return std::sqrt(sum);
}

bool all_finite(const Mat3& m) {
  for (const cplx& z : m.a) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

/// exp(A) by scaling-and-squaring with a Taylor series on the scaled matrix.
Mat3 exp_mat3(const Mat3& a_mat) {
  int s = 0;
  double nrm = one_norm(a_mat);
  while (nrm > 0.25 && s < 64) {
    nrm *= 0.5;
    ++s;
  }
  const Mat3 b = scaled(a_mat, cplx(std::ldexp(1.0, -s), 0.0));

  Mat3 result = Mat3::identity();
  Mat3 term = Mat3::identity();
  for (int k = 1; k <= 32; ++k) {
    term = scaled(term * b, cplx(1.0 / k, 0.0));
    result = add(result, term);
    if (frobenius(term) < 1e-20 * frobenius(result)) break;
  }
  for (int k = 0; k < s; ++k) result = result * result;
  return result;
}

/// Roots of the monic cubic z^3 + a z^2 + b z + c, Newton-polished.
std::array<cplx, 3> solve_cubic(cplx a, cplx b, cplx c) {
  const cplx third = cplx(1.0 / 3.0, 0.0);
  const cplx p = b - a * a * third;
  const cplx q = a * a * a * (2.0 / 27.0) - a * b * third + c;

  std::array<cplx, 3> roots;
  const cplx disc = q * q * 0.25 + p * p * p / 27.0;
  const cplx sq = std::sqrt(disc);
  cplx u3 = -q * 0.5 + sq;
  if (std::abs(u3) < std::abs(-q * 0.5 - sq)) u3 = -q * 0.5 - sq;
  if (std::abs(u3) == 0.0) {
    roots = {-a * third, -a * third, -a * third};
  } else {
    const cplx u = std::pow(u3, third);
    const cplx omega(-0.5, std::sqrt(3.0) / 2.0);
    cplx uk = u;
    for (int k = 0; k < 3; ++k) {
      const cplx w = uk - p / (3.0 * uk);
      roots[static_cast<size_t>(k)] = w - a * third;
      uk *= omega;
    }
  }

  for (cplx& z : roots) {
    for (int it = 0; it < 4; ++it) {
      const cplx f = ((z + a) * z + b) * z + c;
      const cplx df = (3.0 * z + 2.0 * a) * z + b;
      if (std::abs(df) == 0.0) break;
      const cplx dz = f / df;
      // near a repeated root the derivative is tiny and Newton can jump away
      // from the already-accurate Cardano value
      if (std::abs(dz) > 0.5 * (1.0 + std::abs(z))) break;
      z -= dz;
      if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
  }
  return roots;
}

std::array<cplx, 3> cross(const std::array<cplx, 3>& x, const std::array<cplx, 3>& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

double norm3(const std::array<cplx, 3>& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

std::array<cplx, 3> eigenvalues_of(const Mat3& m) {
  const cplx tr = m(0, 0) + m(1, 1) + m(2, 2);
  const cplx minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) +
                      m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                      m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  const cplx det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  return solve_cubic(-tr, minors, -det);
}

ScatterCoeffs coeffs_from_propagator(const Mat3& p, double tau) {
  ScatterCoeffs out;
  out.a_q = std::conj(p(2, 0));
  out.a_minus_q = std::conj(p(2, 1));
  out.a_c = std::conj(p(2, 2));
  out.tau = tau;
  return out;
}

}  // namespace

Mat3 Mat3::identity() {
  Mat3 m;
  m(0, 0) = m(1, 1) = m(2, 2) = cplx(1.0, 0.0);
  return m;
}

Mat3 operator*(const Mat3& lhs, const Mat3& rhs) {
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      cplx sum(0.0, 0.0);
      for (int k = 0; k < 3; ++k) sum += lhs(i, k) * rhs(k, j);
      out(i, j) = sum;
    }
  }
  return out;
}

double ScatterCoeffs::symplectic_defect() const {
  const double sum = std::norm(a_c) + std::norm(a_minus_q) - std::norm(a_q);
  const double scale = std::norm(a_c) + std::norm(a_minus_q) + std::norm(a_q);
  return std::abs(sum - 1.0) / std::max(1.0, scale);
}

Mat3 build_m_matrix(const CondensateDrive& drive) {
  const cplx eta = drive.eta_tilde;
  if (!std::isfinite(eta.real()) || !std::isfinite(eta.imag()) ||
      !std::isfinite(drive.delta_tilde)) {
    throw std::invalid_argument("build_m_matrix: drive parameters must be finite");
  }
  if (std::abs(eta) >= kEtaSanityBound) {
    throw std::invalid_argument("build_m_matrix: |eta_tilde| must be < 1e3, got " +
                                std::to_string(std::abs(eta)));
  }
  Mat3 m;
  m(0, 0) = cplx(-1.0, 0.0);
  m(0, 2) = -eta;
  m(1, 1) = cplx(1.0, 0.0);
  m(1, 2) = eta;
  m(2, 0) = std::conj(eta);
  m(2, 1) = std::conj(eta);
  m(2, 2) = cplx(-drive.delta_tilde, 0.0);
  return m;
}

PropagatorDecomposition decompose(const CondensateDrive& drive) {
  PropagatorDecomposition dec;
  dec.m_matrix = build_m_matrix(drive);
  dec.eigenvalues = eigenvalues_of(dec.m_matrix);

  for (int k = 0; k < 3; ++k) {
    const cplx lambda = dec.eigenvalues[static_cast<size_t>(k)];
    std::array<std::array<cplx, 3>, 3> rows;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        rows[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            dec.m_matrix(i, j) - (i == j ? lambda : cplx(0.0, 0.0));
      }
    }
    // Kernel vector of the rank-2 matrix: the largest pairwise row cross
    // product is orthogonal (bilinearly) to every row.
    std::array<cplx, 3> best{};
    double best_norm = -1.0;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs) {
      const auto cand = cross(rows[static_cast<size_t>(pr[0])], rows[static_cast<size_t>(pr[1])]);
      const double n = norm3(cand);
      if (n > best_norm) {
        best_norm = n;
        best = cand;
      }
    }
    const double n = norm3(best);
    if (n > 0.0) {
      for (cplx& z : best) z /= n;
    }
    for (int i = 0; i < 3; ++i) dec.d_matrix(i, k) = best[static_cast<size_t>(i)];
  }

  const Mat3& d = dec.d_matrix;
  const cplx det = d(0, 0) * (d(1, 1) * d(2, 2) - d(1, 2) * d(2, 1)) -
                   d(0, 1) * (d(1, 0) * d(2, 2) - d(1, 2) * d(2, 0)) +
                   d(0, 2) * (d(1, 0) * d(2, 1) - d(1, 1) * d(2, 0));
  if (std::abs(det) < 1e-300) {
    dec.condition_estimate = std::numeric_limits<double>::infinity();
    return dec;
  }
  Mat3 inv;
  inv(0, 0) = (d(1, 1) * d(2, 2) - d(1, 2) * d(2, 1)) / det;
  inv(0, 1) = (d(0, 2) * d(2, 1) - d(0, 1) * d(2, 2)) / det;
  inv(0, 2) = (d(0, 1) * d(1, 2) - d(0, 2) * d(1, 1)) / det;
  inv(1, 0) = (d(1, 2) * d(2, 0) - d(1, 0) * d(2, 2)) / det;
  inv(1, 1) = (d(0, 0) * d(2, 2) - d(0, 2) * d(2, 0)) / det;
  inv(1, 2) = (d(0, 2) * d(1, 0) - d(0, 0) * d(1, 2)) / det;
  inv(2, 0) = (d(1, 0) * d(2, 1) - d(1, 1) * d(2, 0)) / det;
  inv(2, 1) = (d(0, 1) * d(2, 0) - d(0, 0) * d(2, 1)) / det;
  inv(2, 2) = (d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0)) / det;
  dec.d_inverse = inv;
  dec.condition_estimate = frobenius(d) * frobenius(inv);
  return dec;
}

Mat3 propagator(const CondensateDrive& drive, double tau) {
  const Mat3 m = build_m_matrix(drive);
  return exp_mat3(scaled(m, cplx(0.0, tau)));
}

ScatterCoeffs propagate(const CondensateDrive& drive, double tau) {
  if (tau < 0.0 || !std::isfinite(tau)) {
    throw std::domain_error("propagate: tau must be >= 0 and finite, got " +
                            std::to_string(tau));
  }
  const Mat3 m = build_m_matrix(drive);
  double max_imag = 0.0;
  for (const cplx& lambda : eigenvalues_of(m)) {
    max_imag = std::max(max_imag, std::abs(lambda.imag()));
  }
  if (max_imag * tau > kImagExponentBound) {
    throw std::overflow_error(
        "propagate: max|Im lambda| * tau = " + std::to_string(max_imag * tau) +
        " exceeds " + std::to_string(kImagExponentBound) +
        "; the propagator is not representable in double precision");
  }
  const Mat3 p = exp_mat3(scaled(m, cplx(0.0, tau)));
  if (!all_finite(p)) {
    throw std::overflow_error("propagate: non-finite matrix exponential (max|Im lambda|*tau = " +
                              std::to_string(max_imag * tau) + ")");
  }
  return coeffs_from_propagator(p, tau);
}

ScatterCoeffs propagate_eigen(const PropagatorDecomposition& dec, double tau) {
  if (tau < 0.0 || !std::isfinite(tau)) {
    throw std::domain_error("propagate_eigen: tau must be >= 0 and finite");
  }
  Mat3 e;
  for (int k = 0; k < 3; ++k) {
    e(k, k) = std::exp(cplx(0.0, tau) * dec.eigenvalues[static_cast<size_t>(k)]);
  }
  return coeffs_from_propagator(dec.d_matrix * e * dec.d_inverse, tau);
}

ScatterCoeffs propagate_ode_oracle(const CondensateDrive& drive, double tau, double step) {
  if (tau < 0.0 || !std::isfinite(tau)) {
    throw std::domain_error("propagate_ode_oracle: tau must be >= 0 and finite");
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument("propagate_ode_oracle: step must be > 0");
  }
  if (tau > 0.0 && step > tau / 10.0) {
    throw std::invalid_argument("propagate_ode_oracle: step " + std::to_string(step) +
                                " too large for tau " + std::to_string(tau) +
                                " (need step <= tau/10)");
  }
  Mat3 p = Mat3::identity();
  if (tau == 0.0) return coeffs_from_propagator(p, tau);

  const Mat3 im = scaled(build_m_matrix(drive), cplx(0.0, 1.0));
  const auto n_steps = static_cast<long long>(std::ceil(tau / step - 1e-12));
  const double h = tau / static_cast<double>(n_steps);
  for (long long i = 0; i < n_steps; ++i) {
    const Mat3 k1 = im * p;
    const Mat3 k2 = im * add(p, scaled(k1, cplx(0.5 * h, 0.0)));
    const Mat3 k3 = im * add(p, scaled(k2, cplx(0.5 * h, 0.0)));
    const Mat3 k4 = im * add(p, scaled(k3, cplx(h, 0.0)));
    Mat3 incr = add(add(k1, scaled(k2, cplx(2.0, 0.0))), add(scaled(k3, cplx(2.0, 0.0)), k4));
    p = add(p, scaled(incr, cplx(h / 6.0, 0.0)));
  }
  return coeffs_from_propagator(p, tau);
}

}  // namespace braggsim
