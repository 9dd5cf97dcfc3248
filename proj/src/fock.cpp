#include "braggsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace braggsim {

namespace {

double max_abs_entry(const Cmat& m) {
  double best = 0.0;
  for (const cplx& z : m.data) best = std::max(best, std::abs(z));
  return best;
}

double off_diagonal_norm(const Cmat& m) {
  double sum = 0.0;
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (i != j) sum += std::norm(m(i, j));
    }
  }
  return std::sqrt(sum);
}

void check_hermitian(const Cmat& m, const char* who) {
  if (m.rows != m.cols) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
  const double tol = 1e-10 * std::max(1.0, max_abs_entry(m));
  for (int i = 0; i < m.rows; ++i) {
    for (int j = i; j < m.cols; ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) {
        throw std::invalid_argument(std::string(who) + ": input is not Hermitian to 1e-10");
      }
    }
  }
}

/// Falling product m * (m-1) * ... * (m-k+1); zero when k > m.
double falling_factorial(int m, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= static_cast<double>(m - i);
  return out;
}

}  // namespace

Cmat Cmat::identity(int n) {
  Cmat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = cplx(1.0, 0.0);
  return m;
}

DensityMatrix density_matrix(const JointState& state) {
  double norm2 = 0.0;
  for (const cplx& z : state.amplitudes) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > 1e-9) {
    throw std::invalid_argument("density_matrix: state is not normalized (|norm^2 - 1| = " +
                                std::to_string(std::abs(norm2 - 1.0)) + ")");
  }
  const int dim = state.dim() * state.dim();
  DensityMatrix rho;
  rho.n_max = state.n_max;
  rho.entries = Cmat(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      rho.entries(i, j) = state.amplitudes[static_cast<size_t>(i)] *
                          std::conj(state.amplitudes[static_cast<size_t>(j)]);
    }
  }
  return rho;
}

DensityMatrix partial_transpose(const DensityMatrix& rho, int n_max) {
  const int d = n_max + 1;
  if (rho.entries.rows != d * d || rho.entries.cols != d * d) {
    throw std::invalid_argument("partial_transpose: dimension mismatch (have " +
                                std::to_string(rho.entries.rows) + ", need " +
                                std::to_string(d * d) + ")");
  }
  DensityMatrix out;
  out.n_max = n_max;
  out.entries = Cmat(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
          out.entries(i * d + j, m * d + n) = rho.entries(i * d + n, m * d + j);
        }
      }
    }
  }
  return out;
}

EigenSystem hermitian_eigensystem(const Cmat& matrix) {
  check_hermitian(matrix, "hermitian_eigensystem");
  const int n = matrix.rows;
  Cmat a = matrix;
  Cmat v = Cmat::identity(n);

  const double scale = std::max(1.0, max_abs_entry(a));
  const double target = 1e-14 * scale * n;
  for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = apq / mag;

        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Plane rotation J: J_pp = c, J_pq = s*phase, J_qp = -s*conj(phase),
        // J_qq = c. Update A <- J^dag A J and V <- V J.
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(phase) * akq;
          a(k, q) = s * phase * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s * std::conj(phase) * vkq;
          v(k, q) = s * phase * vkp + c * vkq;
        }
        a(p, q) = cplx(0.0, 0.0);
        a(q, p) = cplx(0.0, 0.0);
      }
    }
  }

  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](int lhs, int rhs) { return a(lhs, lhs).real() < a(rhs, rhs).real(); });

  EigenSystem sys;
  sys.values.resize(static_cast<size_t>(n));
  sys.vectors = Cmat(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<size_t>(k)];
    sys.values[static_cast<size_t>(k)] = a(src, src).real();
    for (int i = 0; i < n; ++i) sys.vectors(i, k) = v(i, src);
  }
  return sys;
}

std::vector<double> hermitian_eigenvalues(const Cmat& matrix) {
  return hermitian_eigensystem(matrix).values;
}

std::vector<double> schmidt_coefficients(const JointState& state) {
  const int d = state.dim();
  // One-sided Jacobi SVD: rotate column pairs until mutually orthogonal and
  // read the singular values off the column norms. Working on C directly
  // (rather than the eigenvalues of C^dag C) keeps near-zero singular values
  // accurate to machine precision instead of sqrt(eps).
  std::vector<cplx> col(static_cast<size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) col[static_cast<size_t>(j) * d + i] = state.at(i, j);
  }
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        double a = 0.0, b = 0.0;
        cplx g(0.0, 0.0);
        for (int i = 0; i < d; ++i) {
          const cplx cp = col[static_cast<size_t>(p) * d + i];
          const cplx cq = col[static_cast<size_t>(q) * d + i];
          a += std::norm(cp);
          b += std::norm(cq);
          g += std::conj(cp) * cq;
        }
        const double mag = std::abs(g);
        if (mag <= 1e-15 * std::sqrt(a * b) + 1e-300) continue;
        const cplx phase = g / mag;
        const double theta = (b - a) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int i = 0; i < d; ++i) {
          const cplx cp = col[static_cast<size_t>(p) * d + i];
          const cplx cq = col[static_cast<size_t>(q) * d + i];
          col[static_cast<size_t>(p) * d + i] = c * cp - s * std::conj(phase) * cq;
          col[static_cast<size_t>(q) * d + i] = s * phase * cp + c * cq;
        }
        rotated = true;
      }
    }
    if (!rotated) break;
  }
  std::vector<double> out(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    double norm2 = 0.0;
    for (int i = 0; i < d; ++i) norm2 += std::norm(col[static_cast<size_t>(j) * d + i]);
    out[static_cast<size_t>(j)] = std::sqrt(norm2);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> pt_spectrum_oracle(const std::vector<double>& schmidt) {
  double total = 0.0;
  for (double lam : schmidt) total += lam * lam;
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("pt_spectrum_oracle: Schmidt values must satisfy sum of "
                                "squares = 1");
  }
  std::vector<double> spectrum;
  spectrum.reserve(schmidt.size() * schmidt.size());
  for (size_t i = 0; i < schmidt.size(); ++i) {
    spectrum.push_back(schmidt[i] * schmidt[i]);
    for (size_t j = i + 1; j < schmidt.size(); ++j) {
      spectrum.push_back(schmidt[i] * schmidt[j]);
      spectrum.push_back(-schmidt[i] * schmidt[j]);
    }
  }
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

cplx expectation(const JointState& state, int p, int q, int r, int s) {
  if (p < 0 || q < 0 || r < 0 || s < 0) {
    throw std::invalid_argument("expectation: powers must be nonnegative");
  }
  const int n_max = state.n_max;
  if (p > n_max || q > n_max || r > n_max || s > n_max) {
    throw std::invalid_argument("expectation: powers (" + std::to_string(p) + "," +
                                std::to_string(q) + "," + std::to_string(r) + "," +
                                std::to_string(s) + ") exceed representable transitions at "
                                "n_max = " + std::to_string(n_max));
  }
  cplx sum(0.0, 0.0);
  for (int m = q; m <= n_max; ++m) {
    const int m2 = m - q + p;
    if (m2 > n_max) continue;
    for (int n = s; n <= n_max; ++n) {
      const int n2 = n - s + r;
      if (n2 > n_max) continue;
      const cplx term = std::conj(state.at(m2, n2)) * state.at(m, n);
      if (term == cplx(0.0, 0.0)) continue;
      const double ladder = std::sqrt(falling_factorial(m, q) * falling_factorial(m2, p) *
                                      falling_factorial(n, s) * falling_factorial(n2, r));
      sum += term * ladder;
    }
  }
  return sum;
}

}  // namespace braggsim
