#include "braggsim/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace braggsim {

namespace {

constexpr double kViolationTol = 1e-12;

/// Pair-operator action on a two-mode vector over a per-mode dimension dL:
///   sign = +1: (A^dag B^dag + A B) |v>
///   sign = -1: (A^dag B^dag - A B) |v> / i
std::vector<cplx> apply_pair_operator(const std::vector<cplx>& v, int d_local, double sign) {
  std::vector<cplx> out(v.size(), cplx(0.0, 0.0));
  const cplx up_factor = sign > 0 ? cplx(1.0, 0.0) : cplx(0.0, -1.0);
  const cplx down_factor = sign > 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
  for (int m = 0; m < d_local; ++m) {
    for (int n = 0; n < d_local; ++n) {
      const cplx z = v[static_cast<size_t>(m * d_local + n)];
      if (z == cplx(0.0, 0.0)) continue;
      if (m + 1 < d_local && n + 1 < d_local) {
        out[static_cast<size_t>((m + 1) * d_local + (n + 1))] +=
            up_factor * std::sqrt(static_cast<double>((m + 1) * (n + 1))) * z;
      }
      if (m > 0 && n > 0) {
        out[static_cast<size_t>((m - 1) * d_local + (n - 1))] +=
            down_factor * std::sqrt(static_cast<double>(m * n)) * z;
      }
    }
  }
  return out;
}

}  // namespace

Su11Moments su11_moments(const JointState& state) {
  Su11Moments mom;
  const double n_a = expectation(state, 1, 1, 0, 0).real();
  const double n_b = expectation(state, 0, 0, 1, 1).real();
  mom.n2 = 2.0 * expectation(state, 1, 1, 1, 1).real();
  mom.n_tot = n_a + n_b + 1.0;
  mom.cross = expectation(state, 1, 0, 0, 1);
  const double pair2 = 2.0 * expectation(state, 2, 0, 0, 2).real();
  const double sym_cross = 2.0 * mom.cross.real();
  mom.m_term = pair2 - sym_cross * sym_cross;
  return mom;
}

WitnessReport su11_inequality(const JointState& state) {
  const Su11Moments mom = su11_moments(state);
  WitnessReport rep;
  rep.n2 = mom.n2;
  rep.n_tot = mom.n_tot;
  rep.m_term = mom.m_term;
  rep.cross = mom.cross;
  rep.var1 = mom.n2 + mom.n_tot + mom.m_term;
  rep.var2 = mom.n2 + mom.n_tot - mom.m_term - 4.0 * std::norm(mom.cross);
  rep.lhs = rep.var1 * rep.var2;
  rep.rhs = mom.n_tot * mom.n_tot;
  rep.violated = rep.lhs < rep.rhs - kViolationTol;
  if (std::abs(mom.n2) <= 1e-12) {
    rep.reduced_form = -mom.m_term * mom.m_term -
                       4.0 * (mom.n_tot + mom.m_term) * std::norm(mom.cross);
  }
  return rep;
}

std::pair<double, double> pt_variance_oracle(const JointState& state) {
  const int d = state.dim();
  const int d_local = d + 2;  // absorbs the two-quantum reach of O^2
  const int dim = d_local * d_local;

  double norm2 = 0.0;
  for (const cplx& z : state.amplitudes) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > 1e-9) {
    throw std::invalid_argument("pt_variance_oracle: state is not normalized");
  }

  // rho^T_B entries: sigma[(i,j),(m,n)] = C(i,n) * conj(C(m,j)), embedded in
  // the enlarged space.
  auto sigma_entry = [&](int i, int j, int m, int n) -> cplx {
    if (i >= d || j >= d || m >= d || n >= d) return cplx(0.0, 0.0);
    return state.at(i, n) * std::conj(state.at(m, j));
  };

  double vars[2];
  for (int which = 0; which < 2; ++which) {
    const double sign = which == 0 ? 1.0 : -1.0;
    cplx tr_o(0.0, 0.0);
    cplx tr_o2(0.0, 0.0);
    // Tr(sigma O) = sum_{k,l} sigma[k][l] (O e_k)[l], k and l over the
    // embedded support.
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) {
        std::vector<cplx> e_k(static_cast<size_t>(dim), cplx(0.0, 0.0));
        e_k[static_cast<size_t>(m * d_local + n)] = cplx(1.0, 0.0);
        const auto o_ek = apply_pair_operator(e_k, d_local, sign);
        const auto o2_ek = apply_pair_operator(o_ek, d_local, sign);
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            const cplx s = sigma_entry(m, n, i, j);
            if (s == cplx(0.0, 0.0)) continue;
            tr_o += s * o_ek[static_cast<size_t>(i * d_local + j)];
            tr_o2 += s * o2_ek[static_cast<size_t>(i * d_local + j)];
          }
        }
      }
    }
    vars[which] = tr_o2.real() - tr_o.real() * tr_o.real();
  }
  return {vars[0], vars[1]};
}

double negativity(const JointState& state) {
  const auto eigs = hermitian_eigenvalues(partial_transpose(density_matrix(state), state.n_max).entries);
  return eigs.front();
}

double duan_simon_xi(const JointState& state) {
  const double n_a = expectation(state, 1, 1, 0, 0).real();
  const double n_b = expectation(state, 0, 0, 1, 1).real();
  const cplx mean_a = expectation(state, 0, 1, 0, 0);
  const cplx mean_b = expectation(state, 0, 0, 0, 1);
  const cplx pair = expectation(state, 0, 1, 0, 1);
  const double mean_x = mean_a.real() + mean_b.real();
  const double mean_p = mean_a.imag() - mean_b.imag();
  return n_a + n_b + 1.0 + 2.0 * pair.real() - mean_x * mean_x - mean_p * mean_p;
}

WitnessReport evaluate_witness(const JointState& state) {
  WitnessReport rep = su11_inequality(state);
  rep.min_pt_eig = negativity(state);
  rep.xi_xp = duan_simon_xi(state);
  return rep;
}

}  // namespace braggsim
