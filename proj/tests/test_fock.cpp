#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "braggsim/fock.hpp"
#include "test_support.hpp"

using namespace braggsim;
using braggsim::testing::bell_like_state;
using braggsim::testing::random_state;
using braggsim::testing::Rng;
using braggsim::testing::vacuum_state;

TEST_CASE("density matrix of basis and Bell-like states") {
  const DensityMatrix vac = density_matrix(vacuum_state());
  CHECK(vac.entries(0, 0) == cplx(1.0, 0.0));
  double off = 0.0;
  for (int i = 0; i < vac.dim(); ++i) {
    for (int j = 0; j < vac.dim(); ++j) {
      if (i != 0 || j != 0) off += std::abs(vac.entries(i, j));
    }
  }
  CHECK(off == 0.0);

  const DensityMatrix bell = density_matrix(bell_like_state());
  int half_entries = 0;
  for (const cplx& z : bell.entries.data) {
    if (std::abs(z - cplx(0.5, 0.0)) < 1e-12) ++half_entries;
  }
  CHECK(half_entries == 4);

  // purity: spectrum is {1, 0, ..., 0}
  Rng rng(0x00c0ffee12345678ull);
  const auto eigs = hermitian_eigenvalues(density_matrix(random_state(rng)).entries);
  CHECK(eigs.back() == doctest::Approx(1.0).epsilon(1e-10));
  for (size_t k = 0; k + 1 < eigs.size(); ++k) CHECK(std::abs(eigs[k]) < 1e-10);
}

TEST_CASE("density matrix rejects unnormalized amplitudes") {
  JointState bad = vacuum_state();
  bad.amplitudes[0] = cplx(2.0, 0.0);
  CHECK_THROWS_AS(density_matrix(bad), std::invalid_argument);
}

TEST_CASE("partial transpose of a product state stays positive") {
  Rng rng(0x5eed5eed5eed5eedull);
  const JointState product = braggsim::testing::random_separable_state(rng);
  const auto eigs = hermitian_eigenvalues(partial_transpose(density_matrix(product), 2).entries);
  CHECK(eigs.front() > -1e-12);
}

TEST_CASE("partial transpose of the Bell-like state has eigenvalue -1/2") {
  const auto eigs = hermitian_eigenvalues(partial_transpose(density_matrix(bell_like_state()), 2).entries);
  CHECK(eigs.front() == doctest::Approx(-0.5).epsilon(1e-10));
}

TEST_CASE("partial transpose is a trace-preserving involution") {
  Rng rng(0x1234abcd5678ef01ull);
  const DensityMatrix rho = density_matrix(random_state(rng));
  const DensityMatrix pt = partial_transpose(rho, 2);

  cplx trace(0.0, 0.0);
  for (int i = 0; i < pt.dim(); ++i) trace += pt.entries(i, i);
  CHECK(trace.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(trace.imag()) < 1e-14);

  const DensityMatrix back = partial_transpose(pt, 2);
  for (size_t k = 0; k < back.entries.data.size(); ++k) {
    CHECK(std::abs(back.entries.data[k] - rho.entries.data[k]) == 0.0);
  }

  CHECK_THROWS_AS(partial_transpose(rho, 3), std::invalid_argument);
}

TEST_CASE("hermitian eigenvalues: fixed cases") {
  CHECK(hermitian_eigenvalues(Cmat::identity(9)) ==
        std::vector<double>{1, 1, 1, 1, 1, 1, 1, 1, 1});

  Cmat flip(2, 2);
  flip(0, 1) = cplx(1.0, 0.0);
  flip(1, 0) = cplx(1.0, 0.0);
  const auto eigs = hermitian_eigenvalues(flip);
  CHECK(eigs[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian eigensystem: trace identities and residuals on random input") {
  Rng rng(0x0ddba11c0ffee000ull);
  Cmat a(9, 9);
  for (int i = 0; i < 9; ++i) {
    a(i, i) = cplx(rng.uniform(-1.0, 1.0), 0.0);
    for (int j = i + 1; j < 9; ++j) {
      a(i, j) = rng.disc();
      a(j, i) = std::conj(a(i, j));
    }
  }
  const EigenSystem sys = hermitian_eigensystem(a);

  double trace = 0.0, frob2 = 0.0;
  for (int i = 0; i < 9; ++i) trace += a(i, i).real();
  for (const cplx& z : a.data) frob2 += std::norm(z);
  double eig_sum = 0.0, eig_sq = 0.0;
  for (double v : sys.values) {
    eig_sum += v;
    eig_sq += v * v;
  }
  CHECK(eig_sum == doctest::Approx(trace).epsilon(1e-10));
  CHECK(eig_sq == doctest::Approx(frob2).epsilon(1e-10));

  for (int k = 0; k < 9; ++k) {
    double res = 0.0;
    for (int i = 0; i < 9; ++i) {
      cplx acc(0.0, 0.0);
      for (int j = 0; j < 9; ++j) acc += a(i, j) * sys.vectors(j, k);
      acc -= sys.values[static_cast<size_t>(k)] * sys.vectors(i, k);
      res += std::norm(acc);
    }
    CHECK(std::sqrt(res) < 1e-9);
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  Cmat bad(3, 3);
  bad(0, 1) = cplx(1.0, 0.0);
  bad(1, 0) = cplx(0.5, 0.0);
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), std::invalid_argument);
}

TEST_CASE("schmidt coefficients") {
  Rng rng(0xfeedface00000001ull);
  const auto product = schmidt_coefficients(braggsim::testing::random_separable_state(rng));
  CHECK(product[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(product[1] < 1e-12);

  const auto bell = schmidt_coefficients(bell_like_state());
  CHECK(bell[0] == doctest::Approx(0.707107).epsilon(1e-6));
  CHECK(bell[1] == doctest::Approx(0.707107).epsilon(1e-6));
  CHECK(bell[2] < 1e-12);
}

TEST_CASE("balanced coincidence states have Schmidt rank at most two") {
  // cross-shaped amplitude matrix: first row plus first column
  Rng rng(0xb00b1e5deadbeef1ull);
  for (int draw = 0; draw < 20; ++draw) {
    std::vector<cplx> amps(9, cplx(0.0, 0.0));
    amps[0] = rng.disc();
    amps[1] = rng.disc();
    amps[2] = rng.disc();
    amps[3] = rng.disc();
    amps[6] = rng.disc();
    const auto schmidt = schmidt_coefficients(JointState::from_unnormalized(2, amps));
    CHECK(schmidt[2] < 1e-10);
  }
}

TEST_CASE("pt spectrum oracle: fixed cases") {
  const auto pure = pt_spectrum_oracle({1.0, 0.0, 0.0});
  CHECK(pure.back() == doctest::Approx(1.0));
  for (size_t k = 0; k + 1 < pure.size(); ++k) CHECK(std::abs(pure[k]) < 1e-14);

  const double inv = 1.0 / std::sqrt(2.0);
  const auto bell = pt_spectrum_oracle({inv, inv, 0.0});
  CHECK(bell.front() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(bell.back() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(pt_spectrum_oracle({1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("pt spectrum oracle matches direct eigenvalues on random states") {
  Rng rng(0x9090909090909090ull);
  for (int draw = 0; draw < 100; ++draw) {
    const JointState state = random_state(rng);
    const auto direct = hermitian_eigenvalues(partial_transpose(density_matrix(state), 2).entries);
    const auto predicted = pt_spectrum_oracle(schmidt_coefficients(state));
    REQUIRE(direct.size() == predicted.size());
    for (size_t k = 0; k < direct.size(); ++k) {
      CHECK(std::abs(direct[k] - predicted[k]) < 1e-9);
    }
  }
}

TEST_CASE("expectation values on the Bell-like state") {
  const JointState bell = bell_like_state();
  CHECK(expectation(bell, 1, 1, 0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(expectation(bell, 1, 0, 0, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(expectation(bell, 1, 0, 0, 1).imag()) < 1e-14);
}

TEST_CASE("pair moment couples the two-excitation corners") {
  Rng rng(0x8badf00d8badf00dull);
  std::vector<cplx> amps(9, cplx(0.0, 0.0));
  amps[0] = rng.disc();
  amps[2] = rng.disc();   // C[0][2]
  amps[6] = rng.disc();   // C[2][0]
  const JointState state = JointState::from_unnormalized(2, amps);
  const cplx expected = 2.0 * std::conj(state.at(2, 0)) * state.at(0, 2);
  CHECK(std::abs(expectation(state, 2, 0, 0, 2) - expected) < 1e-12);

  // with one corner empty the moment vanishes
  std::vector<cplx> one_sided(9, cplx(0.0, 0.0));
  one_sided[0] = cplx(0.6, 0.0);
  one_sided[2] = cplx(0.8, 0.0);
  CHECK(std::abs(expectation(JointState::from_unnormalized(2, one_sided), 2, 0, 0, 2)) == 0.0);
}

TEST_CASE("number expectations agree with direct weights") {
  Rng rng(0x77777777aaaaaaaaull);
  for (int draw = 0; draw < 50; ++draw) {
    const JointState state = random_state(rng);
    double direct = 0.0;
    for (int m = 0; m <= 2; ++m) {
      for (int n = 0; n <= 2; ++n) direct += (m + n) * std::norm(state.at(m, n));
    }
    const double via_ops =
        expectation(state, 1, 1, 0, 0).real() + expectation(state, 0, 0, 1, 1).real();
    CHECK(via_ops == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("expectation rejects unrepresentable powers") {
  CHECK_THROWS_AS(expectation(vacuum_state(), 3, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(expectation(vacuum_state(), 0, 0, 0, 5), std::invalid_argument);
}
