#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "braggsim/optics.hpp"
#include "test_support.hpp"

using namespace braggsim;
using braggsim::testing::Rng;

namespace {

const double kRoot2Inv = 1.0 / std::sqrt(2.0);

double reciprocity_defect(const BeamSplitter& bs) {
  const cplx first = std::conj(bs.r()) * bs.t_prime() + bs.r_prime() * std::conj(bs.t());
  const cplx second = std::conj(bs.r()) * bs.t() + bs.r_prime() * std::conj(bs.t_prime());
  const double unit = std::abs(std::norm(bs.r()) + std::norm(bs.t()) - 1.0);
  return std::max({std::abs(first), std::abs(second), unit});
}

}  // namespace

TEST_CASE("balanced splitter with zero phases") {
  const BeamSplitter bs = make_beam_splitter(kRoot2Inv, 0.0, 0.0);
  CHECK(std::abs(bs.r() - cplx(0.0, 0.707107)) < 1e-6);
  CHECK(std::abs(bs.r_prime() - cplx(0.0, 0.707107)) < 1e-6);
  CHECK(std::abs(bs.t() - cplx(0.707107, 0.0)) < 1e-6);
  CHECK(std::abs(bs.t_prime() - cplx(0.707107, 0.0)) < 1e-6);
}

TEST_CASE("fully transmissive boundary") {
  const BeamSplitter bs = make_beam_splitter(1.0, 0.0, 0.0);
  CHECK(std::abs(bs.r()) == 0.0);
  CHECK(std::abs(bs.r_prime()) == 0.0);
  CHECK(std::abs(bs.t() - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("reciprocity at a specific unbalanced setting") {
  const BeamSplitter bs = make_beam_splitter(kRoot2Inv, 0.3, 0.1);
  CHECK(std::abs(std::conj(bs.r()) * bs.t_prime() + bs.r_prime() * std::conj(bs.t())) < 1e-15);
}

TEST_CASE("t_mag domain errors") {
  CHECK_THROWS_AS(make_beam_splitter(-0.1, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(make_beam_splitter(1.1, 0.0, 0.0), std::domain_error);
}

TEST_CASE("unitarity and reciprocity over random parameters") {
  Rng rng(0x51a9f3c2d87e6b01ull);
  for (int draw = 0; draw < 1000; ++draw) {
    const BeamSplitter bs = make_beam_splitter(rng.uniform(0.0, 1.0), rng.uniform(-3.2, 3.2),
                                               rng.uniform(-3.2, 3.2));
    CHECK(reciprocity_defect(bs) < 1e-12);

    const DetectorCouplings dc = detector_couplings(bs);
    // rows of [[d1_a, d1_b], [d2_a, d2_b]] orthonormal
    const cplx row_dot = std::conj(dc.d1_a) * dc.d2_a + std::conj(dc.d1_b) * dc.d2_b;
    CHECK(std::abs(std::norm(dc.d1_a) + std::norm(dc.d1_b) - 1.0) < 1e-12);
    CHECK(std::abs(std::norm(dc.d2_a) + std::norm(dc.d2_b) - 1.0) < 1e-12);
    CHECK(std::abs(row_dot) < 1e-12);

    // direct expansion of the coincidence cross coupling
    const cplx w = bs.r() * bs.r_prime() + bs.t() * bs.t_prime();
    const cplx expected = std::polar(1.0, bs.phi + bs.phi_prime) *
                          (bs.t_mag * bs.t_mag - bs.r_mag() * bs.r_mag());
    CHECK(std::abs(w - expected) < 1e-12);
  }
}

TEST_CASE("balanced cancellation of the cross coupling") {
  Rng rng(0xabcdef0123456789ull);
  for (int draw = 0; draw < 100; ++draw) {
    const BeamSplitter bs =
        make_beam_splitter(kRoot2Inv, rng.uniform(-3.2, 3.2), rng.uniform(-3.2, 3.2));
    CHECK(std::abs(bs.r() * bs.r_prime() + bs.t() * bs.t_prime()) < 1e-12);
  }
}

TEST_CASE("detector couplings at the balanced zero-phase point") {
  const DetectorCouplings dc = detector_couplings(make_beam_splitter(kRoot2Inv, 0.0, 0.0));
  CHECK(std::abs(dc.d1_a - cplx(0.0, 0.707107)) < 1e-6);
  CHECK(std::abs(dc.d1_b - cplx(0.707107, 0.0)) < 1e-6);
  CHECK(std::abs(dc.d2_a - cplx(0.707107, 0.0)) < 1e-6);
  CHECK(std::abs(dc.d2_b - cplx(0.0, 0.707107)) < 1e-6);
}
