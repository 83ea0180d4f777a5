#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fansq/errors.hpp"
#include "fansq/fanstate.hpp"
#include "fansq/fockoracle.hpp"
#include "oracles.hpp"

using namespace fansq;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TEST_CASE("ladder operators") {
  const FockVector a0 = apply_annihilation(FockVector::basis(0, 6));
  for (const auto& x : a0.amps) CHECK(x == cd{});

  const FockVector a1 = apply_annihilation(FockVector::basis(1, 6));
  CHECK(a1.amps[0] == cd(1.0, 0.0));

  FockVector s;
  s.amps.assign(8, {});
  s.amps[0] = s.amps[4] = 1.0 / std::sqrt(2.0);
  const FockVector as = apply_annihilation(s);
  CHECK(std::abs(as.amps[3] - cd(2.0 / std::sqrt(2.0), 0.0)) < 1e-15);
  CHECK(std::abs(as.amps[0]) == 0.0);

  const FockVector c = apply_creation(FockVector::basis(2, 6));
  CHECK(std::abs(c.amps[3] - cd(std::sqrt(3.0), 0.0)) < 1e-15);
  const FockVector edge = apply_creation(FockVector::basis(5, 6));
  CHECK(edge.tail_mass == doctest::Approx(6.0));
}

TEST_CASE("quadrature moments of Fock states") {
  for (double phi : {0.0, 0.4, 1.3, 2.9}) {
    const FockVector vac = FockVector::basis(0, 16);
    CHECK(quadrature_moment(vac, phi, 2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(quadrature_moment(vac, phi, 4) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(quadrature_moment(vac, phi, 6) == doctest::Approx(15.0 / 8.0).epsilon(1e-14));
    const FockVector one = FockVector::basis(1, 16);
    CHECK(quadrature_moment(one, phi, 2) == doctest::Approx(1.5).epsilon(1e-14));
    // (3/4)(2n^2 + 2n + 1)
    CHECK(quadrature_moment(one, phi, 4) == doctest::Approx(3.75).epsilon(1e-14));
  }
  CHECK_THROWS_AS(quadrature_moment(FockVector::basis(3, 6), 0.0, 4), TruncationTooSmall);
  CHECK_THROWS_AS(quadrature_moment(FockVector::basis(0, 6), 0.0, 3), DomainError);
}

TEST_CASE("quadrature moment of a displaced-like superposition") {
  // (|0> + |1>)/sqrt2 at phi = 0: mean sqrt2/2, variance 1/2 + 1/2 - 1/2 = 1/2
  FockVector v;
  v.amps.assign(8, {});
  v.amps[0] = v.amps[1] = 1.0 / std::sqrt(2.0);
  CHECK(quadrature_moment(v, 0.0, 2) == doctest::Approx(0.5).epsilon(1e-14));
  // at phi = pi/2 the mean vanishes and <X^2> = 1
  CHECK(quadrature_moment(v, kPi / 2, 2) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("moment oracle basics") {
  const FockVector vac = FockVector::basis(0, 8);
  CHECK(moment_oracle(vac, 0, 0) == cd(1.0, 0.0));
  CHECK(moment_oracle(vac, 1, 1) == cd{});
  const FockVector three = FockVector::basis(3, 12);
  CHECK(moment_oracle(three, 2, 2).real() == doctest::Approx(6.0));
  CHECK_THROWS_AS(moment_oracle(FockVector::basis(3, 5), 2, 2), TruncationTooSmall);
}

TEST_CASE("moment oracle is Hermitian exactly") {
  std::mt19937 rng(99);
  std::normal_distribution<double> g;
  FockVector v;
  v.amps.resize(30);
  for (int n = 0; n < 12; ++n) v.amps[n] = cd(g(rng), g(rng));
  v.normalize();
  for (int l = 0; l <= 8; ++l)
    for (int m = 0; m <= 8; ++m) CHECK(moment_oracle(v, l, m) == std::conj(moment_oracle(v, m, l)));
}

TEST_CASE("moment oracle selection rule on fan states") {
  for (int k = 1; k <= 3; ++k) {
    const FockVector v = oracle::superposed_fan_state(k, 0.5L, 0.25L, 120);
    for (int l = 0; l <= 12; ++l)
      for (int m = 0; m <= 12; ++m)
        if ((l - m) % (4 * k) != 0) CHECK(std::abs(moment_oracle(v, l, m)) < 1e-12);
  }
}

TEST_CASE("eigen residual") {
  const FanState vac(FanConfig::identity(1, 0.0));
  CHECK(eigen_residual(vac.config(), oracle_vector(vac, 8)) == 0.0);
  const FanState a(FanConfig::identity(1, 0.5));
  CHECK(eigen_residual(a.config(), oracle_vector(a, 8)) <= 1e-10);
  const FanState b(FanConfig::trapped_ion(2, 0.2, 0.3));
  CHECK(eigen_residual(b.config(), oracle_vector(b, 8)) <= 1e-10);
  // A vector that is not an eigenstate.
  FockVector w = oracle::superposed_fan_state(1, 0.5L, 0.0L, 40);
  w.amps[4] *= 1.1;
  w.normalize();
  CHECK(eigen_residual(a.config(), w) > 1e-4);
}

TEST_CASE("support check") {
  CHECK(support_check(oracle::superposed_fan_state(1, 0.5L, 0.0L, 60), 1));
  CHECK(support_check(oracle::superposed_fan_state(3, 0.5L, 0.2L, 120), 3));
  CHECK(!support_check(oracle::single_component(1, 0.5L, 40), 1));
}

TEST_CASE("oracle dimension policy") {
  const FanState st(FanConfig::trapped_ion(2, 0.5, 0.2));
  const int n = st.levels_for_tail(kOracleTailTol);
  CHECK(oracle_dimension(st, 12) == 8 * n + 12 + 1);
  const FockVector v = oracle_vector(st, 12);
  CHECK(v.dim() == oracle_dimension(st, 12));
  CHECK(v.tail_mass < 1e-14);
  CHECK(v.support_extent() + 12 <= v.dim());
}

TEST_CASE("quadrature moment is insensitive to truncation and has the state symmetry") {
  for (int k = 1; k <= 3; ++k) {
    const FanState st(FanConfig::trapped_ion(k, 0.3, 0.2));
    const FockVector v = oracle_vector(st, 4 * k);
    FockVector big = v;
    big.amps.resize(2 * v.amps.size());
    for (double phi : {0.0, 0.3, kPi / (4 * k)}) {
      const double q = quadrature_moment(v, phi, 4 * k);
      CHECK(std::fabs(quadrature_moment(big, phi, 4 * k) - q) < 1e-10);
      CHECK(std::fabs(quadrature_moment(v, phi + kPi / (2 * k), 4 * k) - q) < 1e-10);
    }
  }
}
