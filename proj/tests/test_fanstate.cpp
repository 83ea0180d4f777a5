#include <doctest.h>

#include <cmath>
#include <thread>

#include "fansq/errors.hpp"
#include "fansq/fanstate.hpp"
#include "fansq/fockoracle.hpp"
#include "fansq/specfun.hpp"
#include "oracles.hpp"

using namespace fansq;

namespace {

// First positive zero of L_6^0, located by bisection on the explicit sum.
double laguerre6_first_zero() {
  double lo = 0.2, hi = 0.25;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((oracle::laguerre_sum(6, 0, lo) > 0) == (oracle::laguerre_sum(6, 0, mid) > 0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("f_eval") {
  CHECK(f_eval(NonlinearModel::identity(), 7).to_real() == 1.0);
  CHECK(f_eval(NonlinearModel::identity(), 0).to_real() == 1.0);
  for (double eta_sq : {0.05, 0.3, 0.9})
    CHECK(f_eval(NonlinearModel::trapped_ion(eta_sq, 2), 2).to_real() ==
          doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f_eval(NonlinearModel::trapped_ion(0.2, 2), 4).to_real() ==
        doctest::Approx(10.44 / 14.88).epsilon(1e-14));
  for (int m = 6; m <= 40; ++m) {
    const auto model = NonlinearModel::trapped_ion(0.37, 6);
    CHECK(f_eval(model, m).to_real() ==
          doctest::Approx(static_cast<double>(oracle::trapped_f(0.37L, 6, m))).epsilon(1e-11));
  }
  CHECK_THROWS_AS(f_eval(NonlinearModel::trapped_ion(0.2, 2), 1), DomainError);
  CHECK_THROWS_AS(NonlinearModel::trapped_ion(0.0, 2), DomainError);
  CHECK_THROWS_AS(NonlinearModel::trapped_ion(0.2, 0), DomainError);
}

TEST_CASE("f_eval is singular at Laguerre zeros") {
  const double root = laguerre6_first_zero();
  CHECK(root == doctest::Approx(0.222847).epsilon(1e-5));
  const auto model = NonlinearModel::trapped_ion(root, 6);
  CHECK_THROWS_AS(f_eval(model, 12), SingularNonlinearity);
  try {
    f_eval(model, 12);
  } catch (const SingularNonlinearity& e) {
    CHECK(e.level() == 12);
  }
  CHECK_NOTHROW(f_eval(model, 12, 0.0));
}

TEST_CASE("f_product") {
  CHECK(f_product(NonlinearModel::identity(), 3, 4).to_real() == 1.0);
  CHECK(f_product(NonlinearModel::trapped_ion(0.2, 4), 3, 4).to_real() == 1.0);
  CHECK(f_product(NonlinearModel::identity(), 12, 2).to_real() == 1.0);
  CHECK(f_product(NonlinearModel::trapped_ion(0.2, 2), 4, 2).to_real() ==
        doctest::Approx(0.5 * 10.44 / 14.88).epsilon(1e-14));
  const auto model = NonlinearModel::trapped_ion(0.3, 4);
  long double want = 1.0L;
  for (int p = 4; p <= 40; p += 4) {
    want *= oracle::trapped_f(0.3L, 4, p);
    CHECK(f_product(model, p, 4).to_real() ==
          doctest::Approx(static_cast<double>(want)).epsilon(1e-11));
  }
}

TEST_CASE("normalization") {
  for (double eta_sq : {0.0, 0.3}) {
    const auto c1 = eta_sq > 0 ? FanConfig::trapped_ion(1, 0.0, eta_sq) : FanConfig::identity(1, 0.0);
    const auto c2 = eta_sq > 0 ? FanConfig::trapped_ion(2, 0.0, eta_sq) : FanConfig::identity(2, 0.0);
    CHECK(normalization(c1) == 4.0);
    CHECK(normalization(c2) == 16.0);
  }
  for (int k = 1; k <= 3; ++k) {
    for (double xi_sq : {0.05, 0.5, 2.0, 6.0}) {
      const double want = static_cast<double>(oracle::identity_normalization(k, xi_sq));
      CHECK(normalization(FanConfig::identity(k, xi_sq)) == doctest::Approx(want).epsilon(1e-13));
    }
  }
  // k = 1 closed form
  const double y = 0.5;
  CHECK(normalization(FanConfig::identity(1, y)) ==
        doctest::Approx(2.0 * (std::cosh(y) + std::cos(y))).epsilon(1e-15));
}

TEST_CASE("normalization equals the squared norm of the unnormalized coefficients") {
  for (int k = 1; k <= 3; ++k) {
    for (double eta_sq : {0.1, 0.3}) {
      const long double y = 0.5L;
      long double sum = 0.0L, prod = 1.0L, fact = 1.0L;
      for (int n = 0; n < 40; ++n) {
        const int level = 4 * k * n;
        if (n > 0) {
          for (int j = level - 4 * k + 1; j <= level; ++j) fact *= j;
          prod *= oracle::trapped_f(eta_sq, 2 * k, level) *
                  oracle::trapped_f(eta_sq, 2 * k, level - 2 * k);
        }
        sum += 4.0L * k * k * std::pow(y, level) / (fact * prod * prod);
      }
      CHECK(normalization(FanConfig::trapped_ion(k, 0.5, eta_sq)) ==
            doctest::Approx(static_cast<double>(sum)).epsilon(1e-10));
    }
  }
}

TEST_CASE("moments: trivial values and selection rules") {
  for (int k = 1; k <= 3; ++k) {
    for (double eta_sq : {0.0, 0.3}) {
      const auto cfg = eta_sq > 0 ? FanConfig::trapped_ion(k, 0.4, eta_sq) : FanConfig::identity(k, 0.4);
      const FanState st(cfg);
      CHECK(st.moment(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(st.moment(1, 0) == 0.0);
      CHECK(st.moment(0, 1) == 0.0);
      for (int l = 0; l <= 12; ++l) {
        for (int m = 0; m <= 12; ++m) {
          if ((l - m) % (2 * k) != 0) CHECK(st.moment(l, m) == 0.0);
          // odd multiples of 2k also vanish
          if ((l - m) % (2 * k) == 0 && ((l - m) / (2 * k)) % 2 != 0) CHECK(st.moment(l, m) == 0.0);
          CHECK(st.moment(l, m) == st.moment(m, l));
        }
        CHECK(st.moment(l, l) > 0.0);
      }
    }
  }
}

TEST_CASE("the two filtered-exponential oracles agree") {
  for (int k = 1; k <= 3; ++k)
    for (long double y : {0.7L, 1.5L, 4.0L})
      for (int d = 0; d <= 12; ++d) {
        // The unity filter loses ~e^y * eps / g in cancellation; skip where that bites.
        if (oracle::filtered_exp_derivative(k, y, d) < 1e-4L) continue;
        CHECK(oracle::close(static_cast<double>(oracle::filtered_exp_derivative(k, y, d)),
                            static_cast<double>(oracle::filtered_exp_derivative_unity(k, y, d)), 1e-13));
      }
}

TEST_CASE("identity moments match filtered-exponential closed forms") {
  for (int k = 1; k <= 3; ++k) {
    for (double xi_sq : {0.05, 0.2, 0.5, 1.5}) {
      const FanState st(FanConfig::identity(k, xi_sq));
      for (int m = 0; m <= 10; ++m) {
        INFO("k=" << k << " xi_sq=" << xi_sq << " m=" << m);
        const double diag = static_cast<double>(oracle::identity_diagonal_moment(k, xi_sq, m));
        CHECK(oracle::close(st.moment(m, m), diag, 1e-11));
        for (int p = 1; 4 * p * k <= 12; ++p) {
          const double off = static_cast<double>(oracle::identity_offset_moment(k, xi_sq, m, p));
          CHECK(oracle::close(st.moment(m + 4 * p * k, m), off, 1e-11));
        }
      }
    }
  }
  // <n> ~ xi^8/6 for small xi at k = 1
  const double xi_sq = 0.05;
  CHECK(moment(FanConfig::identity(1, xi_sq), 1, 1) ==
        doctest::Approx(std::pow(xi_sq, 4) / 6.0).epsilon(1e-3));
}

TEST_CASE("trapped-ion moments match the literal superposition") {
  for (int k = 1; k <= 3; ++k) {
    for (double eta_sq : {0.1, 0.3}) {
      for (double xi_sq : {0.05, 0.2, 0.5}) {
        const FanState st(FanConfig::trapped_ion(k, xi_sq, eta_sq));
        const FockVector v = oracle::superposed_fan_state(k, xi_sq, eta_sq, 160);
        for (int l = 0; l <= 8; ++l) {
          for (int m = 0; m <= l; ++m) {
            INFO("k=" << k << " eta_sq=" << eta_sq << " xi_sq=" << xi_sq << " l=" << l << " m=" << m);
            const double want = moment_oracle(v, l, m).real();
            CHECK(oracle::close(st.moment(l, m), want, 1e-9, 1e-13));
          }
        }
      }
    }
  }
}

TEST_CASE("fock coefficients") {
  const FockVector vac = fock_coefficients(FanConfig::identity(1, 0.0), 8);
  CHECK(vac.amps[0] == std::complex<double>(1.0, 0.0));
  for (int n = 1; n < 8; ++n) CHECK(vac.amps[n] == std::complex<double>{});

  const FockVector v = fock_coefficients(FanConfig::identity(1, 0.5), 64);
  for (int n = 0; n < 64; ++n)
    if (n % 4 != 0) CHECK(v.amps[n] == std::complex<double>{});
  CHECK(v.tail_mass < 1e-14);

  const FockVector w = fock_coefficients(FanConfig::identity(2, 0.3), 64);
  CHECK(w.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));

  // Against the literal superposition, including the trapped-ion products.
  const FockVector t = fock_coefficients(FanConfig::trapped_ion(2, 0.4, 0.3), 96);
  const FockVector o = oracle::superposed_fan_state(2, 0.4L, 0.3L, 96);
  for (int n = 0; n < 96; ++n) CHECK(std::abs(t.amps[n] - o.amps[n]) < 1e-14);

  CHECK_THROWS_AS(fock_coefficients(FanConfig::identity(1, 4.0), 8), TruncationTooSmall);
}

TEST_CASE("coefficient conventions") {
  const FanState id(FanConfig::identity(2, 0.4));
  CHECK(id.coefficient_convention_gap(96) <= 1e-15);
  const FanState ti(FanConfig::trapped_ion(1, 0.4, 0.3));
  CHECK(ti.coefficient_convention_gap(64) > 1e-6);
  const FockVector s4 = ti.fock_coefficients_step4k(64);
  CHECK(s4.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(support_check(s4, 1));
}

TEST_CASE("component coefficients occupy every 2k level") {
  const FanState st(FanConfig::identity(1, 0.5));
  const FockVector c = st.component_coefficients(40);
  CHECK(std::abs(c.amps[2]) > 0.0);
  CHECK(!support_check(c, 1));
}

TEST_CASE("tail bookkeeping") {
  const FanState st(FanConfig::trapped_ion(1, 0.5, 0.2));
  const int n = st.levels_for_tail(1e-14);
  CHECK(st.tail_mass(4 * n) < 1e-14);
  CHECK(st.tail_mass(4 * (n - 1)) >= 1e-14);
  CHECK(st.tail_mass(1) > 0.0);
}

TEST_CASE("series control") {
  SeriesControl tight;
  tight.n_max = 2;
  CHECK_THROWS_AS(FanState(FanConfig::identity(1, 3.0), tight), SeriesNotConverged);
  SeriesControl bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK_THROWS_AS(FanConfig::identity(0, 0.1), DomainError);
  CHECK_THROWS_AS(FanConfig::identity(1, -0.1), DomainError);
}

TEST_CASE("moments are safe under concurrent readers") {
  const FanState st(FanConfig::trapped_ion(2, 0.6, 0.15));
  std::vector<double> serial;
  for (int m = 0; m <= 10; ++m) serial.push_back(moment(st.config(), m + 8, m));
  std::vector<std::vector<double>> results(4);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      for (int m = 10; m >= 0; --m) results[t].insert(results[t].begin(), st.moment(m + 8, m));
    });
  for (auto& th : pool) th.join();
  for (const auto& r : results) CHECK(r == serial);
}

TEST_CASE("xi from drive") {
  CHECK(xi_from_drive({1.0, 1.0, 1.0, 0.0, 2}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(xi_from_drive({0.01, 1.0, 0.5, 0.0, 2}) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(xi_from_drive({0.0, 1.0, 0.5, 0.0, 2}) == 0.0);
  CHECK_THROWS_AS(xi_from_drive({-1.0, 1.0, 0.5, 0.0, 2}), DomainError);
  CHECK_THROWS_AS(xi_from_drive({1.0, 0.0, 0.5, 0.0, 2}), DomainError);
  CHECK_THROWS_AS(xi_from_drive({1.0, 1.0, 0.0, 0.0, 2}), DomainError);
  // xi^K = -e^{i phi} Omega0 / ((i eta)^K Omega1)
  const DriveParams d{0.3, 2.0, 0.7, 1.1, 3};
  const std::complex<double> want =
      -std::polar(1.0, 1.1) * 0.3 / (std::pow(std::complex<double>(0.0, 0.7), 3) * 2.0);
  const std::complex<double> got = xi_power_from_drive(d);
  CHECK(std::abs(got - want) < 1e-14);
  CHECK(std::pow(xi_from_drive(d), 3) == doctest::Approx(std::abs(want)).epsilon(1e-14));
  const DriveParams n = DriveParams{1.0, 1.0, 1.0, -0.5, 2}.normalized();
  CHECK(n.phase == doctest::Approx(2.0 * std::numbers::pi - 0.5).epsilon(1e-15));
}
