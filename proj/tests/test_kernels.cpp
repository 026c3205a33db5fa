#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "goldilocks/kernels.hpp"
#include "oracles.hpp"

using namespace goldilocks;

namespace {

double log_grid(double lo, double hi, int i, int n) {
  return lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
}

}  // namespace

TEST_CASE("F(0) = 0 exactly for every method") {
  CHECK(closed_form_kernel(0.0).value == std::complex<double>(0.0, 0.0));
  CHECK(quadrature_kernel(0.0, 1e-10).value == std::complex<double>(0.0, 0.0));
  const auto s = series_kernel(0.0, 1e-10);
  CHECK(s.value == std::complex<double>(0.0, 0.0));
  CHECK(s.terms_or_evals == 1);
  CHECK(taylor_kernel(0.0, 3).value == std::complex<double>(0.0, 0.0));
  CHECK(std::abs(isotropic_kernel(0.0, 1e-10).value) < 1e-15);
}

TEST_CASE("closed form matches the Simpson oracle") {
  for (const double z : {0.05, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) {
    const auto k = closed_form_kernel(z);
    const auto ref = oracles::simpson_kernel(z);
    CHECK(std::abs(k.value - ref) < 1e-9);
  }
}

TEST_CASE("small-z expansion coefficients") {
  // leading linear/quadratic behaviour at z = 0.01
  const auto k = closed_form_kernel(0.01);
  CHECK(k.value.real() == doctest::Approx((7.0 / 15.0) * 1e-4).epsilon(1e-3));
  CHECK(k.value.imag() == doctest::Approx(-(2.0 / 3.0) * 1e-2).epsilon(1e-3));

  // cubic coefficient recovered from the independent oracle:
  // (F(z) - c1 z - c2 z^2)/z^3 -> c3 + O(z)
  const double z = 0.01;
  const std::complex<double> res =
      (oracles::simpson_kernel(z) - kSmallZCoeff1 * z -
       std::complex<double>(kSmallZCoeff2 * z * z, 0.0)) /
      (z * z * z);
  CHECK(std::abs(res - kSmallZCoeff3) < 1.5 * std::abs(kSmallZCoeff4) * z);
}

TEST_CASE("large-z saturation") {
  const auto k = closed_form_kernel(1000.0);
  CHECK(std::abs(k.value.real() - 2.0 / 3.0) < 0.01);
  CHECK(std::abs(k.value.imag()) < 0.01);
  CHECK(std::abs(k.value - oracles::simpson_kernel(1000.0)) < 1e-8);
}

TEST_CASE("closed form error estimate stays below 1e-12") {
  for (int i = 0; i < 200; ++i) {
    const auto k = closed_form_kernel(log_grid(1e-6, 1e4, i, 200));
    CHECK(k.abs_error_estimate >= 0.0);
    CHECK(k.abs_error_estimate <= 1e-12);
  }
}

TEST_CASE("switchover continuity and configurability") {
  const double z = kClosedFormSwitchover;
  const auto below = closed_form_kernel(z * (1.0 - 1e-9));
  const auto above = closed_form_kernel(z * (1.0 + 1e-9));
  CHECK(std::abs(below.value - above.value) < 1e-9);
  // a custom switchover keeps the result, at reduced accuracy
  for (const double zz : {2e-3, 2e-2}) {
    CHECK(std::abs(closed_form_kernel(zz, 1e-3).value -
                   closed_form_kernel(zz).value) < 1e-9);
  }
}

TEST_CASE("quadrature agrees with the closed form") {
  SUBCASE("phase extremum neighborhood z = 2 pi * 0.2") {
    const double z = 2.0 * std::numbers::pi * 0.2;
    const auto q = quadrature_kernel(z, 1e-10);
    const auto c = closed_form_kernel(z);
    CHECK(std::abs(q.value.imag()) ==
          doctest::Approx(std::abs(c.value.imag())).epsilon(1e-2));
    CHECK(std::abs(q.value - c.value) < 1e-10);
  }
  SUBCASE("z = 50") {
    CHECK(std::abs(quadrature_kernel(50.0, 1e-10).value -
                   closed_form_kernel(50.0).value) < 1e-8);
  }
  SUBCASE("oscillatory pre-split regime") {
    for (const double z : {600.0, 1500.0}) {
      CHECK(std::abs(quadrature_kernel(z, 1e-10).value -
                     closed_form_kernel(z).value) < 1e-8);
    }
  }
}

TEST_CASE("quadrature preconditions and convergence error") {
  CHECK_THROWS_AS(quadrature_kernel(1.0, 1e-15), std::domain_error);
  CHECK_THROWS_AS(quadrature_kernel(1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(quadrature_kernel(-1.0, 1e-8), std::domain_error);
  CHECK_THROWS_AS(quadrature_kernel(std::nan(""), 1e-8), std::domain_error);

  QuadratureOptions opts;
  opts.max_depth = 0;
  try {
    quadrature_kernel(50.0, 1e-10, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    const KernelResult& best = e.best_estimate();
    CHECK(best.method == KernelMethod::quadrature);
    CHECK(best.abs_error_estimate > 0.0);
    CHECK(best.terms_or_evals == 15);
  }
}

TEST_CASE("series kernel cross-method agreement") {
  CHECK(std::abs(series_kernel(2.0, 1e-10).value - closed_form_kernel(2.0).value) <
        1e-9);
  CHECK(std::abs(series_kernel(30.0, 1e-10).value -
                 quadrature_kernel(30.0, 1e-10).value) < 1e-8);
  for (const double z : {0.3, 7.7, 120.0}) {
    const auto s = series_kernel(z, 1e-10);
    CHECK(std::abs(s.value - closed_form_kernel(z).value) < 1e-8);
    CHECK(s.terms_or_evals <= static_cast<long>(std::ceil(z)) + 200);
  }
  CHECK_THROWS_AS(series_kernel(-0.5, 1e-8), std::domain_error);
  CHECK_THROWS_AS(series_kernel(1.0, 0.0), std::domain_error);
}

TEST_CASE("taylor kernel") {
  CHECK(taylor_kernel(0.1, 2).value.real() ==
        doctest::Approx(4.666666666666667e-3).epsilon(1e-14));
  CHECK(taylor_kernel(0.1, 2).value.imag() ==
        doctest::Approx(-6.666666666666667e-2).epsilon(1e-14));
  // error estimate is the first neglected term
  CHECK(taylor_kernel(0.1, 2).abs_error_estimate ==
        doctest::Approx(std::abs(kSmallZCoeff3) * 1e-3).epsilon(1e-12));
  // order-2 truncation error bounded by the cubic term
  CHECK(std::abs(taylor_kernel(0.1, 2).value - closed_form_kernel(0.1).value) <
        std::abs(kSmallZCoeff3) * 1e-3 * 1.5);
  // order-3 truncation error bounded by the quartic term
  CHECK(std::abs(taylor_kernel(0.1, 3).value - closed_form_kernel(0.1).value) <
        std::abs(kSmallZCoeff4) * 1e-4 * 1.5);
  CHECK_THROWS_AS(taylor_kernel(0.1, 0), std::domain_error);
  CHECK_THROWS_AS(taylor_kernel(0.1, 4), std::domain_error);
}

TEST_CASE("isotropic kernel") {
  SUBCASE("imaginary part vanishes") {
    for (int i = 0; i < 40; ++i) {
      const auto k = isotropic_kernel(log_grid(1e-3, 1e3, i, 40), 1e-10);
      CHECK(std::abs(k.value.imag()) <= 1e-10);
    }
  }
  SUBCASE("quadratic rise at small z") {
    const auto k = isotropic_kernel(0.01, 1e-10);
    CHECK(k.value.real() / 1e-4 == doctest::Approx(2.0 / 9.0).epsilon(1e-3));
  }
  SUBCASE("saturation at 2/3") {
    CHECK(std::abs(isotropic_kernel(1e3, 1e-10).value.real() - 2.0 / 3.0) < 1e-4);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(isotropic_kernel(1.0, 1e-13), std::domain_error);
    CHECK_THROWS_AS(isotropic_kernel(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(isotropic_kernel(-2.0, 1e-8), std::domain_error);
  }
}

TEST_CASE("asymptotic limits") {
  const auto d = asymptotic_limits(AngularShape::directional_powerlaw);
  CHECK(d.re == 2.0 / 3.0);
  CHECK(d.im == 0.0);
  const auto iso = asymptotic_limits(AngularShape::isotropic_powerlaw);
  CHECK(iso.im == 0.0);
  CHECK(std::abs(isotropic_kernel(1e3, 1e-10).value.real() - iso.re) < 1e-4);
}

TEST_CASE("kernel range invariants on a log grid") {
  for (int i = 0; i < 400; ++i) {
    const double z = log_grid(1e-4, 1e4, i, 400);
    const auto k = closed_form_kernel(z);
    CHECK(k.value.real() >= 0.0);
    CHECK(k.value.real() <= 4.0 / 3.0);
    CHECK(std::abs(k.value.imag()) <= 2.0 / 3.0);
  }
}

TEST_CASE("cross-method agreement over z in [1e-2, 50]") {
  double dev_q = 0.0, dev_s = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double z = log_grid(1e-2, 50.0, i, 100);
    const auto c = closed_form_kernel(z);
    dev_q = std::max(dev_q, std::abs(c.value - quadrature_kernel(z, 1e-10).value));
    dev_s = std::max(dev_s, std::abs(c.value - series_kernel(z, 1e-10).value));
  }
  CHECK(dev_q <= 1e-8);
  CHECK(dev_s <= 1e-8);
}

TEST_CASE("limiting laws on grids") {
  SUBCASE("small z") {
    for (int i = 0; i < 50; ++i) {
      const double z = log_grid(1e-4, 1e-2, i, 50);
      const auto k = closed_form_kernel(z);
      CHECK(std::abs(k.value.imag() + (2.0 / 3.0) * z) <= 1e-2 * (2.0 / 3.0) * z);
      CHECK(std::abs(k.value.real() - (7.0 / 15.0) * z * z) <=
            1e-2 * (7.0 / 15.0) * z * z);
    }
  }
  SUBCASE("large z") {
    for (int i = 0; i < 50; ++i) {
      const double z = log_grid(200.0, 1e4, i, 50);
      const auto k = closed_form_kernel(z);
      CHECK(std::abs(k.value.real() - 2.0 / 3.0) <= 0.02);
      CHECK(std::abs(k.value.imag()) <= 0.02);
    }
  }
}

TEST_CASE("evaluate_kernel dispatch") {
  const double z = 3.3;
  CHECK(evaluate_kernel(z, AngularShape::directional_powerlaw,
                        KernelMethod::closed_form, 1e-10)
            .method == KernelMethod::closed_form);
  CHECK(evaluate_kernel(z, AngularShape::directional_powerlaw,
                        KernelMethod::quadrature, 1e-10)
            .method == KernelMethod::quadrature);
  CHECK(evaluate_kernel(z, AngularShape::directional_powerlaw,
                        KernelMethod::jacobi_anger, 1e-10)
            .method == KernelMethod::jacobi_anger);
  // isotropic reduction wins regardless of the requested method
  CHECK(std::abs(evaluate_kernel(z, AngularShape::isotropic_powerlaw,
                                 KernelMethod::closed_form, 1e-10)
                     .value.imag()) < 1e-10);
  const auto a = evaluate_kernel(z, AngularShape::directional_powerlaw,
                                 KernelMethod::asymptotic, 1e-10);
  CHECK(a.value.real() == 2.0 / 3.0);
}
