#include "bergsharp/bergman.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "bergsharp/specfun.hpp"
#include "doctest.h"

using namespace bergsharp;
using namespace bergsharp::bergman;
using std::numbers::pi;

namespace {

// 2-D quadrature of F(z) against the probability weight (alpha-1)/pi (1-r^2)^(alpha-2) dA:
// periodic trapezoid in angle, tanh-sinh in x = r^2.
template <typename Fn>
Complex weighted_disc_integral(Fn&& fn, double alpha, int angles = 128) {
  auto angular_mean = [&](double x) {
    Complex acc{};
    const double r = std::sqrt(x);
    for (int j = 0; j < angles; ++j) acc += fn(std::polar(r, 2 * pi * j / angles));
    return acc / double(angles);
  };
  auto re = specfun::integrate_01_weighted([&](double x) { return (alpha - 1) * angular_mean(x).real(); }, 0.0, alpha - 2, 1e-11);
  auto im = specfun::integrate_01_weighted([&](double x) { return (alpha - 1) * angular_mean(x).imag(); }, 0.0, alpha - 2, 1e-11);
  return {re.value, im.value};
}

AnalyticPolynomial random_polynomial(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> d;
  std::vector<Complex> c(degree + 1);
  for (auto& v : c) v = {d(rng), d(rng)};
  return AnalyticPolynomial(c);
}

}  // namespace

TEST_CASE("monomial norms") {
  CHECK(monomial_norm(0, Rational(7, 2)) == 1);
  CHECK(monomial_norm(1, Rational(2)) == Rational(1, 2));
  for (unsigned k = 0; k <= 20; ++k) CHECK(monomial_norm(k, Rational(2)) == Rational(1, k + 1));
  CHECK(monomial_norm(5, 2.5) == doctest::Approx(to_double(monomial_norm(5, Rational(5, 2)))).epsilon(1e-15));
}

TEST_CASE("norms and Parseval") {
  CHECK(norm_sq(AnalyticPolynomial({1.0}), 2.0) == 1.0);
  CHECK(norm_sq(AnalyticPolynomial::monomial(1), 2.0) == doctest::Approx(0.5));
  CHECK(norm_sq(AnalyticPolynomial({1.0, 1.0}), 2.0) == doctest::Approx(1.5));

  std::vector<ExactComplex> exact{{Rational(1), Rational(0)}, {Rational(1), Rational(0)}};
  CHECK(norm_sq(exact, Rational(2)) == Rational(3, 2));

  SUBCASE("Parseval against 2-D quadrature") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      const double alpha = 1.5 + 0.4 * trial;
      auto f = random_polynomial(rng, 1 + trial % 6);
      Complex quad = weighted_disc_integral([&](Complex z) { return Complex(std::norm(f(z))); }, alpha);
      CHECK(std::abs(quad.real() - norm_sq(f, alpha)) <= 1e-8 * std::max(1.0, norm_sq(f, alpha)));
    }
  }
}

TEST_CASE("reproducing kernel") {
  const DiskPoint origin(0.0);
  CHECK(eval_kernel(origin, DiskPoint({0.5, 0.3}), 2.5) == Complex(1.0));
  CHECK(eval_kernel(DiskPoint({0.5, 0.3}), origin, 2.5) == Complex(1.0));

  const double alpha = 2.5;
  const DiskPoint w({0.4, 0.1});
  auto k = kernel_polynomial(w, alpha);
  CHECK(k.tail_bound <= 1e-12);
  CHECK(std::abs(k.poly.coeff(3) - specfun::pochhammer(alpha, 3) / 6.0 * std::pow(std::conj(w.z()), 3)) < 1e-15);

  const AnalyticPolynomial f({1.0, 2.0, 0.0, 1.0});
  SUBCASE("series identity") { CHECK(std::abs(inner_product(f, k.poly, alpha) - f(w.z())) <= 1e-10); }
  SUBCASE("quadrature route") {
    Complex quad = weighted_disc_integral(
        [&](Complex z) { return std::norm(z) < 1.0 ? f(z) * std::conj(eval_kernel(w, DiskPoint(z), alpha)) : Complex{}; }, alpha);
    CHECK(std::abs(quad - f(w.z())) <= 1e-10);
  }
  SUBCASE("random functions and centres") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int i = 0; i < 10; ++i) {
      auto g = random_polynomial(rng, 5);
      DiskPoint c({u(rng), u(rng)});
      auto kp = kernel_polynomial(c, 3.0);
      CHECK(std::abs(inner_product(g, kp.poly, 3.0) - g(c.z())) <= 1e-10 * std::max(1.0, std::abs(g(c.z()))));
    }
  }
  SUBCASE("truncated polynomial matches closed form") {
    for (double x : {0.0, 0.5, 0.9}) {
      Complex z = std::polar(x, 0.7);
      CHECK(std::abs(k.poly(z) - eval_kernel(w, DiskPoint(z), alpha)) <= 1e-11);
    }
  }
  SUBCASE("degree cap") {
    try {
      kernel_polynomial(DiskPoint({0.999, 0.0}), 3.0, 1e-12, 50);
      FAIL("expected TRUNCATION_FAIL");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TruncationFail);
    }
  }
}

TEST_CASE("derivative coefficients") {
  const AnalyticPolynomial f({1.0, 2.0, 3.0});
  CHECK(derivative_coeffs(f, 0).coeffs().size() == 3);
  auto d1 = derivative_coeffs(AnalyticPolynomial::monomial(2), 1);
  CHECK(d1.degree() == 1);
  CHECK(d1.coeff(1) == Complex(2.0));
  auto d2 = derivative_coeffs(AnalyticPolynomial::monomial(3), 2);
  CHECK(d2.coeff(1) == Complex(6.0));
  CHECK(derivative_coeffs(f, 3).is_zero());
}

TEST_CASE("pointwise profile g") {
  for (unsigned n = 0; n <= 4; ++n)
    CHECK(g_profile(n, 2.5, 0.0) == doctest::Approx(specfun::pochhammer(1.0, n) * specfun::pochhammer(2.5, n)));
  for (double r : {0.0, 0.3, 0.8}) CHECK(g_profile(0, 3.5, r) == doctest::Approx(std::pow(1 - r * r, -3.5)));
  // n=1, alpha=2, r^2=1/2: 1! (2)_1 (1+2 r^2)(1-r^2)^(-4) = 2 * 2 * 16.
  GForms g = g_profile_forms(1, 2.0, std::sqrt(0.5));
  CHECK(g.closed == doctest::Approx(64.0).epsilon(1e-14));
  CHECK(g.relative_gap() <= 1e-12);
  for (unsigned n = 0; n <= 6; ++n)
    for (double alpha : {2.0, 2.5, 3.5})
      for (int i = 0; i < 50; ++i) CHECK(g_profile_forms(n, alpha, std::sqrt(0.99 * i / 49)).relative_gap() <= 1e-11);
}

TEST_CASE("densities") {
  const DiskPoint origin(0.0);
  CHECK(density_hyperbolic(origin) == 1.0);
  for (unsigned n = 0; n <= 4; ++n) {
    const double alpha = 2.5;
    CHECK(density_mu(n, alpha, origin) ==
          doctest::Approx((alpha + 2 * n - 1) / (pi * specfun::pochhammer(1.0, n) * specfun::pochhammer(alpha, n))));
    if (n > 0) CHECK(density_nu(n, alpha, origin) == doctest::Approx(1.0 / (pi * specfun::pochhammer(alpha, 2 * n - 1))));
  }
  SUBCASE("literal density forms") {
    for (unsigned n = 1; n <= 4; ++n)
      for (double r : {0.1, 0.5, 0.9}) {
        const double alpha = 3.5, x = r * r;
        const DiskPoint z(std::polar(r, 1.1));
        const double p = specfun::hypergeom_terminating({1 - alpha - n, -double(n), 1.0}, x);
        const double lhs_mu = density_mu(n, alpha, z) * pi * specfun::pochhammer(1.0, n) * specfun::pochhammer(alpha, n) * p;
        CHECK(lhs_mu == doctest::Approx((alpha + 2 * n - 1) * std::pow(1 - x, alpha + 2 * n)).epsilon(1e-12));
        const double lhs_nu = density_nu(n, alpha, z) * pi * specfun::pochhammer(alpha, 2 * n - 1);
        CHECK(lhs_nu == doctest::Approx(std::pow(1 - x, alpha + 2 * n)).epsilon(1e-12));
      }
  }
}

TEST_CASE("hyperbolic discs and circles") {
  CHECK(hyperbolic_disc_area(0.0) == 0.0);
  CHECK(hyperbolic_disc_area(std::sqrt(0.5)) == doctest::Approx(pi));
  CHECK(hyperbolic_circle_length(0.0) == 0.0);
  CHECK(hyperbolic_circle_length(0.5) == doctest::Approx(4 * pi / 3));
  for (int i = 1; i <= 9; ++i) {
    const double r = 0.1 * i;
    CHECK(std::abs(radius_for_area(hyperbolic_disc_area(r)) - r) <= 1e-14);
    const double s = hyperbolic_disc_area(r), len = hyperbolic_circle_length(r);
    CHECK(std::abs(len * len - (4 * pi * s + 4 * s * s)) <= 1e-12 * std::max(1.0, len * len));
  }
  SUBCASE("area agrees with radial quadrature of the density") {
    for (double r : {0.2, 0.6, 0.9}) {
      // pi * int_0^{r^2} (1-x)^-2 dx, integrated in u = x / r^2.
      auto e = specfun::integrate_01_weighted([r](double u) { double x = r * r * u; return pi * r * r / ((1 - x) * (1 - x)); }, 0, 0);
      CHECK(std::abs(e.value - hyperbolic_disc_area(r)) <= 1e-10);
    }
  }
}

TEST_CASE("pointwise bound") {
  const AnalyticPolynomial one({1.0});
  for (double r : {0.0, 0.4, 0.95}) {
    auto m = pointwise_bound_check(one, 0, 2.5, DiskPoint(std::polar(r, 0.3)));
    CHECK(m.margin == doctest::Approx(std::pow(1 - r * r, -2.5) - 1.0));
    auto m1 = pointwise_bound_check(one, 2, 2.5, DiskPoint(std::polar(r, 0.3)));
    CHECK(m1.derivative_abs_sq == 0.0);
    CHECK(m1.margin > 0.0);
  }
  SUBCASE("kernel saturates the bound at its centre") {
    const DiskPoint w({0.3, 0.2});
    double previous = 1e300;
    for (double tol : {1e-3, 1e-6, 1e-12}) {
      auto k = kernel_polynomial(w, 2.5, tol);
      auto m = pointwise_bound_check(k.poly, 0, 2.5, w);
      const double relative = std::abs(m.margin) / (m.g * m.norm_sq);
      CHECK(relative <= previous);
      previous = relative;
    }
    CHECK(previous <= 1e-11);
  }
  SUBCASE("random functions never violate") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int i = 0; i < 40; ++i) {
      auto f = random_polynomial(rng, 6);
      for (unsigned n = 0; n <= 3; ++n) CHECK_NOTHROW(pointwise_bound_check(f, n, 2.0 + 0.1 * i, DiskPoint({u(rng), u(rng)})));
    }
  }
}

TEST_CASE("space parameters") {
  const SpaceParams bad{1.0, 1};
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK(SpaceParams{2.5, 2}.exponent(MeasureVariant::Mu) == doctest::Approx(3 * 4.5));
  CHECK(SpaceParams{2.5, 2}.exponent(MeasureVariant::Nu) == doctest::Approx(6.5));
  CHECK_THROWS_AS(DiskPoint(Complex(1.0, 0.0)), Error);
}
