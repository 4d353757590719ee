#include "bergsharp/specfun.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

using namespace bergsharp;
using namespace bergsharp::specfun;

namespace {

// Direct summation of F(a,b;c;x) with no early exit, independent of the library path.
double brute_series(double a, double b, double c, double x, int terms) {
  long double sum = 0.0L, term = 1.0L;
  for (int k = 0; k < terms; ++k) {
    sum += term;
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0L)) * x;
  }
  return static_cast<double>(sum);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("pochhammer") {
  CHECK(pochhammer(Rational(7, 3), 0) == 1);
  CHECK(pochhammer(Rational(3), 2) == 12);
  CHECK(pochhammer(Rational(-2), 3) == 0);
  CHECK(pochhammer(3.0, 2) == 12.0);

  SUBCASE("splits over consecutive ranges") {
    for (const Rational x : {Rational(1, 2), Rational(-7, 3), Rational(5), Rational(11, 4)})
      for (unsigned j = 0; j <= 50; j += 7)
        for (unsigned k = 0; k <= 50; k += 9) CHECK(pochhammer(x, j + k) == pochhammer(x, j) * pochhammer(Rational(x + j), k));
  }
}

TEST_CASE("terminating hypergeometric sums") {
  const Rational alpha(5, 2);
  for (unsigned n = 0; n <= 6; ++n) {
    HypergeomParams<Rational> p{Rational(1 - alpha - n), Rational(-static_cast<long>(n)), Rational(1)};
    CHECK(p.terminating());
    CHECK(hypergeom_terminating(p, Rational(0)) == 1);
    // Direct summation at t = 1 equals (alpha+n)_n / n!.
    Rational at_one = hypergeom_terminating(p, Rational(1));
    Rational factorial = pochhammer(Rational(1), n);
    CHECK(at_one == pochhammer(Rational(alpha + n), n) / factorial);
  }
  // n = 1 case: F(-alpha, -1; 1; t) = 1 + alpha t.
  HypergeomParams<Rational> p1{Rational(-alpha), Rational(-1), Rational(1)};
  CHECK(hypergeom_terminating(p1, Rational(2, 7)) == 1 + alpha * Rational(2, 7));

  SUBCASE("float entry agrees with exact path") {
    HypergeomParams<double> pd{1 - 2.5 - 3, -3.0, 1.0};
    HypergeomParams<Rational> pr{Rational(-9, 2), Rational(-3), Rational(1)};
    CHECK(hypergeom_terminating(pd, 0.3) == to_double(hypergeom_terminating(pr, rational_from_double(0.3))));
  }
  SUBCASE("exact evaluation is deterministic") {
    HypergeomParams<Rational> p{Rational(-17, 3), Rational(-5), Rational(1)};
    Rational t(3, 11);
    CHECK(hypergeom_terminating(p, t) == hypergeom_terminating(p, t));
  }
  SUBCASE("pole in c") {
    HypergeomParams<Rational> p{Rational(-3), Rational(1), Rational(-1)};
    CHECK_THROWS_AS(hypergeom_terminating(p, Rational(1, 2)), Error);
  }
}

TEST_CASE("hypergeometric series") {
  Estimate geo = hypergeom_series({1.0, 1.0, 1.0}, 0.5);
  CHECK(geo.value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(geo.error < 1e-14);
  CHECK(hypergeom_series({0.3, 1.7, 2.2}, 0.0).value == 1.0);

  SUBCASE("agrees with brute-force summation") {
    Estimate e = hypergeom_series({2.5, 3.5, 1.0}, 0.6);
    CHECK(rel(e.value, brute_series(2.5, 3.5, 1.0, 0.6, 4000)) < 1e-14);
    CHECK(std::abs(e.value - brute_series(2.5, 3.5, 1.0, 0.6, 4000)) <= e.error + 1e-15 * e.value);
  }

  SUBCASE("Euler transform at n=2, alpha=2.5, x=0.3") {
    const unsigned n = 2;
    const double alpha = 2.5, x = 0.3;
    double lhs = hypergeom_series({n + 1.0, n + alpha, 1.0}, x).value;
    double rhs = std::pow(1 - x, -alpha - 2 * n) * hypergeom_terminating({1 - alpha - n, -double(n), 1.0}, x);
    CHECK(rel(lhs, rhs) <= 1e-12);
  }

  SUBCASE("Euler transform on grids") {
    for (unsigned n = 0; n <= 6; ++n)
      for (double alpha : {2.0, 2.5, 3.5})
        for (int i = 0; i < 50; ++i) {
          double x = 0.99 * i / 49.0;
          double lhs = hypergeom_series({n + 1.0, n + alpha, 1.0}, x).value;
          double rhs = std::pow(1 - x, -alpha - 2 * double(n)) * hypergeom_terminating({1 - alpha - n, -double(n), 1.0}, x);
          CHECK(rel(lhs, rhs) <= 1e-11);
        }
  }

  SUBCASE("Pfaff transform") {
    for (unsigned n = 0; n <= 6; ++n)
      for (double alpha : {2.0, 2.5, 3.5})
        for (int i = 0; i <= 30; ++i) {
          double t = 0.9 * i / 30.0;
          double lhs = hypergeom_terminating({1 - alpha - n, -double(n), 1.0}, t);
          double rhs = std::pow(1 - t, n) * hypergeom_terminating({-double(n), n + alpha, 1.0}, t / (t - 1));
          CHECK(rel(lhs, rhs) <= 1e-11);
        }
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(hypergeom_series({1.0, 1.0, 1.0}, 1.0), Error);
    try {
      hypergeom_series({1.0, 1.0, 0.5}, 1.0 - 1e-9);
      FAIL("expected NON_CONVERGENT");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonConvergent);
    }
  }
}

TEST_CASE("jacobi recurrence") {
  CHECK(jacobi_eval(0, 2.7, 3.1) == 1.0);
  for (double x : {-0.5, 0.2, 1.0, 2.5})
    CHECK(jacobi_eval(1, 2.7, x) == doctest::Approx(1 + 3.7 * (x - 1) / 2).epsilon(1e-15));

  SUBCASE("links to P(t) through x = (1+t)/(1-t)") {
    const unsigned n = 3;
    const double alpha = 2.0, t = 0.3;
    double via_jacobi = std::pow(1 - t, n) * jacobi_eval(n, alpha, (1 + t) / (1 - t));
    double direct = hypergeom_terminating({1 - alpha - n, -double(n), 1.0}, t);
    CHECK(rel(via_jacobi, direct) <= 1e-12);
    for (unsigned m = 0; m <= 8; ++m)
      for (double a : {1.5, 2.5, 7.0})
        for (double tt : {0.0, 0.1, 0.45, 0.8}) {
          double j = std::pow(1 - tt, m) * jacobi_eval(m, a, (1 + tt) / (1 - tt));
          double d = hypergeom_terminating({1 - a - m, -double(m), 1.0}, tt);
          CHECK(rel(j, d) <= 1e-11);
        }
  }
}

TEST_CASE("laguerre at negative argument") {
  CHECK(laguerre_eval(0, 4.2) == 1.0);
  CHECK(laguerre_eval(1, 4.2) == doctest::Approx(5.2));
  CHECK(laguerre_eval(2, 1.0) == doctest::Approx(1 + 2 + 0.5));

  SUBCASE("limit of P with alpha = R") {
    const unsigned n = 2;
    const double y = 1.0, R = 1e6;
    double p = hypergeom_terminating({1 - R - n, -double(n), 1.0}, y / R);
    CHECK(std::abs(p - laguerre_eval(n, y)) <= 1e-5);
  }
}

TEST_CASE("weighted quadrature on (0,1)") {
  Estimate one = integrate_01_weighted([](double) { return 1.0; }, 0.0, 0.0);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-14));

  Estimate log3 = integrate_01_weighted([](double t) { return 1.0 / (1.0 + 2.0 * t); }, 0.0, 0.0);
  CHECK(std::abs(log3.value - std::log(3.0) / 2) <= std::max(log3.error, 1e-15));

  SUBCASE("Beta closed form for koeficijenti exponents") {
    for (int n = 1; n <= 3; ++n)
      for (int k = n; k <= n + 10; ++k) {
        double alpha = 2.5, p = k - n, q = alpha + 2 * n - 2;
        Estimate b = integrate_01_weighted([](double) { return 1.0; }, p, q);
        double exact = beta_function(p + 1, q + 1);
        CHECK(std::abs(b.value - exact) <= b.error + 1e-16);
      }
  }

  SUBCASE("Beta for random exponents in (-0.9, 5)") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> dist(-0.9, 5.0);
    for (int i = 0; i < 20; ++i) {
      double p = dist(rng), q = dist(rng);
      Estimate b = integrate_01_weighted([](double) { return 1.0; }, p, q);
      double exact = beta_function(p + 1, q + 1);
      CHECK(std::abs(b.value - exact) <= b.error + 4e-16 * exact);
      CHECK(b.error <= kDefaultQuadratureTol);
    }
  }

  SUBCASE("invalid exponents") {
    try {
      integrate_01_weighted([](double) { return 1.0; }, -1.0, 0.0);
      FAIL("expected INVALID_EXPONENT");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidExponent);
    }
    CHECK_THROWS_AS(integrate_01_weighted([](double) { return 1.0; }, 0.0, -1.5), Error);
  }
}

TEST_CASE("half-line quadrature against exp(-y)") {
  CHECK(integrate_halfline_exp([](double) { return 1.0; }).value == doctest::Approx(1.0).epsilon(1e-14));
  double factorial = 1.0;
  for (int m = 0; m <= 12; ++m) {
    if (m > 0) factorial *= m;
    Estimate e = integrate_halfline_exp([m](double y) { return std::pow(y, m); });
    CHECK(rel(e.value, factorial) <= 1e-13);
  }
  // e * E_1(1) from an independent special-function implementation.
  const double oracle = std::numbers::e * boost::math::expint(1, 1.0);
  Estimate r = integrate_halfline_exp([](double y) { return 1.0 / (1.0 + y); });
  CHECK(std::abs(r.value - oracle) <= r.error + 1e-15);
  CHECK(r.value == doctest::Approx(0.596347362323194).epsilon(1e-14));
}
