#include "bergsharp/specfun.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

namespace bergsharp::specfun {

std::optional<unsigned> nonpositive_integer(double x) {
  if (x <= 0.0 && std::floor(x) == x && x > -4.0e9) return static_cast<unsigned>(-x);
  return std::nullopt;
}

std::optional<unsigned> nonpositive_integer(const Rational& x) {
  if (is_integer(x) && x <= 0) {
    BigInt m = -x.get_num();
    if (!m.fits_uint_p()) throw Error(ErrorCode::InvalidArgument, "parameter too large");
    return static_cast<unsigned>(m.get_ui());
  }
  return std::nullopt;
}

Rational hypergeom_terminating(const HypergeomParams<Rational>& params, const Rational& t) {
  return hypergeom_polynomial(params)(t);
}

double hypergeom_terminating(const HypergeomParams<double>& params, double t) {
  auto stop = params.stop_index();
  if (!stop) throw Error(ErrorCode::InvalidArgument, "hypergeometric series does not terminate");
  if (*stop + 1 <= kExactTerminatingMaxTerms) {
    HypergeomParams<Rational> exact{rational_from_double(params.a), rational_from_double(params.b),
                                    rational_from_double(params.c)};
    return to_double(hypergeom_terminating(exact, rational_from_double(t)));
  }
  return hypergeom_polynomial(params)(t);
}

Estimate hypergeom_series(const HypergeomParams<double>& params, double x, double rel_tol) {
  if (!(x >= 0.0 && x < 1.0)) throw Error(ErrorCode::InvalidArgument, "series argument must lie in [0, 1)");
  if (!(rel_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (params.terminating()) {
    double v = hypergeom_terminating(params, x);
    return {v, 4.0 * DBL_EPSILON * std::abs(v)};
  }
  if (nonpositive_integer(params.c)) throw Error(ErrorCode::InvalidArgument, "c is a nonpositive integer");

  const long double a = params.a, b = params.b, c = params.c, xl = x;
  auto ratio = [&](std::size_t k) {
    long double kk = static_cast<long double>(k);
    return (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0L)) * xl;
  };

  long double sum = 1.0L, term = 1.0L, abs_terms = 1.0L;
  for (std::size_t k = 0; k < kSeriesIterationCap; ++k) {
    term *= ratio(k);
    sum += term;
    abs_terms += std::fabs(term);
    long double r1 = std::fabs(ratio(k + 1)), r2 = std::fabs(ratio(k + 2));
    if (r1 < 1.0L && r2 <= r1) {
      long double tail = std::fabs(term) * r1 / (1.0L - r1);
      if (tail <= rel_tol * std::fabs(sum)) {
        double value = static_cast<double>(sum);
        double rounding = static_cast<double>(abs_terms) * static_cast<double>(k + 2) * LDBL_EPSILON +
                          DBL_EPSILON * std::abs(value);
        return {value, static_cast<double>(tail) + rounding};
      }
    }
  }
  throw Error(ErrorCode::NonConvergent, "hypergeometric series tail bound not met within iteration cap");
}

double jacobi_eval(unsigned n, double alpha, double x) {
  const double b = alpha - 1.0, ab = b;  // a = 0
  double p0 = 1.0;
  if (n == 0) return p0;
  double p1 = 1.0 + (alpha + 1.0) * (x - 1.0) / 2.0;
  for (unsigned k = 2; k <= n; ++k) {
    const double kk = k;
    const double c1 = 2.0 * kk * (kk + ab) * (2.0 * kk + ab - 2.0);
    const double c2 = (2.0 * kk + ab - 1.0) * ((2.0 * kk + ab) * (2.0 * kk + ab - 2.0) * x - b * b);
    const double c3 = 2.0 * (kk - 1.0) * (kk + b - 1.0) * (2.0 * kk + ab);
    double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double laguerre_eval(unsigned n, double y) {
  double term = 1.0, sum = 1.0;
  for (unsigned k = 0; k < n; ++k) {
    term *= static_cast<double>(n - k) / ((k + 1.0) * (k + 1.0)) * y;
    sum += term;
  }
  return sum;
}

double beta_function(double a, double b) { return boost::math::beta(a, b); }

namespace {

// [lo, hi] subinterval of [0, 1]; f gets (t, 1 - t) computed without cancellation.
Estimate tanh_sinh_piece(const std::function<double(double, double)>& f, double p, double q, double lo, double hi,
                         double rel_tol) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  auto g = [&](double x, double xc) {
    // xc is the signed distance to the nearer endpoint: lo - x or hi - x.
    double t = (xc < 0.0 && lo == 0.0) ? -xc : x;
    double omt = (xc > 0.0 && hi == 1.0) ? xc : 1.0 - x;
    if (t <= 0.0 || omt <= 0.0) return 0.0;
    return std::pow(t, p) * std::pow(omt, q) * f(t, omt);
  };
  double err = 0.0, l1 = 0.0;
  double v = integrator.integrate(g, lo, hi, rel_tol, &err, &l1);
  return {v, err + 8.0 * DBL_EPSILON * l1};
}

Estimate integrate_01_split(const std::function<double(double, double)>& f, double p, double q, double lo,
                            double hi, double tol, int depth) {
  Estimate whole = tanh_sinh_piece(f, p, q, lo, hi, 1e-14);
  if (whole.error <= tol || depth == 0 || !std::isfinite(whole.value)) return whole;
  double mid = 0.5 * (lo + hi);
  Estimate left = integrate_01_split(f, p, q, lo, mid, 0.5 * tol, depth - 1);
  Estimate right = integrate_01_split(f, p, q, mid, hi, 0.5 * tol, depth - 1);
  Estimate split{left.value + right.value, left.error + right.error};
  return split.error < whole.error ? split : whole;
}

}  // namespace

Estimate integrate_01_weighted(const std::function<double(double, double)>& f, double p, double q, double tol) {
  if (!(p > -1.0) || !(q > -1.0))
    throw Error(ErrorCode::InvalidExponent, "endpoint exponents must exceed -1 (p=" + std::to_string(p) +
                                                ", q=" + std::to_string(q) + ")");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  Estimate r = integrate_01_split(f, p, q, 0.0, 1.0, tol, 6);
  if (!std::isfinite(r.value) || r.error > tol)
    throw Error(ErrorCode::NonConvergent, "weighted quadrature on (0,1) stalled at error " + std::to_string(r.error));
  return r;
}

Estimate integrate_01_weighted(const std::function<double(double)>& f, double p, double q, double tol) {
  return integrate_01_weighted([&f](double t, double) { return f(t); }, p, q, tol);
}

Estimate integrate_halfline_exp(const std::function<double(double)>& f, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  static thread_local boost::math::quadrature::exp_sinh<double> integrator(12);
  auto g = [&f](double y) {
    if (y > 745.0) return 0.0;
    double v = std::exp(-y) * f(y);
    return std::isfinite(v) ? v : 0.0;
  };
  double err = 0.0, l1 = 0.0;
  double v = integrator.integrate(g, 0.0, std::numeric_limits<double>::infinity(), 1e-14, &err, &l1);
  Estimate r{v, err + 8.0 * DBL_EPSILON * l1};
  if (!std::isfinite(v) || r.error > tol * std::max(1.0, std::abs(v)))
    throw Error(ErrorCode::NonConvergent, "half-line quadrature error " + std::to_string(r.error));
  return r;
}

}  // namespace bergsharp::specfun
