#pragma once

// Special-function kernel: Pochhammer symbols, Gauss hypergeometric sums,
// the Jacobi family P_n^{(0, alpha-1)}, L_n(-y), and weighted quadrature.
// Every numeric result that is not exact carries an error estimate.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <type_traits>

#include "bergsharp/error.hpp"
#include "bergsharp/polynomial.hpp"
#include "bergsharp/rational.hpp"

namespace bergsharp::specfun {

/// A floating-point value together with an absolute error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

inline constexpr double kDefaultQuadratureTol = 1e-12;
inline constexpr std::size_t kSeriesIterationCap = 1'000'000;
/// Float terminating sums up to this many terms are routed through exact arithmetic.
inline constexpr unsigned kExactTerminatingMaxTerms = 30;

/// Rising factorial x(x+1)...(x+k-1); 1 for k = 0.
template <typename T>
T pochhammer(const T& x, unsigned k) {
  T result(1);
  for (unsigned i = 0; i < k; ++i) result *= x + T(static_cast<long>(i));
  return result;
}

/// Nonpositive integer value -m of a parameter, if it is one.
std::optional<unsigned> nonpositive_integer(double x);
std::optional<unsigned> nonpositive_integer(const Rational& x);

template <typename T>
struct HypergeomParams {
  T a, b, c;

  /// Index of the last nonzero term when a or b is a nonpositive integer.
  std::optional<unsigned> stop_index() const {
    auto sa = nonpositive_integer(a), sb = nonpositive_integer(b);
    if (sa && sb) return std::min(*sa, *sb);
    return sa ? sa : sb;
  }
  bool terminating() const { return stop_index().has_value(); }
};

/// Coefficients of the terminating series F(a,b;c;t) as a polynomial in t.
/// Throws InvalidArgument when the series does not terminate or c hits a pole first.
template <typename T>
Polynomial<T> hypergeom_polynomial(const HypergeomParams<T>& p) {
  auto stop = p.stop_index();
  if (!stop) throw Error(ErrorCode::InvalidArgument, "hypergeometric series does not terminate");
  std::vector<T> coeffs;
  coeffs.reserve(*stop + 1);
  T term(1);
  coeffs.push_back(term);
  for (unsigned k = 0; k < *stop; ++k) {
    T kk(static_cast<long>(k));
    T denom = (p.c + kk) * (kk + T(1));
    if (denom == T(0)) throw Error(ErrorCode::InvalidArgument, "lower parameter c is a pole of the sum");
    term = term * (p.a + kk) * (p.b + kk) / denom;
    coeffs.push_back(term);
  }
  return Polynomial<T>(std::move(coeffs));
}

/// Exact evaluation of a terminating F(a,b;c;t).
Rational hypergeom_terminating(const HypergeomParams<Rational>& params, const Rational& t);

/// Float entry point. Short sums are evaluated exactly and rounded once.
double hypergeom_terminating(const HypergeomParams<double>& params, double t);

/// Partial sum of F(a,b;c;x), 0 <= x < 1, stopped once the geometric
/// majorant of the tail is below rel_tol * |partial sum|. The reported error
/// is the tail bound plus an accumulated rounding allowance.
Estimate hypergeom_series(const HypergeomParams<double>& params, double x, double rel_tol = 1e-15);

/// Jacobi polynomial P_n^{(0, alpha-1)}(x) by the three-term recurrence.
double jacobi_eval(unsigned n, double alpha, double x);

/// L_n(-y) = sum_k C(n,k) y^k / k!, positive for y >= 0.
double laguerre_eval(unsigned n, double y);

/// Beta(a, b) via log-gamma.
double beta_function(double a, double b);

/// \int_0^1 t^p (1-t)^q f(t) dt for p, q > -1 with an absolute error estimate.
/// f receives (t, 1-t) so that the factor near t = 1 keeps full precision.
/// Throws InvalidExponent for p <= -1 or q <= -1 and NonConvergent when the
/// estimate stays above tol after interval splitting.
Estimate integrate_01_weighted(const std::function<double(double, double)>& f, double p, double q,
                               double tol = kDefaultQuadratureTol);

/// Convenience overload for integrands that only need t.
Estimate integrate_01_weighted(const std::function<double(double)>& f, double p, double q,
                               double tol = kDefaultQuadratureTol);

/// \int_0^inf e^{-y} f(y) dy for f of at most polynomial growth. tol is
/// relative to the magnitude of the integral.
Estimate integrate_halfline_exp(const std::function<double(double)>& f, double tol = kDefaultQuadratureTol);

}  // namespace bergsharp::specfun
