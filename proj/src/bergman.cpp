#include "bergsharp/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bergsharp/error.hpp"
#include "bergsharp/specfun.hpp"

namespace bergsharp::bergman {

using specfun::HypergeomParams;
using specfun::pochhammer;

void SpaceParams::validate() const {
  if (!(alpha > 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must exceed 1, got " + std::to_string(alpha));
}

double SpaceParams::exponent(MeasureVariant v) const {
  const double nn = n;
  return v == MeasureVariant::Mu ? (nn + 1.0) * (nn + alpha) : 2.0 * nn + alpha;
}

AnalyticPolynomial::AnalyticPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

AnalyticPolynomial AnalyticPolynomial::monomial(std::size_t k, Complex coeff) {
  std::vector<Complex> c(k + 1);
  c[k] = coeff;
  return AnalyticPolynomial(std::move(c));
}

Complex AnalyticPolynomial::operator()(Complex z) const noexcept {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

AnalyticPolynomial AnalyticPolynomial::scaled(Complex s) const {
  std::vector<Complex> c(coeffs_);
  for (auto& v : c) v *= s;
  return AnalyticPolynomial(std::move(c));
}

DiskPoint::DiskPoint(Complex z) : z_(z) {
  if (!(std::norm(z) < 1.0)) throw Error(ErrorCode::InvalidArgument, "point outside the open unit disc");
}

Rational monomial_norm(unsigned k, const Rational& alpha) {
  return pochhammer(Rational(1), k) / pochhammer(alpha, k);
}

double monomial_norm(unsigned k, double alpha) {
  // Product form avoids overflow of k! and (alpha)_k separately.
  double m = 1.0;
  for (unsigned i = 0; i < k; ++i) m *= (i + 1.0) / (alpha + i);
  return m;
}

double norm_sq(const AnalyticPolynomial& f, double alpha) {
  double sum = 0.0, m = 1.0;
  auto c = f.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k > 0) m *= static_cast<double>(k) / (alpha + static_cast<double>(k) - 1.0);
    sum += std::norm(c[k]) * m;
  }
  return sum;
}

Rational norm_sq(std::span<const ExactComplex> coeffs, const Rational& alpha) {
  Rational sum(0), m(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) m *= Rational(static_cast<long>(k)) / (alpha + static_cast<long>(k) - 1);
    sum += (coeffs[k].re * coeffs[k].re + coeffs[k].im * coeffs[k].im) * m;
  }
  return sum;
}

Complex inner_product(const AnalyticPolynomial& f, const AnalyticPolynomial& g, double alpha) {
  Complex sum{};
  double m = 1.0;
  const std::size_t len = std::min(f.coeffs().size(), g.coeffs().size());
  for (std::size_t k = 0; k < len; ++k) {
    if (k > 0) m *= static_cast<double>(k) / (alpha + static_cast<double>(k) - 1.0);
    sum += f.coeff(k) * std::conj(g.coeff(k)) * m;
  }
  return sum;
}

Complex eval_kernel(DiskPoint w, DiskPoint z, double alpha) {
  return std::pow(Complex(1.0) - z.z() * std::conj(w.z()), -alpha);
}

KernelTruncation kernel_polynomial(DiskPoint w, double alpha, double tol, std::size_t degree_cap) {
  const double rw = w.abs();
  const Complex wc = std::conj(w.z());
  std::vector<Complex> coeffs{Complex(1.0)};
  if (rw == 0.0) return {AnalyticPolynomial(std::move(coeffs)), 0.0};

  double mag = 1.0;   // (alpha)_k / k! |w|^k
  Complex c(1.0);     // (alpha)_k / k! conj(w)^k
  for (std::size_t k = 0; k < degree_cap; ++k) {
    const double kk = static_cast<double>(k);
    const double ratio = (alpha + kk) / (kk + 1.0);
    mag *= ratio * rw;
    c *= ratio * wc;
    // Tail beyond the current degree k: dropped terms start at k+1 with magnitude mag.
    const double next_ratio = (alpha + kk + 1.0) / (kk + 2.0) * rw;
    if (next_ratio < 1.0) {
      const double tail = mag / (1.0 - next_ratio);
      if (tail <= tol) return {AnalyticPolynomial(std::move(coeffs)), tail};
    }
    coeffs.push_back(c);
  }
  throw Error(ErrorCode::TruncationFail, "kernel tail bound not reached below degree cap");
}

AnalyticPolynomial derivative_coeffs(const AnalyticPolynomial& f, unsigned n) {
  auto a = f.coeffs();
  if (a.size() <= n) return {};
  std::vector<Complex> b(a.size() - n);
  for (std::size_t k = n; k < a.size(); ++k) {
    double falling = 1.0;
    for (unsigned i = 0; i < n; ++i) falling *= static_cast<double>(k - i);
    b[k - n] = falling * a[k];
  }
  return AnalyticPolynomial(std::move(b));
}

double GForms::relative_gap() const { return std::abs(closed - series) / std::max(std::abs(series), 1e-300); }

GForms g_profile_forms(unsigned n, double alpha, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "g_profile needs 0 <= r < 1");
  const double x = r * r;
  const double scale = pochhammer(1.0, n) * pochhammer(alpha, n);
  const double nn = n;
  GForms out;
  out.closed = scale * std::pow(1.0 - x, -alpha - 2.0 * nn) *
               specfun::hypergeom_terminating(HypergeomParams<double>{1.0 - alpha - nn, -nn, 1.0}, x);
  specfun::Estimate s = specfun::hypergeom_series(HypergeomParams<double>{nn + 1.0, alpha + nn, 1.0}, x);
  out.series = scale * s.value;
  out.series_error = scale * s.error;
  return out;
}

double g_profile(unsigned n, double alpha, double r) {
  GForms g = g_profile_forms(n, alpha, r);
  if (g.relative_gap() > 1e-10)
    throw Error(ErrorCode::FormMismatch, "closed and series forms of g differ by " + std::to_string(g.relative_gap()));
  return g.closed;
}

double density_mu(unsigned n, double alpha, DiskPoint z) {
  const double x = z.abs2(), nn = n;
  const double p = specfun::hypergeom_terminating(HypergeomParams<double>{1.0 - alpha - nn, -nn, 1.0}, x);
  return (alpha + 2.0 * nn - 1.0) * std::pow(1.0 - x, alpha + 2.0 * nn) /
         (std::numbers::pi * pochhammer(1.0, n) * pochhammer(alpha, n) * p);
}

double density_nu(unsigned n, double alpha, DiskPoint z) {
  const double x = z.abs2(), nn = n;
  // Gamma(alpha) / Gamma(alpha + 2n - 1) = 1 / (alpha)_{2n-1}; for n = 0 this is alpha - 1.
  const double gamma_ratio = n == 0 ? alpha - 1.0 : 1.0 / pochhammer(alpha, 2 * n - 1);
  return gamma_ratio * std::pow(1.0 - x, alpha + 2.0 * nn) / std::numbers::pi;
}

double density_hyperbolic(DiskPoint z) {
  const double d = 1.0 - z.abs2();
  return 1.0 / (d * d);
}

double hyperbolic_disc_area(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "radius must lie in [0, 1)");
  return std::numbers::pi * r * r / (1.0 - r * r);
}

double radius_for_area(double s) {
  if (!(s >= 0.0)) throw Error(ErrorCode::InvalidArgument, "area must be nonnegative");
  return std::sqrt(s / (s + std::numbers::pi));
}

double hyperbolic_circle_length(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "radius must lie in [0, 1)");
  return 2.0 * std::numbers::pi * r / (1.0 - r * r);
}

PointwiseMargin pointwise_bound_check(const AnalyticPolynomial& f, unsigned n, double alpha, DiskPoint z) {
  PointwiseMargin m;
  m.g = g_profile(n, alpha, z.abs());
  m.norm_sq = norm_sq(f, alpha);
  m.derivative_abs_sq = std::norm(derivative_coeffs(f, n)(z.z()));
  m.margin = m.g * m.norm_sq - m.derivative_abs_sq;
  if (m.margin < -1e-10 * m.g * m.norm_sq)
    throw Error(ErrorCode::Violation, "pointwise derivative bound violated, margin " + std::to_string(m.margin));
  return m;
}

}  // namespace bergsharp::bergman
