#pragma once

// Weighted Bergman space on the unit disc, normalized convention:
//   dA_alpha = (alpha-1)/pi (1-|z|^2)^(alpha-2) dA,  alpha > 1,
//   ||z^k||^2 = k! / (alpha)_k,   K_w(z) = (1 - z conj(w))^(-alpha).
// A weight exponent a in the (1-|z|^2)^a convention corresponds to alpha = a + 2.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bergsharp/rational.hpp"

namespace bergsharp::bergman {

using Complex = std::complex<double>;

enum class MeasureVariant { Mu, Nu };

/// Weight parameter and derivative order.
struct SpaceParams {
  double alpha = 2.0;
  unsigned n = 0;

  /// Throws InvalidArgument unless alpha > 1.
  void validate() const;
  /// (n+1)(n+alpha) for mu, 2n+alpha for nu.
  double exponent(MeasureVariant v) const;
};

/// Holomorphic polynomial f(z) = sum_k a_k z^k. Immutable once built.
class AnalyticPolynomial {
 public:
  AnalyticPolynomial() = default;
  explicit AnalyticPolynomial(std::vector<Complex> coeffs);

  static AnalyticPolynomial monomial(std::size_t k, Complex coeff = 1.0);

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Complex operator()(Complex z) const noexcept;
  AnalyticPolynomial scaled(Complex s) const;

 private:
  std::vector<Complex> coeffs_;
};

/// Point of the open unit disc.
class DiskPoint {
 public:
  explicit DiskPoint(Complex z);
  Complex z() const noexcept { return z_; }
  double abs() const noexcept { return std::abs(z_); }
  double abs2() const noexcept { return std::norm(z_); }

 private:
  Complex z_;
};

struct ExactComplex {
  Rational re, im;
};

/// m_k = ||z^k||^2 = k! / (alpha)_k.
Rational monomial_norm(unsigned k, const Rational& alpha);
double monomial_norm(unsigned k, double alpha);

/// Parseval: sum_k |a_k|^2 m_k.
double norm_sq(const AnalyticPolynomial& f, double alpha);
Rational norm_sq(std::span<const ExactComplex> coeffs, const Rational& alpha);

/// <f, g> = sum_k a_k conj(b_k) m_k.
Complex inner_product(const AnalyticPolynomial& f, const AnalyticPolynomial& g, double alpha);

/// (1 - z conj(w))^(-alpha), principal branch.
Complex eval_kernel(DiskPoint w, DiskPoint z, double alpha);

struct KernelTruncation {
  AnalyticPolynomial poly;
  double tail_bound = 0.0;  ///< bound on sum of dropped |coefficients|
};

/// Taylor polynomial of K_w with coefficients (alpha)_k/k! conj(w)^k, cut where the
/// geometric tail majorant drops below tol. Throws TruncationFail at degree_cap.
KernelTruncation kernel_polynomial(DiskPoint w, double alpha, double tol = 1e-12, std::size_t degree_cap = 20000);

/// Coefficients of f^(n).
AnalyticPolynomial derivative_coeffs(const AnalyticPolynomial& f, unsigned n);

/// Both algebraic forms of the pointwise-bound profile g(r):
///   closed:  n!(alpha)_n (1-r^2)^(-alpha-2n) F(1-alpha-n, -n; 1; r^2)
///   series:  n!(alpha)_n F(n+1, alpha+n; 1; r^2)
struct GForms {
  double closed = 0.0;
  double series = 0.0;
  double series_error = 0.0;
  double relative_gap() const;
};

GForms g_profile_forms(unsigned n, double alpha, double r);

/// Common value of both forms; throws FormMismatch if they differ by more than 1e-10 relative.
double g_profile(unsigned n, double alpha, double r);

/// Densities with respect to planar Lebesgue measure.
double density_mu(unsigned n, double alpha, DiskPoint z);
double density_nu(unsigned n, double alpha, DiskPoint z);
double density_hyperbolic(DiskPoint z);

/// Hyperbolic area pi r^2 / (1 - r^2) of the origin-centred disc of radius r, and its inverse.
double hyperbolic_disc_area(double r);
double radius_for_area(double s);
/// 2 pi r / (1 - r^2).
double hyperbolic_circle_length(double r);

struct PointwiseMargin {
  double g = 0.0;
  double norm_sq = 0.0;
  double derivative_abs_sq = 0.0;
  double margin = 0.0;  ///< g * norm_sq - |f^(n)(z)|^2
};

/// Margin of |f^(n)(z)|^2 <= g(|z|) ||f||^2. Throws Violation if the margin is
/// below -1e-10 relative to g * ||f||^2.
PointwiseMargin pointwise_bound_check(const AnalyticPolynomial& f, unsigned n, double alpha, DiskPoint z);

}  // namespace bergsharp::bergman
