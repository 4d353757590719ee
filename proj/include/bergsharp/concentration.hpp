#pragma once

// Superlevel-set concentration of u_n(z) = |f^(n)(z)|^2 / g(|z|) against the
// hyperbolic measure dmu = (1-|z|^2)^-2 dA.
//
// Level sets are measured along geodesic rays cast from the (numerical) argmax
// c of u_n, in Moebius coordinates zeta = (c - z) / (1 - conj(c) z). With
// zeta = tanh(d/2) e^{i phi} the measure is sinh(d)/4 dd dphi, so every ray
// interval [a, b] has closed-form measure (cosh b - cosh a) / 4.

#include <optional>
#include <string>
#include <vector>

#include "bergsharp/bergman.hpp"
#include "bergsharp/rational.hpp"
#include "bergsharp/specfun.hpp"

namespace bergsharp::concentration {

using bergman::AnalyticPolynomial;
using bergman::Complex;
using bergman::MeasureVariant;
using bergman::SpaceParams;

std::string to_string(MeasureVariant v);

/// u_n for a norm-1 copy of f.
///   mu: |f^(n)|^2 (1-x)^(alpha+2n) / (pi n! (alpha)_n P(x)),  x = |z|^2
///   nu: |f^(n)|^2 (1-x)^(alpha+2n) / (pi (alpha)_{2n-1})
class UFunction {
 public:
  /// Normalizes f; throws InvalidArgument for f = 0.
  UFunction(const AnalyticPolynomial& f, SpaceParams params, MeasureVariant variant = MeasureVariant::Mu);

  double operator()(Complex z) const;
  /// Same value with 1 - |z|^2 supplied by the caller (keeps precision near the circle).
  double eval(Complex z, double gap) const;

  const AnalyticPolynomial& normalized() const noexcept { return f_; }
  const AnalyticPolynomial& derivative() const noexcept { return df_; }
  const SpaceParams& params() const noexcept { return params_; }
  MeasureVariant variant() const noexcept { return variant_; }

  bool vanishes() const noexcept { return df_.is_zero(); }
  /// |f^(n)| depends on |z| only.
  bool radial() const noexcept;
  /// (n+1)(n+alpha) for mu, 2n+alpha for nu.
  double exponent() const noexcept { return params_.exponent(variant_); }
  /// I_hat / I_raw: alpha+2n-1 for mu, 1 for nu.
  double hat_factor() const noexcept;
  /// Sharp pointwise ceiling of u_n: 1/pi for mu, (alpha+2n-1)/pi for nu.
  double ceiling() const noexcept;

 private:
  double weight(double gap) const;

  AnalyticPolynomial f_, df_;
  SpaceParams params_;
  MeasureVariant variant_;
  std::vector<double> p_coeffs_;  // P(x) = F(1-alpha-n, -n; 1; x)
  double constant_ = 0.0;
};

double u_n_eval(const AnalyticPolynomial& f, const SpaceParams& params, Complex z,
                MeasureVariant variant = MeasureVariant::Mu);

/// theta(s) = 1 - (1 + s/pi)^(1-X).
double theta(double s, double X);
/// T(t) = -pi + pi (1-t)^(1/(1-X)), the inverse of theta.
double theta_inverse(double t, double X);

/// 40 geometric points on [0.05, 100].
std::vector<double> default_s_grid();

enum class Path { Auto, Radial, Planar };

struct EngineOptions {
  double tol = 1e-10;          ///< angular convergence target (absolute, on I_raw and on rho relative)
  unsigned min_rays = 16;
  unsigned max_rays = 1024;    ///< power of two
  unsigned ray_samples = 600;  ///< uniform samples of each ray in hyperbolic distance
  double d_max = 36.0;         ///< rays stop at this hyperbolic distance
  Path path = Path::Auto;
  /// Ray origin for the planar path; defaults to the argmax of u. Refinement
  /// converges fast when level sets are star-shaped about this point.
  std::optional<Complex> centre;
};

struct LevelStats {
  double t = 0.0;
  double rho = 0.0;
  double error = 0.0;
};

struct LevelSolution {
  double s = 0.0;
  double t = 0.0;          ///< u*(s)
  double rho = 0.0;        ///< rho(t), equal to s up to the root tolerance
  double I_raw = 0.0;
  double I_literal = 0.0;  ///< literal quotient: |f^(n)|^2 against the variant measure over the same set
  double error = 0.0;      ///< on I_raw
  unsigned rays = 0;
};

/// Holds one u_n with its ray caches. Not thread-safe; use one engine per worker.
class ConcentrationEngine {
 public:
  explicit ConcentrationEngine(UFunction u, EngineOptions options = {});

  const UFunction& u() const noexcept { return u_; }
  bool radial_path() const noexcept { return radial_; }
  Complex centre() const noexcept { return centre_; }
  double sup() const noexcept { return sup_; }

  /// Hyperbolic measure of {u > t}, refined over rays. Throws Unbounded for t <= 0.
  LevelStats rho(double t);
  LevelStats rho_fixed(double t, unsigned rays);

  /// Level t with rho(t) = s; 0 when u vanishes identically.
  double u_star(double s);

  LevelSolution solve(double s);
  LevelSolution solve_fixed(double s, unsigned rays);

  /// Largest ray count used so far (1 on the radial path).
  unsigned rays_used() const noexcept { return rays_used_; }

 private:
  struct Ray {
    double phi = 0.0;
    std::vector<double> d, v;  // nodes: grid points plus refined local extrema
  };
  struct RayLevel {
    double measure = 0.0;
    double integral = 0.0;
    double literal = 0.0;
    double error = 0.0;
  };

  const Ray& ray(unsigned index);
  double ray_value(double phi, double d) const;
  double ray_gap(double phi, double d) const;
  std::vector<std::pair<double, double>> intervals(const Ray& r, double t) const;
  RayLevel ray_level(const Ray& r, double t, bool integrate);
  double rho_raw(double t, unsigned rays);
  void locate_centre();

  UFunction u_;
  EngineOptions opt_;
  bool radial_ = false;
  Complex centre_{};
  double sup_ = 0.0;
  unsigned rays_used_ = 0;
  std::vector<double> grid_;
  std::vector<std::optional<Ray>> cache_;
};

LevelStats distribution_rho(const AnalyticPolynomial& f, const SpaceParams& params, double t,
                            MeasureVariant variant = MeasureVariant::Mu, EngineOptions options = {});
double u_star(const AnalyticPolynomial& f, const SpaceParams& params, double s,
              MeasureVariant variant = MeasureVariant::Mu, EngineOptions options = {});

struct ProfileSample {
  double s = 0.0;
  double t = 0.0;
  double I_raw = 0.0;
  double I_hat = 0.0;
  double I_literal = 0.0;
  double theta = 0.0;
  double margin = 0.0;  ///< theta - I_hat
  double error = 0.0;   ///< on I_hat
  unsigned rays = 0;
};

struct ConcentrationProfile {
  SpaceParams params;
  std::string function_id;
  std::vector<Complex> coefficients;  ///< of the normalized f
  MeasureVariant variant = MeasureVariant::Mu;
  double X = 0.0;
  double hat_factor = 1.0;
  double sup_u = 0.0;
  double ceiling = 0.0;
  unsigned rays = 0;
  std::vector<ProfileSample> samples;
};

/// Throws InvalidArgument unless s_grid is strictly increasing and positive.
ConcentrationProfile profile_I(const AnalyticPolynomial& f, const SpaceParams& params, const std::vector<double>& s_grid,
                               MeasureVariant variant = MeasureVariant::Mu, EngineOptions options = {},
                               std::string function_id = "f");

struct BoundReport {
  bool pass = true;          ///< every margin >= -error bar
  bool strict = true;        ///< every margin > error bar
  bool monotone = true;      ///< I_raw nondecreasing within error bars
  bool normalized = true;    ///< I_hat <= 1 + error bar
  bool ceiling_ok = true;    ///< sup u <= ceiling + 1e-12
  double min_margin = 0.0;
  double max_abs_margin = 0.0;
  std::optional<std::size_t> worst_index;
};

BoundReport bound_report(const ConcentrationProfile& profile);

struct OdeConvexityReport {
  double tol = 1e-6;
  std::vector<double> s, ode_residual;   ///< D2 I_hat + X D1 I_hat / (pi + s)
  std::vector<double> t, J;              ///< J(t) = I_hat(T(t)) on a uniform t-grid
  std::vector<double> second_differences;
  double min_ode_residual = 0.0;
  double min_second_difference = 0.0;
  bool ode_ok = true;
  bool convex_ok = true;
  bool passed() const { return ode_ok && convex_ok; }
};

/// Richardson finite differences (steps h = 0.05 s and h/2) at the profile's
/// s-samples and second differences of J on t = 0.02, 0.04, ..., 0.98, all at
/// the profile's final ray count.
OdeConvexityReport ode_convexity_check(const ConcentrationProfile& profile, EngineOptions options = {},
                                       double tol = 1e-6);

struct LaplacianCheck {
  std::vector<double> t, H;
  double min_H = 0.0;
  double argmin_t = 0.0;
  bool h0_exact_zero = false;
};

/// H(t) = X (1-t)^-2 F^2 - F F' - t F F'' + t F'^2 with F = F(n+1, n+alpha; 1; t),
/// X = (n+1)(n+alpha). Uses F = (1-t)^(-alpha-2n) P(t), so H = (1-t)^(-2m-2) Htilde
/// with Htilde an exact rational polynomial; its sign is decided exactly.
/// Throws Violation if min H < -1e-10.
LaplacianCheck laplacian_log_g_check(unsigned n, const Rational& alpha, const std::vector<double>& t_grid);
/// The exact polynomial Htilde.
Polynomial<Rational> laplacian_numerator(unsigned n, const Rational& alpha);

struct FockMargin {
  specfun::Estimate integral;
  Rational bound;       ///< n! ((k-n)!)^2 / k!
  double margin = 0.0;  ///< integral - bound
  double error_bar = 0.0;
  bool holds() const { return margin <= error_bar; }
};

/// \int_0^inf y^(k-n) e^-y / L_n(-y) dy against its bound. Throws Violation
/// if the margin exceeds the error bar.
FockMargin fock_limit_check(unsigned k, unsigned n, double tol = specfun::kDefaultQuadratureTol);

struct FockConvergence {
  unsigned k = 0, n = 0;
  std::vector<double> R;
  std::vector<specfun::Estimate> scaled;  ///< \int_0^R y^(k-n) (1-y/R)^(R+2n-2) / P_R(y/R) dy
  specfun::Estimate limit;                ///< Fock integral
  std::vector<double> gaps;               ///< |scaled - limit|
  bool gaps_strictly_shrinking() const;
};

FockConvergence bergman_to_fock_convergence(unsigned k, unsigned n, const std::vector<double>& R_list,
                                            double tol = specfun::kDefaultQuadratureTol);

}  // namespace bergsharp::concentration
