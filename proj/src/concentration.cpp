#include "bergsharp/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "bergsharp/error.hpp"

namespace bergsharp::concentration {

using specfun::HypergeomParams;
using specfun::pochhammer;
constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string to_string(MeasureVariant v) { return v == MeasureVariant::Mu ? "mu" : "nu"; }

// ------------------------------------------------------------------ u_n

UFunction::UFunction(const AnalyticPolynomial& f, SpaceParams params, MeasureVariant variant)
    : params_(params), variant_(variant) {
  params_.validate();
  const double nsq = bergman::norm_sq(f, params_.alpha);
  if (!(nsq > 0.0)) throw Error(ErrorCode::InvalidArgument, "u_n needs a nonzero f");
  f_ = f.scaled(1.0 / std::sqrt(nsq));
  df_ = bergman::derivative_coeffs(f_, params_.n);

  const double a = params_.alpha, nn = params_.n;
  p_coeffs_ = specfun::hypergeom_polynomial(HypergeomParams<double>{1.0 - a - nn, -nn, 1.0}).coeffs();
  if (variant_ == MeasureVariant::Mu) {
    constant_ = 1.0 / (kPi * pochhammer(1.0, params_.n) * pochhammer(a, params_.n));
  } else {
    constant_ = (params_.n == 0 ? a - 1.0 : 1.0 / pochhammer(a, 2 * params_.n - 1)) / kPi;
  }
}

double UFunction::weight(double gap) const {
  const double w = std::pow(gap, params_.alpha + 2.0 * params_.n) * constant_;
  if (variant_ == MeasureVariant::Nu) return w;
  const double x = 1.0 - gap;
  double p = 0.0;
  for (auto it = p_coeffs_.rbegin(); it != p_coeffs_.rend(); ++it) p = p * x + *it;
  return w / p;
}

double UFunction::eval(Complex z, double gap) const {
  if (df_.is_zero()) return 0.0;
  return std::norm(df_(z)) * weight(gap);
}

double UFunction::operator()(Complex z) const {
  const double gap = 1.0 - std::norm(z);
  if (!(gap > 0.0)) throw Error(ErrorCode::InvalidArgument, "point outside the open unit disc");
  return eval(z, gap);
}

bool UFunction::radial() const noexcept {
  return std::count_if(df_.coeffs().begin(), df_.coeffs().end(), [](Complex c) { return c != Complex{}; }) <= 1;
}

double UFunction::hat_factor() const noexcept {
  return variant_ == MeasureVariant::Mu ? params_.alpha + 2.0 * params_.n - 1.0 : 1.0;
}

double UFunction::ceiling() const noexcept {
  return variant_ == MeasureVariant::Mu ? 1.0 / kPi : (params_.alpha + 2.0 * params_.n - 1.0) / kPi;
}

double u_n_eval(const AnalyticPolynomial& f, const SpaceParams& params, Complex z, MeasureVariant variant) {
  return UFunction(f, params, variant)(z);
}

double theta(double s, double X) { return -std::expm1((1.0 - X) * std::log1p(s / kPi)); }

double theta_inverse(double t, double X) { return kPi * std::expm1(std::log1p(-t) / (1.0 - X)); }

std::vector<double> default_s_grid() {
  std::vector<double> s(40);
  const double lo = std::log(0.05), hi = std::log(100.0);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::exp(lo + (hi - lo) * double(i) / double(s.size() - 1));
  s.back() = 100.0;
  return s;
}

// --------------------------------------------------------------- engine

ConcentrationEngine::ConcentrationEngine(UFunction u, EngineOptions options) : u_(std::move(u)), opt_(options) {
  if (opt_.ray_samples < 16) throw Error(ErrorCode::InvalidArgument, "too few ray samples");
  if (opt_.max_rays == 0 || (opt_.max_rays & (opt_.max_rays - 1)) != 0 || opt_.min_rays < 2 ||
      opt_.min_rays > opt_.max_rays || (opt_.max_rays % opt_.min_rays) != 0)
    throw Error(ErrorCode::InvalidArgument, "ray counts must be powers of two with min <= max");
  if (opt_.path == Path::Radial && !u_.radial())
    throw Error(ErrorCode::InvalidArgument, "radial path requested for a non-radial |f^(n)|");
  radial_ = opt_.path == Path::Radial || (opt_.path == Path::Auto && u_.radial());

  grid_.resize(opt_.ray_samples);
  for (std::size_t i = 0; i < grid_.size(); ++i) grid_[i] = opt_.d_max * double(i) / double(grid_.size() - 1);
  if (u_.vanishes()) return;
  locate_centre();
  cache_.assign(radial_ ? 1 : opt_.max_rays, std::nullopt);
}

double ConcentrationEngine::ray_gap(double phi, double d) const {
  const double c2 = std::norm(centre_);
  const double ch = std::cosh(0.5 * d);
  const Complex zeta = std::tanh(0.5 * d) * std::polar(1.0, phi);
  return (1.0 - c2) / (ch * ch * std::norm(1.0 - std::conj(centre_) * zeta));
}

double ConcentrationEngine::ray_value(double phi, double d) const {
  const Complex zeta = std::tanh(0.5 * d) * std::polar(1.0, phi);
  const Complex z = (centre_ - zeta) / (1.0 - std::conj(centre_) * zeta);
  return u_.eval(z, ray_gap(phi, d));
}

void ConcentrationEngine::locate_centre() {
  namespace bm = boost::math::tools;
  if (radial_) {
    centre_ = 0.0;
    std::size_t best = 0;
    double best_v = -1.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      double v = ray_value(0.0, grid_[i]);
      if (v > best_v) best_v = v, best = i;
    }
    const double lo = grid_[best == 0 ? 0 : best - 1], hi = grid_[std::min(best + 1, grid_.size() - 1)];
    auto r = bm::brent_find_minima([&](double d) { return -ray_value(0.0, d); }, lo, hi, 52);
    sup_ = std::max(best_v, -r.second);
    return;
  }

  Complex best{};
  double best_v = -1.0;
  for (int i = 0; i <= 40; ++i) {
    const double d = 0.2 * i;
    for (int j = 0; j < (i == 0 ? 1 : 64); ++j) {
      const Complex z = std::tanh(0.5 * d) * std::polar(1.0, 2.0 * kPi * j / 64.0);
      const double ch = std::cosh(0.5 * d);
      const double v = u_.eval(z, 1.0 / (ch * ch));
      if (v > best_v) best_v = v, best = z;
    }
  }
  // Compass search; steps scale with the distance to the circle.
  double h = 0.05 * (1.0 - std::abs(best));
  const Complex dirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  while (h > 1e-14) {
    bool moved = false;
    for (Complex dir : dirs) {
      const Complex z = best + h * dir;
      if (std::norm(z) >= 1.0) continue;
      const double v = u_(z);
      if (v > best_v) {
        best_v = v;
        best = z;
        moved = true;
      }
    }
    if (!moved) h *= 0.5;
  }
  centre_ = opt_.centre.value_or(best);
  if (std::norm(centre_) >= 1.0) throw Error(ErrorCode::InvalidArgument, "ray origin outside the disc");
  sup_ = best_v;
}

const ConcentrationEngine::Ray& ConcentrationEngine::ray(unsigned index) {
  namespace bm = boost::math::tools;
  auto& slot = cache_.at(index);
  if (!slot) {
    Ray r;
    r.phi = radial_ ? 0.0 : 2.0 * kPi * double(index) / double(opt_.max_rays);
    std::vector<double> v(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) v[i] = ray_value(r.phi, grid_[i]);
    // Refined interior extrema join the grid nodes, so that between two
    // consecutive nodes the ray profile is monotone and no thin crossing is lost.
    std::vector<std::pair<double, double>> nodes;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      nodes.emplace_back(grid_[i], v[i]);
      if (i == 0 || i + 1 == grid_.size()) continue;
      const bool is_max = v[i] > v[i - 1] && v[i] >= v[i + 1];
      const bool is_min = v[i] < v[i - 1] && v[i] <= v[i + 1];
      if (!is_max && !is_min) continue;
      const double sgn = is_max ? -1.0 : 1.0;
      auto ext = bm::brent_find_minima([&](double d) { return sgn * ray_value(r.phi, d); }, grid_[i - 1],
                                       grid_[i + 1], 52);
      if (ext.first > grid_[i - 1] && ext.first < grid_[i + 1] && ext.first != grid_[i])
        nodes.emplace_back(ext.first, sgn * ext.second);
    }
    std::sort(nodes.begin(), nodes.end());
    for (auto [d, val] : nodes) {
      r.d.push_back(d);
      r.v.push_back(val);
      sup_ = std::max(sup_, val);
    }
    slot = std::move(r);
  }
  return *slot;
}

std::vector<std::pair<double, double>> ConcentrationEngine::intervals(const Ray& r, double t) const {
  namespace bm = boost::math::tools;
  std::vector<std::pair<double, double>> out;
  auto crossing = [&](std::size_t i) {
    double a = r.d[i - 1], b = r.d[i];
    double fa = r.v[i - 1] - t, fb = r.v[i] - t;
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    std::uintmax_t it = 200;
    auto root = bm::toms748_solve([&](double d) { return ray_value(r.phi, d) - t; }, a, b, fa, fb,
                                  bm::eps_tolerance<double>(52), it);
    return 0.5 * (root.first + root.second);
  };
  bool inside = r.v[0] > t;
  double start = 0.0;
  for (std::size_t i = 1; i < r.d.size(); ++i) {
    const bool now = r.v[i] > t;
    if (now == inside) continue;
    const double d = crossing(i);
    if (now) {
      start = d;
    } else {
      out.emplace_back(start, d);
    }
    inside = now;
  }
  if (inside) throw Error(ErrorCode::NonConvergent, "superlevel set reaches the ray cutoff");
  return out;
}

ConcentrationEngine::RayLevel ConcentrationEngine::ray_level(const Ray& r, double t, bool integrate) {
  using Gk = boost::math::quadrature::gauss_kronrod<double, 31>;
  RayLevel out;
  for (auto [a, b] : intervals(r, t)) {
    out.measure += 0.25 * (std::cosh(b) - std::cosh(a));
    if (!integrate) continue;
    double e1 = 0.0, e2 = 0.0;
    out.integral += Gk::integrate([&](double d) { return 0.25 * ray_value(r.phi, d) * std::sinh(d); }, a, b, 10,
                                  1e-12, &e1);
    out.literal += Gk::integrate(
        [&](double d) {
          const double g = ray_gap(r.phi, d);
          return 0.25 * ray_value(r.phi, d) * g * g * std::sinh(d);
        },
        a, b, 10, 1e-12, &e2);
    out.error += e1;
  }
  return out;
}

double ConcentrationEngine::rho_raw(double t, unsigned rays) {
  if (radial_) return 2.0 * kPi * ray_level(ray(0), t, false).measure;
  const unsigned step = opt_.max_rays / rays;
  double total = 0.0;
  for (unsigned j = 0; j < rays; ++j) total += ray_level(ray(j * step), t, false).measure;
  return total * 2.0 * kPi / rays;
}

LevelStats ConcentrationEngine::rho_fixed(double t, unsigned rays) {
  if (!(t > 0.0)) throw Error(ErrorCode::Unbounded, "rho(t) is infinite for t <= 0");
  if (u_.vanishes()) return {t, 0.0, 0.0};
  const double r = rho_raw(t, radial_ ? 1 : rays);
  return {t, r, 8.0 * kEps * r};
}

// Angular refinement stops once two successive doublings both move the
// estimate by at most the tolerance; a single small step can be a coincidence
// when rays graze a non-star-shaped level set.
LevelStats ConcentrationEngine::rho(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::Unbounded, "rho(t) is infinite for t <= 0");
  if (u_.vanishes() || radial_) return rho_fixed(t, 1);
  double prev = rho_raw(t, opt_.min_rays), prev_diff = std::numeric_limits<double>::infinity();
  for (unsigned n = 2 * opt_.min_rays; n <= opt_.max_rays; n *= 2) {
    const double cur = rho_raw(t, n);
    const double diff = std::abs(cur - prev);
    const double bar = opt_.tol * std::max(1.0, cur);
    if (diff <= bar && prev_diff <= bar) {
      rays_used_ = std::max(rays_used_, n);
      return {t, cur, diff + prev_diff + 8.0 * kEps * cur};
    }
    prev = cur;
    prev_diff = diff;
  }
  throw Error(ErrorCode::NonConvergent, "rho(t) did not settle within the ray budget");
}

LevelSolution ConcentrationEngine::solve_fixed(double s, unsigned rays) {
  namespace bm = boost::math::tools;
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "s must be positive");
  const unsigned n_rays = radial_ ? 1 : rays;
  LevelSolution out;
  out.s = s;
  out.rays = n_rays;
  if (u_.vanishes()) return out;
  if (!radial_ && (rays < 2 || opt_.max_rays % rays != 0))
    throw Error(ErrorCode::InvalidArgument, "ray count must divide the ray budget");

  auto g = [&](double x) { return rho_raw(std::exp(x), n_rays) - s; };
  double hi = std::log(sup_), ghi = g(hi);
  for (int k = 0; ghi > 0.0; ++k) {
    if (k > 60) throw Error(ErrorCode::NonConvergent, "upper level bracket for u*");
    hi += 1e-9 * (1 << std::min(k, 20));
    ghi = g(hi);
  }
  double lo = hi - 1.0, glo = g(lo);
  for (int k = 0; glo <= 0.0; ++k) {
    if (k > 300) throw Error(ErrorCode::NonConvergent, "lower level bracket for u*");
    hi = lo;
    ghi = glo;
    lo -= 2.0;
    glo = g(lo);
  }
  std::uintmax_t it = 300;
  auto br = bm::toms748_solve(g, lo, hi, glo, ghi, bm::eps_tolerance<double>(52), it);
  if (it >= 300) throw Error(ErrorCode::NonConvergent, "u* root search");
  const double t = std::exp(0.5 * (br.first + br.second));
  const double spread = std::abs(g(br.first) - g(br.second));

  double integral = 0.0, literal = 0.0, qerr = 0.0, measure = 0.0;
  const unsigned step = radial_ ? 1 : opt_.max_rays / n_rays;
  for (unsigned j = 0; j < n_rays; ++j) {
    auto lv = ray_level(ray(radial_ ? 0 : j * step), t, true);
    integral += lv.integral;
    literal += lv.literal;
    measure += lv.measure;
    qerr += lv.error;
  }
  const double w = 2.0 * kPi / n_rays;
  out.t = t;
  out.rho = measure * w;
  out.I_raw = integral * w;
  out.I_literal = literal * w;
  // dI/ds = u*(s), so an uncertainty in s of `spread` moves I by t * spread.
  out.error = qerr * w + t * spread + 16.0 * kEps * out.I_raw;
  return out;
}

LevelSolution ConcentrationEngine::solve(double s) {
  if (radial_ || u_.vanishes()) {
    rays_used_ = std::max(rays_used_, 1u);
    return solve_fixed(s, 1);
  }
  LevelSolution prev = solve_fixed(s, opt_.min_rays);
  double prev_diff = std::numeric_limits<double>::infinity();
  for (unsigned n = 2 * opt_.min_rays; n <= opt_.max_rays; n *= 2) {
    LevelSolution cur = solve_fixed(s, n);
    const double diff = std::abs(cur.I_raw - prev.I_raw);
    if (diff <= opt_.tol && prev_diff <= opt_.tol) {
      cur.error += diff + prev_diff;
      rays_used_ = std::max(rays_used_, n);
      return cur;
    }
    prev = cur;
    prev_diff = diff;
  }
  throw Error(ErrorCode::NonConvergent, "profile sample did not settle within the ray budget");
}

double ConcentrationEngine::u_star(double s) {
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "s must be positive");
  return solve(s).t;
}

LevelStats distribution_rho(const AnalyticPolynomial& f, const SpaceParams& params, double t, MeasureVariant variant,
                            EngineOptions options) {
  ConcentrationEngine e(UFunction(f, params, variant), options);
  return e.rho(t);
}

double u_star(const AnalyticPolynomial& f, const SpaceParams& params, double s, MeasureVariant variant,
              EngineOptions options) {
  ConcentrationEngine e(UFunction(f, params, variant), options);
  return e.u_star(s);
}

// -------------------------------------------------------------- profile

ConcentrationProfile profile_I(const AnalyticPolynomial& f, const SpaceParams& params, const std::vector<double>& s_grid,
                               MeasureVariant variant, EngineOptions options, std::string function_id) {
  for (std::size_t i = 0; i < s_grid.size(); ++i)
    if (!(s_grid[i] > 0.0) || (i > 0 && !(s_grid[i] > s_grid[i - 1])))
      throw Error(ErrorCode::InvalidArgument, "s grid must be positive and strictly increasing");
  ConcentrationEngine engine(UFunction(f, params, variant), options);
  const UFunction& u = engine.u();

  ConcentrationProfile p;
  p.params = params;
  p.function_id = std::move(function_id);
  p.coefficients.assign(u.normalized().coeffs().begin(), u.normalized().coeffs().end());
  p.variant = variant;
  p.X = u.exponent();
  p.hat_factor = u.hat_factor();
  p.ceiling = u.ceiling();

  for (double s : s_grid) {
    const LevelSolution sol = engine.solve(s);
    ProfileSample smp;
    smp.s = s;
    smp.t = sol.t;
    smp.I_raw = sol.I_raw;
    smp.I_hat = p.hat_factor * sol.I_raw;
    smp.I_literal = p.hat_factor * sol.I_literal;
    smp.theta = theta(s, p.X);
    smp.margin = smp.theta - smp.I_hat;
    smp.error = p.hat_factor * sol.error + 1e-14;
    smp.rays = sol.rays;
    p.samples.push_back(smp);
  }
  p.sup_u = engine.sup();
  p.rays = std::max(1u, engine.rays_used());
  return p;
}

BoundReport bound_report(const ConcentrationProfile& profile) {
  BoundReport r;
  r.ceiling_ok = profile.sup_u <= profile.ceiling + 1e-12;
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const auto& s = profile.samples[i];
    if (s.margin < -s.error) r.pass = false;
    if (!(s.margin > s.error)) r.strict = false;
    if (s.I_hat > 1.0 + s.error) r.normalized = false;
    if (i > 0) {
      const auto& q = profile.samples[i - 1];
      if (s.I_hat < q.I_hat - (s.error + q.error)) r.monotone = false;
    }
    if (!r.worst_index || s.margin < r.min_margin) {
      r.min_margin = s.margin;
      r.worst_index = i;
    }
    r.max_abs_margin = std::max(r.max_abs_margin, std::abs(s.margin));
  }
  r.pass = r.pass && r.ceiling_ok && r.normalized && r.monotone;
  return r;
}

OdeConvexityReport ode_convexity_check(const ConcentrationProfile& profile, EngineOptions options, double tol) {
  OdeConvexityReport rep;
  rep.tol = tol;
  ConcentrationEngine engine(UFunction(AnalyticPolynomial(profile.coefficients), profile.params, profile.variant),
                             options);
  const unsigned rays = engine.radial_path() ? 1 : std::max(profile.rays, options.min_rays);
  const double hat = profile.hat_factor, X = profile.X;
  auto I = [&](double s) { return hat * engine.solve_fixed(s, rays).I_raw; };

  bool first = true;
  for (const auto& smp : profile.samples) {
    const double s = smp.s, h = 0.05 * s;
    const double i0 = I(s), ip = I(s + h), im = I(s - h), ip2 = I(s + 0.5 * h), im2 = I(s - 0.5 * h);
    const double d1h = (ip - im) / (2.0 * h), d1h2 = (ip2 - im2) / h;
    const double d2h = (ip - 2.0 * i0 + im) / (h * h), d2h2 = (ip2 - 2.0 * i0 + im2) / (0.25 * h * h);
    const double d1 = (4.0 * d1h2 - d1h) / 3.0, d2 = (4.0 * d2h2 - d2h) / 3.0;
    const double res = d2 + X * d1 / (kPi + s);
    rep.s.push_back(s);
    rep.ode_residual.push_back(res);
    if (first || res < rep.min_ode_residual) rep.min_ode_residual = res;
    first = false;
  }

  for (int i = 1; i <= 49; ++i) {
    const double t = 0.02 * i;
    rep.t.push_back(t);
    rep.J.push_back(I(theta_inverse(t, X)));
  }
  for (std::size_t i = 1; i + 1 < rep.J.size(); ++i) {
    const double sd = rep.J[i + 1] - 2.0 * rep.J[i] + rep.J[i - 1];
    rep.second_differences.push_back(sd);
    if (i == 1 || sd < rep.min_second_difference) rep.min_second_difference = sd;
  }
  rep.ode_ok = rep.s.empty() || rep.min_ode_residual >= -tol;
  rep.convex_ok = rep.min_second_difference >= -tol;
  return rep;
}

// ---------------------------------------------------- Laplacian of log g

Polynomial<Rational> laplacian_numerator(unsigned n, const Rational& alpha) {
  if (alpha <= 1) throw Error(ErrorCode::InvalidArgument, "alpha must exceed 1");
  using P = Polynomial<Rational>;
  const P q = specfun::hypergeom_polynomial(
      HypergeomParams<Rational>{Rational(1 - alpha - n), Rational(-static_cast<long>(n)), Rational(1)});
  const Rational m = alpha + 2 * n;
  const Rational X = Rational((n + 1) * (n + alpha));
  const P omt{Rational(1), Rational(-1)}, t{Rational(0), Rational(1)};
  const P q1 = q.derivative(), q2 = q1.derivative();
  const P r1 = omt * q1 + m * q;
  const P r2 = omt * omt * q2 + Rational(2 * m) * omt * q1 + Rational(m * (m + 1)) * q;
  return X * (q * q) - omt * q * r1 - t * q * r2 + t * r1 * r1;
}

LaplacianCheck laplacian_log_g_check(unsigned n, const Rational& alpha, const std::vector<double>& t_grid) {
  const auto ht = laplacian_numerator(n, alpha);
  const double m = to_double(alpha) + 2.0 * n;
  LaplacianCheck out;
  out.h0_exact_zero = ht(Rational(0)) == 0;
  for (double t : t_grid) {
    if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidArgument, "t grid must lie in [0, 1)");
    const Rational v = ht(rational_from_double(t));
    const double h = to_double(v) * std::pow(1.0 - t, -2.0 * m - 2.0);
    out.t.push_back(t);
    out.H.push_back(h);
    if (out.t.size() == 1 || h < out.min_H) {
      out.min_H = h;
      out.argmin_t = t;
    }
  }
  if (out.min_H < -1e-10) throw Error(ErrorCode::Violation, "H(t) < 0 at t = " + std::to_string(out.argmin_t));
  return out;
}

// ----------------------------------------------------------- Fock limit

namespace {

Rational factorial(unsigned k) { return pochhammer(Rational(1), k); }

specfun::Estimate fock_integral(unsigned k, unsigned n, double tol) {
  return specfun::integrate_halfline_exp(
      [k, n](double y) { return std::pow(y, double(k - n)) / specfun::laguerre_eval(n, y); }, tol);
}

}  // namespace

FockMargin fock_limit_check(unsigned k, unsigned n, double tol) {
  if (k < n) throw Error(ErrorCode::InvalidArgument, "needs k >= n");
  FockMargin out;
  out.integral = fock_integral(k, n, tol);
  out.bound = factorial(n) * factorial(k - n) * factorial(k - n) / factorial(k);
  const double b = to_double(out.bound);
  out.margin = out.integral.value - b;
  out.error_bar = out.integral.error + tol * b;
  if (!out.holds()) throw Error(ErrorCode::Violation, "Fock bound exceeded");
  return out;
}

bool FockConvergence::gaps_strictly_shrinking() const {
  for (std::size_t i = 1; i < gaps.size(); ++i)
    if (!(gaps[i] < gaps[i - 1])) return false;
  return !gaps.empty();
}

FockConvergence bergman_to_fock_convergence(unsigned k, unsigned n, const std::vector<double>& R_list, double tol) {
  if (k < n) throw Error(ErrorCode::InvalidArgument, "needs k >= n");
  FockConvergence out;
  out.k = k;
  out.n = n;
  out.limit = fock_integral(k, n, tol);
  double prev = 0.0;
  for (double R : R_list) {
    if (!(R > 1.0) || !(R > prev)) throw Error(ErrorCode::InvalidArgument, "R list must increase and exceed 1");
    prev = R;
    const double nn = n;
    const auto p = specfun::hypergeom_polynomial(HypergeomParams<double>{1.0 - R - nn, -nn, 1.0});
    // e^{-y} is factored out by the half-line rule, so it is put back here.
    auto f = [&](double y) {
      if (y >= R) return 0.0;
      return std::pow(y, double(k - n)) * std::exp(y + (R + 2.0 * nn - 2.0) * std::log1p(-y / R)) / p(y / R);
    };
    auto est = specfun::integrate_halfline_exp(f, tol);
    out.R.push_back(R);
    out.scaled.push_back(est);
    out.gaps.push_back(std::abs(est.value - out.limit.value));
  }
  return out;
}

}  // namespace bergsharp::concentration
