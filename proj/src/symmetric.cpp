#include "bergsharp/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bergsharp/error.hpp"

namespace bergsharp::symmetric {

using specfun::pochhammer;

std::string to_string(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::ProvenRangePass: return "PROVEN_RANGE_PASS";
    case ScanVerdict::Exploratory: return "EXPLORATORY";
    case ScanVerdict::Violation: return "VIOLATION";
  }
  return "UNKNOWN";
}

namespace {

Rational factorial(unsigned k) { return pochhammer(Rational(1), k); }

Rational binomial(unsigned n, unsigned k) {
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

Rational sign(unsigned power) { return power % 2 ? Rational(-1) : Rational(1); }

void require_alpha(const Rational& alpha) {
  if (alpha <= 1) throw Error(ErrorCode::InvalidArgument, "alpha must exceed 1");
}

}  // namespace

Rational c_ratio(unsigned k, unsigned n, const Rational& alpha) {
  if (k < n) throw Error(ErrorCode::InvalidArgument, "c_{k,n} needs k >= n");
  return Rational((k + 1) * (k + alpha)) / Rational((k - n + 1) * (k + n + alpha));
}

Rational c_coefficient(unsigned k, unsigned n, const Rational& alpha) {
  require_alpha(alpha);
  if (k < n) throw Error(ErrorCode::InvalidArgument, "c_{k,n} needs k >= n");
  Rational c = pochhammer(Rational(k - n + 1), n) / pochhammer(Rational(k + alpha), n);
  if (c > 1) throw Error(ErrorCode::Violation, "c_{k,n} exceeds 1 at k=" + std::to_string(k));
  if (c_ratio(k, n, alpha) < 1) throw Error(ErrorCode::Violation, "c_{k,n} ratio below 1 at k=" + std::to_string(k));
  return c;
}

CScan c_coefficient_scan(unsigned n, const Rational& alpha, unsigned k_max) {
  require_alpha(alpha);
  CScan scan;
  scan.n = n;
  scan.alpha = alpha;
  scan.k_max = k_max;
  Rational c = pochhammer(Rational(1), n) / pochhammer(Rational(n + alpha), n);
  auto fail = [&](unsigned k) {
    if (!scan.first_failure) scan.first_failure = k;
  };
  if (c > 1) {
    scan.all_le_one = false;
    fail(n);
  }
  for (unsigned k = n; k < k_max; ++k) {
    Rational ratio = c_ratio(k, n, alpha);
    if (ratio < 1) {
      scan.ratios_ge_one = false;
      fail(k);
    }
    if (n >= 1 && ratio <= 1) {
      scan.gap_strictly_decreasing = false;
      fail(k);
    }
    c *= ratio;
    if (c > 1) {
      scan.all_le_one = false;
      fail(k + 1);
    }
  }
  scan.last_value = c;
  return scan;
}

Rational elementary_symmetric(unsigned n, const Rational& alpha, unsigned k) {
  if (k > n) return Rational(0);
  return binomial(n, k) * pochhammer(Rational(alpha + n - k), k) / pochhammer(Rational(alpha + 2 * n - k), k);
}

std::vector<Rational> root_polynomial(unsigned n, const Rational& alpha) {
  std::vector<Rational> q(n + 1);
  for (unsigned j = 0; j <= n; ++j)
    q[j] = pochhammer(Rational(alpha + n), j) / pochhammer(alpha, j) * sign(j) * binomial(n, j);
  return q;
}

Rational elementary_symmetric_from_coefficients(unsigned n, const Rational& alpha, unsigned k) {
  if (k > n) return Rational(0);
  auto q = root_polynomial(n, alpha);
  return sign(k) * q[n - k] / q[n];
}

std::vector<Rational> complete_homogeneous_sequence(const std::vector<Rational>& e, unsigned l_max) {
  const unsigned n = e.empty() ? 0 : static_cast<unsigned>(e.size() - 1);
  std::vector<Rational> h(l_max + 1);
  h[0] = 1;
  for (unsigned l = 1; l <= l_max; ++l) {
    Rational acc(0);
    for (unsigned i = 1; i <= std::min(n, l); ++i) {
      if (i % 2)
        acc += e[i] * h[l - i];
      else
        acc -= e[i] * h[l - i];
    }
    h[l] = acc;
  }
  return h;
}

Rational complete_homogeneous(unsigned n, const Rational& alpha, unsigned l) {
  std::vector<Rational> e(n + 1);
  for (unsigned k = 0; k <= n; ++k) e[k] = elementary_symmetric(n, alpha, k);
  return complete_homogeneous_sequence(e, l)[l];
}

Rational d_bound(unsigned n, const Rational& alpha, unsigned l) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "D_l needs n >= 1");
  return factorial(n + l - 1) * pochhammer(Rational(alpha + n - 1), l) /
         (factorial(l) * factorial(n - 1) * pochhammer(Rational(alpha + 2 * n - 1), l));
}

std::vector<Rational> d_bound_sequence(unsigned n, const Rational& alpha, unsigned l_max) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "D_l needs n >= 1");
  std::vector<Rational> d(l_max + 1);
  d[0] = 1;
  for (unsigned l = 0; l < l_max; ++l)
    d[l + 1] = d[l] * Rational((n + l) * (alpha + n - 1 + l)) / Rational((l + 1) * (alpha + 2 * n - 1 + l));
  return d;
}

bool InequalityScan::equality_only_at_start() const {
  const auto& m = table.margins;
  for (std::size_t l = 0; l < m.size(); ++l) {
    if (l <= 1 && m[l] != 0) return false;
    if (l >= 2 && m[l] <= 0) return false;
  }
  return true;
}

InequalityScan main_inequality_scan(unsigned n, const Rational& alpha, unsigned l_max) {
  require_alpha(alpha);
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "scan needs n >= 1");
  InequalityScan scan;
  auto& t = scan.table;
  t.n = n;
  t.alpha = alpha;
  t.e.resize(n + 1);
  for (unsigned k = 0; k <= n; ++k) t.e[k] = elementary_symmetric(n, alpha, k);
  t.h = complete_homogeneous_sequence(t.e, l_max);
  t.d = d_bound_sequence(n, alpha, l_max);
  t.margins.resize(l_max + 1);
  for (unsigned l = 0; l <= l_max; ++l) {
    t.margins[l] = t.d[l] - t.h[l];
    const int s = sgn(t.margins[l]);
    if (s == 0) scan.zero_margin_ls.push_back(l);
    if (s < 0) scan.negative_ls.push_back(l);
    if (l >= 2 && (!scan.min_l || t.margins[l] < scan.min_margin)) {
      scan.min_l = l;
      scan.min_margin = t.margins[l];
    }
    if (l >= 3 && sgn(t.margins[l]) != sgn(t.margins[l - 1])) scan.sign_changes.push_back(l);
  }
  if (n <= kProvenMaxN)
    scan.verdict = scan.negative_ls.empty() ? ScanVerdict::ProvenRangePass : ScanVerdict::Violation;
  else
    scan.verdict = ScanVerdict::Exploratory;
  return scan;
}

bool newton_consistency(unsigned n, const Rational& alpha, unsigned l_max) {
  std::vector<Rational> e(l_max + 1, Rational(0));
  for (unsigned k = 0; k <= std::min(n, l_max); ++k) e[k] = elementary_symmetric(n, alpha, k);
  std::vector<Rational> en(n + 1);
  for (unsigned k = 0; k <= n; ++k) en[k] = elementary_symmetric(n, alpha, k);
  auto h = complete_homogeneous_sequence(en, l_max);

  std::vector<Rational> p_e(l_max + 1), p_h(l_max + 1);
  for (unsigned k = 1; k <= l_max; ++k) {
    Rational acc = sign(k - 1) * Rational(k) * e[k];
    for (unsigned i = 1; i < k; ++i) acc += sign(i - 1) * e[i] * p_e[k - i];
    p_e[k] = acc;

    Rational acc_h = Rational(k) * h[k];
    for (unsigned i = 1; i < k; ++i) acc_h -= p_h[i] * h[k - i];
    p_h[k] = acc_h;
    if (p_e[k] != p_h[k]) return false;
  }
  return true;
}

ExactEquality lemma31_check(unsigned m, const Rational& beta, const Rational& l) {
  ExactEquality r;
  Rational term(1), sum(1);
  for (unsigned s = 0; s < m; ++s) {
    Rational denom = (beta + s) * (s + 1);
    if (denom == 0) throw Error(ErrorCode::InvalidArgument, "beta hits a pole of the sum");
    term = term * Rational(s - Rational(m)) * (beta + l + m + s) / denom;
    sum += term;
  }
  r.lhs = sum;
  Rational beta_m = pochhammer(beta, m);
  if (beta_m == 0) throw Error(ErrorCode::InvalidArgument, "(beta)_m vanishes");
  r.rhs = sign(m) * pochhammer(Rational(l + 1), m) / beta_m;
  return r;
}

std::vector<Rational> b_weights(unsigned n, const Rational& alpha) {
  std::vector<Rational> b(n + 1, Rational(0));
  for (unsigned j = 1; j <= n; ++j)
    b[j] = sign(n - j) * pochhammer(Rational(j + alpha - 1), n - 1) / (factorial(j - 1) * factorial(n - j));
  return b;
}

ExactEquality b_partial_fraction_check(unsigned n, const Rational& alpha, unsigned k) {
  if (k < n || n == 0) throw Error(ErrorCode::InvalidArgument, "needs k >= n >= 1");
  auto b = b_weights(n, alpha);
  ExactEquality r;
  r.lhs = 0;
  for (unsigned j = 1; j <= n; ++j) r.lhs += b[j] / Rational(k - j + 1);
  r.rhs = pochhammer(Rational(k + alpha), n - 1) / pochhammer(Rational(k - n + 1), n);
  return r;
}

ExactEquality b_binomial_sum_check(unsigned n, const Rational& alpha, unsigned l) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "needs n >= 1");
  auto b = b_weights(n, alpha);
  const Rational lf = factorial(l);
  ExactEquality r;
  r.lhs = 0;
  for (unsigned j = 1; j <= n; ++j) r.lhs += b[j] * pochhammer(Rational(alpha + n + j - 2), l) / lf;
  r.rhs = factorial(n + l - 1) * pochhammer(Rational(alpha + n - 1), l) / (lf * lf * factorial(n - 1));
  return r;
}

ExactEquality root_polynomial_pfaff_check(unsigned n, const Rational& alpha, const Rational& t) {
  if (t == 1) throw Error(ErrorCode::InvalidArgument, "t = 1 is excluded");
  ExactEquality r;
  r.lhs = specfun::hypergeom_terminating(
      specfun::HypergeomParams<Rational>{Rational(1 - alpha - n), Rational(-static_cast<long>(n)), Rational(1)}, t);
  Polynomial<Rational> q(root_polynomial(n, alpha));
  const Rational one_minus = 1 - t;
  r.rhs = sign(n) * pochhammer(alpha, n) / factorial(n) * pow(one_minus, n) * q(Rational(1 / one_minus));
  return r;
}

Rational aux_n2_value(const Rational& alpha, unsigned l) {
  const Rational e1 = elementary_symmetric(2, alpha, 1), e2 = elementary_symmetric(2, alpha, 2);
  const Rational a = alpha;
  return e1 * (l + 2) * (a + l + 1) * (a + l + 4) - e2 * (l + 1) * pochhammer(Rational(a + l + 3), 2) -
         Rational(l + 3) * pochhammer(Rational(a + l + 1), 2);
}

Rational aux_n3_value(const Rational& alpha, unsigned l) {
  const Rational e1 = elementary_symmetric(3, alpha, 1), e2 = elementary_symmetric(3, alpha, 2),
                 e3 = elementary_symmetric(3, alpha, 3);
  return d_bound(3, alpha, l + 3) - e1 * d_bound(3, alpha, l + 2) + e2 * d_bound(3, alpha, l + 1) -
         e3 * d_bound(3, alpha, l);
}

namespace {

int exact_sign(const Polynomial<Rational>& q, const Rational& t) { return sgn(q(t)); }

}  // namespace

ResidueData roots_and_residues(unsigned n, const Rational& alpha, unsigned moment_l_max) {
  require_alpha(alpha);
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "needs n >= 1");
  ResidueData out;
  out.n = n;
  out.alpha = to_double(alpha);
  const Polynomial<Rational> q(root_polynomial(n, alpha));

  // Sign-change isolation on a dyadic grid of [0, 1], refined until n brackets appear.
  std::vector<std::pair<Rational, Rational>> brackets;
  std::vector<Rational> exact_roots;
  for (unsigned long cells = 64UL * n; cells <= (1UL << 22); cells *= 2) {
    brackets.clear();
    exact_roots.clear();
    Rational prev_t(0);
    int prev_s = exact_sign(q, prev_t);
    for (unsigned long i = 1; i <= cells; ++i) {
      Rational t(static_cast<long>(i), static_cast<long>(cells));
      t.canonicalize();
      int s = exact_sign(q, t);
      if (s == 0) {
        // simple zero on the grid: the sign flips across it
        exact_roots.push_back(t);
        prev_s = -prev_s;
        prev_t = t;
      } else if (prev_s != 0 && s != prev_s) {
        brackets.emplace_back(prev_t, t);
      }
      if (s != 0) {
        prev_s = s;
        prev_t = t;
      }
    }
    if (brackets.size() + exact_roots.size() == n) break;
  }
  if (brackets.size() + exact_roots.size() != n)
    throw Error(ErrorCode::RootFailure, "located " + std::to_string(brackets.size() + exact_roots.size()) +
                                            " of " + std::to_string(n) + " zeros");

  std::vector<long double> roots;
  for (const auto& r : exact_roots) roots.push_back(static_cast<long double>(to_double(r)));
  const Rational width(1, 10'000'000'000'000L);
  for (auto [lo, hi] : brackets) {
    int s_lo = exact_sign(q, lo);
    while (hi - lo > width) {
      Rational mid = (lo + hi) / 2;
      int s = exact_sign(q, mid);
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      (s == s_lo ? lo : hi) = mid;
    }
    // Midpoint in long double: both ends are short dyadic rationals.
    roots.push_back((static_cast<long double>(to_double(lo)) + static_cast<long double>(to_double(hi))) / 2.0L);
  }
  std::sort(roots.begin(), roots.end());

  std::vector<long double> betas(n), residues(n);
  for (unsigned j = 0; j < n; ++j) betas[j] = roots[j] / (1.0L - roots[j]);
  for (unsigned j = 0; j < n; ++j) {
    long double a = std::pow(betas[j], static_cast<long double>(n - 1));
    for (unsigned i = 0; i < n; ++i)
      if (i != j) a /= (betas[j] - betas[i]);
    residues[j] = a;
  }
  for (unsigned j = 0; j < n; ++j) {
    out.roots.push_back(static_cast<double>(roots[j]));
    out.betas.push_back(static_cast<double>(betas[j]));
    out.residues.push_back(static_cast<double>(residues[j]));
  }

  long double sum_a = 0.0L;
  for (auto a : residues) sum_a += a;
  out.residue_sum_error = static_cast<double>(std::fabs(sum_a - 1.0L));

  const specfun::HypergeomParams<Rational> p_params{Rational(1 - alpha - n), Rational(-static_cast<long>(n)), Rational(1)};
  const Polynomial<Rational> p_poly = specfun::hypergeom_polynomial(p_params);
  for (const char* ts : {"1/10", "3/10", "1/2", "7/10", "9/10"}) {
    Rational t(ts);
    const long double exact = 1.0L / static_cast<long double>(to_double(p_poly(t)));
    long double via = 0.0L;
    for (unsigned j = 0; j < n; ++j) via += residues[j] / (1.0L + betas[j] * static_cast<long double>(to_double(t)));
    out.partial_fraction_error = std::max(out.partial_fraction_error, static_cast<double>(std::fabs(via - exact) / exact));
  }

  // Elementary symmetric functions of the numeric roots.
  std::vector<long double> e_num(n + 1, 0.0L);
  e_num[0] = 1.0L;
  for (unsigned j = 0; j < n; ++j)
    for (unsigned k = j + 1; k >= 1; --k) e_num[k] += e_num[k - 1] * roots[j];
  for (unsigned k = 1; k <= n; ++k)
    out.max_vieta_error = std::max(
        out.max_vieta_error,
        static_cast<double>(std::fabs(e_num[k] - static_cast<long double>(to_double(elementary_symmetric(n, alpha, k))))));

  const Rational p1 = pochhammer(Rational(alpha + n), n) / factorial(n);
  out.p_at_one = to_double(p1);
  out.p_at_one_reciprocal_form = to_double(1 / p1);
  if (p_poly(Rational(1)) != p1) throw Error(ErrorCode::Violation, "P(1) differs from (alpha+n)_n/n!");

  std::vector<Rational> e(n + 1);
  for (unsigned k = 0; k <= n; ++k) e[k] = elementary_symmetric(n, alpha, k);
  auto h = complete_homogeneous_sequence(e, moment_l_max);
  for (unsigned l = 0; l <= moment_l_max; ++l) {
    long double acc = 0.0L;
    for (unsigned j = 0; j < n; ++j)
      acc += residues[j] * (1.0L - roots[j]) * std::pow(roots[j], static_cast<long double>(l));
    const long double lhs = static_cast<long double>(out.p_at_one) * acc;
    const long double s = static_cast<long double>(to_double(h[l]));
    out.moment_relative_errors.push_back(static_cast<double>(std::fabs(lhs - s) / s));
  }
  return out;
}

KoeficijentiMargin koeficijenti_check(unsigned k, unsigned n, const Rational& alpha, double tol) {
  require_alpha(alpha);
  if (k < n || n == 0) throw Error(ErrorCode::InvalidArgument, "needs k >= n >= 1");
  const specfun::HypergeomParams<Rational> p_params{Rational(1 - alpha - n), Rational(-static_cast<long>(n)), Rational(1)};
  const auto p_exact = specfun::hypergeom_polynomial(p_params);
  std::vector<double> p_coeffs;
  for (const auto& c : p_exact.coeffs()) p_coeffs.push_back(to_double(c));
  const Polynomial<double> p(std::move(p_coeffs));

  KoeficijentiMargin out;
  const double a = to_double(alpha);
  out.lhs = specfun::integrate_01_weighted([&p](double t) { return 1.0 / p(t); }, double(k - n), a + 2.0 * n - 2.0, tol);
  const Rational falling = factorial(k) / factorial(k - n);
  out.rhs = factorial(k) / pochhammer(alpha, k) * factorial(n) * pochhammer(alpha, n) /
            (Rational(alpha + 2 * n - 1) * falling * falling);
  out.margin = to_double(out.rhs) - out.lhs.value;
  return out;
}

}  // namespace bergsharp::symmetric
