#pragma once

// Exact verification of the coefficient inequality chain for the mu-measure
// derivative bound: c_{k,n}, the Vieta data e_k of the root polynomial,
// complete homogeneous sums S_l = h_l, the bound D_l, partial-fraction
// residues, and the auxiliary hypergeometric identities.

#include <optional>
#include <string>
#include <vector>

#include "bergsharp/rational.hpp"
#include "bergsharp/specfun.hpp"

namespace bergsharp::symmetric {

enum class ScanVerdict { ProvenRangePass, Exploratory, Violation };
std::string to_string(ScanVerdict v);

/// Largest n for which the inequality S_l <= D_l is a theorem.
inline constexpr unsigned kProvenMaxN = 3;

// ---------------------------------------------------------------- c_{k,n}

/// c_{k,n} = (k-n+1)_n / (k+alpha)_n. Throws Violation if c > 1 or if the
/// ratio c_{k+1,n}/c_{k,n} is below 1.
Rational c_coefficient(unsigned k, unsigned n, const Rational& alpha);

/// (k+1)(k+alpha) / ((k-n+1)(k+n+alpha)).
Rational c_ratio(unsigned k, unsigned n, const Rational& alpha);

struct CScan {
  unsigned n = 0;
  Rational alpha;
  unsigned k_max = 0;
  bool all_le_one = true;
  bool ratios_ge_one = true;
  bool gap_strictly_decreasing = true;  ///< 1 - c_{k,n} strictly decreasing (n >= 1)
  Rational last_value;                  ///< c_{k_max, n}
  std::optional<unsigned> first_failure;
  bool passed() const { return all_le_one && ratios_ge_one && gap_strictly_decreasing; }
};

/// Walks k = n..k_max with the exact ratio recurrence and checks every step.
CScan c_coefficient_scan(unsigned n, const Rational& alpha, unsigned k_max);

// ---------------------------------------------------- symmetric functions

/// e_k = C(n,k) (alpha+n-k)_k / (alpha+2n-k)_k.
Rational elementary_symmetric(unsigned n, const Rational& alpha, unsigned k);

/// Coefficients q_j = (alpha+n)_j/(alpha)_j (-1)^j C(n,j) of the polynomial whose zeros are t_1..t_n.
std::vector<Rational> root_polynomial(unsigned n, const Rational& alpha);

/// e_k read off root_polynomial by Vieta's formulas (independent of the closed form).
Rational elementary_symmetric_from_coefficients(unsigned n, const Rational& alpha, unsigned k);

/// h_0..h_L from e_1..e_n: h_l = sum_{i=1}^{min(n,l)} (-1)^(i-1) e_i h_(l-i).
std::vector<Rational> complete_homogeneous_sequence(const std::vector<Rational>& e, unsigned l_max);
Rational complete_homogeneous(unsigned n, const Rational& alpha, unsigned l);

/// D_l = (n+l-1)! (alpha+n-1)_l / (l! (n-1)! (alpha+2n-1)_l).
Rational d_bound(unsigned n, const Rational& alpha, unsigned l);
std::vector<Rational> d_bound_sequence(unsigned n, const Rational& alpha, unsigned l_max);

struct SymmetricFunctionTable {
  unsigned n = 0;
  Rational alpha;
  std::vector<Rational> e;        ///< e_0..e_n
  std::vector<Rational> h;        ///< S_0..S_L
  std::vector<Rational> d;        ///< D_0..D_L
  std::vector<Rational> margins;  ///< D_l - S_l
};

struct InequalityScan {
  SymmetricFunctionTable table;
  ScanVerdict verdict = ScanVerdict::ProvenRangePass;
  std::vector<unsigned> zero_margin_ls;   ///< l with D_l == S_l
  std::vector<unsigned> negative_ls;      ///< l with D_l < S_l
  std::optional<unsigned> min_l;          ///< argmin of the margin over l >= 2
  Rational min_margin;                    ///< min over l >= 2 (0 if l_max < 2)
  std::vector<unsigned> sign_changes;     ///< l where sign(margin_l) != sign(margin_{l-1}), l >= 3
  /// Equality exactly at l in {0, 1} and strictly positive margins elsewhere.
  bool equality_only_at_start() const;
};

InequalityScan main_inequality_scan(unsigned n, const Rational& alpha, unsigned l_max);

/// Power sums p_1..p_L computed from e by Newton's identities and from h; true iff all agree exactly.
bool newton_consistency(unsigned n, const Rational& alpha, unsigned l_max);

// ------------------------------------------------------ auxiliary checks

struct ExactEquality {
  Rational lhs, rhs;
  bool equal() const { return lhs == rhs; }
};

/// sum_{s=0}^m (-m)_s (beta+l+m)_s / ((beta)_s s!) against (-1)^m (l+1)_m / (beta)_m.
ExactEquality lemma31_check(unsigned m, const Rational& beta, const Rational& l);

/// B_j = (-1)^(n-j) (j+alpha-1)_{n-1} / ((j-1)! (n-j)!), j = 1..n (index 0 unused).
std::vector<Rational> b_weights(unsigned n, const Rational& alpha);

/// sum_j B_j / (k-j+1) against (k+alpha)_{n-1} / (k-n+1)_n, for k >= n.
ExactEquality b_partial_fraction_check(unsigned n, const Rational& alpha, unsigned k);

/// sum_j B_j (alpha+n+j-2)_l / l! against (n+l-1)! (alpha+n-1)_l / ((l!)^2 (n-1)!).
ExactEquality b_binomial_sum_check(unsigned n, const Rational& alpha, unsigned l);

/// P(t) = (-1)^n (alpha)_n/n! (1-t)^n Q(1/(1-t)) with Q the root polynomial, exact at t != 1.
ExactEquality root_polynomial_pfaff_check(unsigned n, const Rational& alpha, const Rational& t);

/// The n = 2 auxiliary inequality, value of
///   (t1+t2)(l+2)(a+l+1)(a+l+4) - t1 t2 (l+1)(a+l+3)_2 - (l+3)(a+l+1)_2   (expected <= 0).
Rational aux_n2_value(const Rational& alpha, unsigned l);

/// The n = 3 auxiliary inequality D_{l+3} - e1 D_{l+2} + e2 D_{l+1} - e3 D_l (expected >= 0).
Rational aux_n3_value(const Rational& alpha, unsigned l);

// ------------------------------------------------- numeric cross-checks

struct ResidueData {
  unsigned n = 0;
  double alpha = 0.0;
  std::vector<double> roots;      ///< t_j, increasing, in (0, 1)
  std::vector<double> betas;      ///< t_j / (1 - t_j)
  std::vector<double> residues;   ///< A_j = beta_j^(n-1) prod_{i != j} (beta_j - beta_i)^-1

  double residue_sum_error = 0.0;      ///< |sum A_j - 1|
  double partial_fraction_error = 0.0; ///< max relative error of 1/P(t) at sample points
  double max_vieta_error = 0.0;        ///< max |e_k(roots) - e_k exact|
  double p_at_one = 0.0;               ///< direct summation value of P(1)
  double p_at_one_reciprocal_form = 0.0;  ///< n! Gamma(n+alpha)/Gamma(2n+alpha)
  std::vector<double> moment_relative_errors;  ///< |P(1) sum A_j (1-t_j) t_j^l - S_l| / S_l, l = 0..l_max
};

/// Isolates the n simple zeros of the root polynomial in (0,1) by exact sign
/// evaluation and bisection to 1e-13 bracket width; throws RootFailure if fewer
/// than n sign changes are found.
ResidueData roots_and_residues(unsigned n, const Rational& alpha, unsigned moment_l_max = 50);

struct KoeficijentiMargin {
  specfun::Estimate lhs;   ///< \int_0^1 t^(k-n) (1-t)^(alpha+2n-2) / P(t) dt
  Rational rhs;            ///< m_k n! (alpha)_n / ((alpha+2n-1) (k!/(k-n)!)^2)
  double margin = 0.0;     ///< rhs - lhs
  bool holds() const { return margin >= -lhs.error; }
};

KoeficijentiMargin koeficijenti_check(unsigned k, unsigned n, const Rational& alpha,
                                      double tol = specfun::kDefaultQuadratureTol);

}  // namespace bergsharp::symmetric
