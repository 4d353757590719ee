#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bergsharp/bergman.hpp"
#include "bergsharp/cli/report.hpp"
#include "bergsharp/rational.hpp"

namespace bergsharp::cli {

/// Bad command line or config input; maps to exit code 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitUsage = 64;

struct RunConfig {
  std::string command;
  std::optional<std::vector<Rational>> alpha;
  std::optional<std::vector<unsigned>> n;
  std::optional<unsigned> l_max;
  std::optional<unsigned> k_max;
  unsigned c_k_max = 10000;
  std::vector<std::string> functions = {"one", "monomial:1", "kernel:0.3"};
  std::string variant = "both";  // mu | nu | both
  std::vector<double> s_grid;    // empty: default geometric grid
  double tol = 1e-10;
  std::string out;
  std::string format = "json";
  unsigned jobs = 0;  // 0: hardware concurrency
  bool timings = true;

  /// Everything that influences results, with per-command defaults filled in.
  Json resolved(const std::string& command) const;
};

/// Comma list of rationals ("2,5/2,3.5"). Throws UsageError.
std::vector<Rational> parse_alpha_list(const std::string& text);
/// Comma list with ranges ("1,2,4..6"). Throws UsageError.
std::vector<unsigned> parse_index_list(const std::string& text);
/// Comma list of positive increasing values, or "geom:lo:hi:count". Throws UsageError.
std::vector<double> parse_s_grid(const std::string& text);
/// "0.3", "0.3+0.1i", "-0.2i". Throws UsageError.
bergman::Complex parse_complex(const std::string& text);

/// Named test functions: "one", "monomial:k", "kernel:w". Throws UsageError.
bergman::AnalyticPolynomial make_function(const std::string& name, double alpha);

/// Parses argv (CLI11, with --config key=value files). Returns the exit code
/// to use immediately for --help/--version, otherwise nullopt.
std::optional<int> parse_command_line(int argc, char** argv, RunConfig& cfg);

}  // namespace bergsharp::cli
