#include "bergsharp/cli/config.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "bergsharp/error.hpp"

namespace bergsharp::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("empty entry in list '" + text + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (pos != s.size() || !std::isfinite(v)) throw UsageError("not a number: '" + s + "'");
  return v;
}

unsigned parse_unsigned(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("not a nonnegative integer: '" + s + "'");
  return static_cast<unsigned>(std::stoul(s));
}

std::vector<unsigned> default_n(const std::string& command) {
  if (command == "fock") return {0, 1, 2, 3, 4};
  if (command == "lemma22") return {0, 1, 2, 3, 4, 5, 6};
  if (command == "profile") return {0, 1, 2};
  return {1, 2, 3};
}

std::vector<Rational> default_alpha(const std::string& command) {
  if (command == "lemma22") return {Rational(2), Rational(5, 2), Rational(7, 2)};
  if (command == "profile") return {Rational(2), Rational(5, 2)};
  return {Rational(2), Rational(5, 2), Rational(3), Rational(7, 2), Rational(10)};
}

unsigned default_l_max(const std::vector<unsigned>& n) {
  for (unsigned v : n)
    if (v >= 4) return 200;
  return 500;
}

}  // namespace

std::vector<Rational> parse_alpha_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) {
    Rational a;
    try {
      a = parse_rational(item);
    } catch (const Error&) {
      throw UsageError("malformed alpha '" + item + "'");
    }
    if (a <= 1) throw UsageError("alpha must exceed 1, got '" + item + "'");
    out.push_back(a);
  }
  return out;
}

std::vector<unsigned> parse_index_list(const std::string& text) {
  std::vector<unsigned> out;
  for (const auto& item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_unsigned(item));
      continue;
    }
    const unsigned lo = parse_unsigned(item.substr(0, dots)), hi = parse_unsigned(item.substr(dots + 2));
    if (hi < lo) throw UsageError("empty range '" + item + "'");
    for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_s_grid(const std::string& text) {
  std::vector<double> out;
  if (text.rfind("geom:", 0) == 0) {
    auto parts = split(text.substr(5), ':');
    if (parts.size() != 3) throw UsageError("expected geom:lo:hi:count");
    const double lo = parse_double(parts[0]), hi = parse_double(parts[1]);
    const unsigned count = parse_unsigned(parts[2]);
    if (!(lo > 0.0) || !(hi > lo) || count < 2) throw UsageError("bad geometric grid '" + text + "'");
    for (unsigned i = 0; i < count; ++i) out.push_back(lo * std::pow(hi / lo, double(i) / (count - 1)));
    out.back() = hi;
  } else {
    for (const auto& item : split(text, ',')) out.push_back(parse_double(item));
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!(out[i] > 0.0) || (i > 0 && !(out[i] > out[i - 1])))
      throw UsageError("s grid must be positive and strictly increasing");
  return out;
}

bergman::Complex parse_complex(const std::string& text) {
  static const std::regex re(R"(^\s*([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)?\s*(?:([+-])\s*([0-9.]+(?:[eE][+-]?[0-9]+)?)?i)?\s*$)");
  static const std::regex imag_only(R"(^\s*([+-]?[0-9.]*(?:[eE][+-]?[0-9]+)?)i\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, imag_only)) {
    const std::string c = m[1].str();
    const double im = c.empty() || c == "+" ? 1.0 : c == "-" ? -1.0 : parse_double(c);
    return {0.0, im};
  }
  if (!std::regex_match(text, m, re) || (!m[1].matched && !m[2].matched))
    throw UsageError("malformed complex number '" + text + "'");
  const double re_part = m[1].matched ? parse_double(m[1].str()) : 0.0;
  double im = 0.0;
  if (m[2].matched) {
    im = m[3].matched ? parse_double(m[3].str()) : 1.0;
    if (m[2].str() == "-") im = -im;
  }
  return {re_part, im};
}

bergman::AnalyticPolynomial make_function(const std::string& name, double alpha) {
  if (name == "one") return bergman::AnalyticPolynomial::monomial(0);
  if (name.rfind("monomial:", 0) == 0) return bergman::AnalyticPolynomial::monomial(parse_unsigned(name.substr(9)));
  if (name.rfind("kernel:", 0) == 0) {
    const auto w = parse_complex(name.substr(7));
    if (!(std::norm(w) < 1.0)) throw UsageError("kernel point must lie in the unit disc: '" + name + "'");
    return bergman::kernel_polynomial(bergman::DiskPoint(w), alpha).poly;
  }
  throw UsageError("unknown function '" + name + "' (use one, monomial:k, kernel:w)");
}

Json RunConfig::resolved(const std::string& cmd) const {
  Json j;
  const auto ns = n.value_or(default_n(cmd));
  Json alphas = Json::array();
  for (const auto& a : alpha.value_or(default_alpha(cmd))) alphas.push_back(to_fraction_string(a));
  j["alpha"] = alphas;
  j["n"] = ns;
  if (cmd == "verify-exact") {
    j["l_max"] = l_max.value_or(default_l_max(ns));
    j["k_max"] = k_max.value_or(60);
    j["c_k_max"] = c_k_max;
  } else if (cmd == "fock") {
    j["k_max"] = k_max.value_or(25);
  } else if (cmd == "profile") {
    j["functions"] = functions;
    j["variant"] = variant;
    Json grid = Json::array();
    for (double s : s_grid.empty() ? concentration::default_s_grid() : s_grid) grid.push_back(s);
    j["s_grid"] = grid;
  }
  j["tol"] = tol;
  return j;
}

std::optional<int> parse_command_line(int argc, char** argv, RunConfig& cfg) {
  CLI::App app{"Verification and exploration runner for sharp Bergman-space concentration bounds", "bergsharp"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.set_config("--config", "", "key=value configuration file (flags override it)");
  app.fallthrough();
  app.require_subcommand(1, 1);

  std::string alpha, n, s_grid, functions;
  unsigned l_max = 0, k_max = 0;
  app.add_option("--alpha", alpha, "comma list of rational alpha > 1");
  app.add_option("--n", n, "derivative orders, e.g. 1,2 or 4..8");
  auto* l_opt = app.add_option("--l-max", l_max, "largest l in symmetric-sum scans");
  auto* k_opt = app.add_option("--k-max", k_max, "largest k in coefficient and Fock checks");
  app.add_option("--c-k-max", cfg.c_k_max, "largest k in the c_{k,n} scan");
  app.add_option("--s-grid", s_grid, "comma list or geom:lo:hi:count");
  app.add_option("--functions", functions, "profile inputs: one, monomial:k, kernel:w");
  app.add_option("--variant", cfg.variant, "mu, nu or both")->check(CLI::IsMember({"mu", "nu", "both"}));
  app.add_option("--tol", cfg.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", cfg.jobs, "worker threads (0: all cores)");
  app.add_flag("!--no-timings", cfg.timings, "omit wall-clock timings");

  const std::pair<const char*, const char*> commands[] = {
      {"verify-exact", "exact symmetric-function, coefficient and identity suite"},
      {"profile", "concentration profiles against the sharp bound"},
      {"fock", "Fock-space limit inequality and Bergman-to-Fock convergence"},
      {"lemma22", "sign of the log-weight Laplacian reduction"},
      {"isoperimetry", "hyperbolic circle equality L^2 = 4 pi s + 4 s^2"},
      {"all", "every command above"},
  };
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->callback([&cfg, name] { cfg.command = name; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (!alpha.empty()) cfg.alpha = parse_alpha_list(alpha);
  if (!n.empty()) cfg.n = parse_index_list(n);
  if (l_opt->count() > 0) cfg.l_max = l_max;
  if (k_opt->count() > 0) cfg.k_max = k_max;
  if (!s_grid.empty()) cfg.s_grid = parse_s_grid(s_grid);
  if (!functions.empty()) cfg.functions = split(functions, ',');
  return std::nullopt;
}

}  // namespace bergsharp::cli
