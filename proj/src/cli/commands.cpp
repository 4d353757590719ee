#include "bergsharp/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <thread>

#include "bergsharp/error.hpp"
#include "bergsharp/symmetric.hpp"

namespace bergsharp::cli {

namespace {

namespace sym = bergsharp::symmetric;
namespace conc = bergsharp::concentration;

constexpr double kEps = 2.220446049250313e-16;

Verdict verdict_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Violation:
    case ErrorCode::RootFailure:
    case ErrorCode::FormMismatch:
      return Verdict::Violation;
    case ErrorCode::NonConvergent:
    case ErrorCode::TruncationFail:
    case ErrorCode::Unbounded:
      return Verdict::NonConvergent;
    default:
      throw;
  }
}

Json alpha_json(const Rational& a) { return exact(a); }

Verdict pass_or(bool ok, Verdict otherwise) { return ok ? Verdict::Pass : otherwise; }

Json exact_list(const std::vector<unsigned>& v) { return Json(v); }

std::vector<Rational> alphas_of(const Json& resolved) {
  std::vector<Rational> out;
  for (const auto& a : resolved["alpha"]) out.push_back(parse_rational(a.get<std::string>()));
  return out;
}

std::vector<unsigned> ns_of(const Json& resolved) { return resolved["n"].get<std::vector<unsigned>>(); }

using TaskList = std::vector<std::pair<std::string, Task>>;

Report assemble(const std::string& command, Json config, const TaskList& tasks, unsigned jobs) {
  Report report;
  report.command = command;
  report.config = std::move(config);
  for (auto& recs : run_tasks(tasks, jobs))
    for (auto& r : recs) report.records.push_back(std::move(r));
  return report;
}

// ------------------------------------------------------------ verify-exact

std::vector<Record> scan_records(unsigned n, const Rational& alpha, unsigned l_max) {
  const auto scan = sym::main_inequality_scan(n, alpha, l_max);
  Record r{"symmetric_sum_bound", {{"n", n}, {"alpha", alpha_json(alpha)}, {"l_max", l_max}}};
  r.values["min_margin_l_ge_2"] = exact(scan.min_margin);
  r.values["argmin_l"] = scan.min_l ? Json(*scan.min_l) : Json(nullptr);
  r.values["zero_margin_l"] = exact_list(scan.zero_margin_ls);
  r.values["negative_l"] = exact_list(scan.negative_ls);
  r.values["sign_changes"] = exact_list(scan.sign_changes);
  r.values["margin_at_l_max"] = exact(scan.table.margins.back());
  r.values["scan"] = sym::to_string(scan.verdict);
  if (n <= sym::kProvenMaxN) {
    r.verdict = pass_or(scan.equality_only_at_start() && scan.negative_ls.empty(), Verdict::Violation);
  } else {
    r.verdict = pass_or(scan.negative_ls.empty(), Verdict::Finding);
    r.note = "open case; exploratory";
  }
  return {r};
}

std::vector<Record> c_scan_records(unsigned n, const Rational& alpha, unsigned k_max) {
  const auto scan = sym::c_coefficient_scan(n, alpha, k_max);
  Record r{"c_coefficient", {{"n", n}, {"alpha", alpha_json(alpha)}, {"k_max", k_max}}};
  r.values["all_le_one"] = scan.all_le_one;
  r.values["ratios_ge_one"] = scan.ratios_ge_one;
  r.values["gap_strictly_decreasing"] = scan.gap_strictly_decreasing;
  r.values["c_at_k_max"] = exact(scan.last_value);
  r.values["first_failure"] = scan.first_failure ? Json(*scan.first_failure) : Json(nullptr);
  r.verdict = pass_or(scan.passed(), Verdict::Violation);
  return {r};
}

std::vector<Record> structure_records(unsigned n, const Rational& alpha, unsigned l_max) {
  std::vector<Record> out;
  const Json p = {{"n", n}, {"alpha", alpha_json(alpha)}};

  Record vieta{"vieta_closed_form", p};
  bool same = true;
  Json e = Json::array();
  for (unsigned k = 0; k <= n; ++k) {
    const Rational closed = sym::elementary_symmetric(n, alpha, k);
    same = same && closed == sym::elementary_symmetric_from_coefficients(n, alpha, k);
    e.push_back(exact(closed));
  }
  vieta.values["e"] = e;
  vieta.verdict = pass_or(same, Verdict::Violation);
  out.push_back(vieta);

  const unsigned newton_l = std::min(l_max, 200u);
  Record newton{"newton_identities", p};
  newton.params["l_max"] = newton_l;
  newton.values["consistent"] = sym::newton_consistency(n, alpha, newton_l);
  newton.verdict = pass_or(newton.values["consistent"].get<bool>(), Verdict::Violation);
  out.push_back(newton);

  Record pfaff{"pfaff_root_polynomial", p};
  bool pf = true;
  for (int i = 1; i <= 9; i += 2) pf = pf && sym::root_polynomial_pfaff_check(n, alpha, make_rational(i, 10)).equal();
  pfaff.params["t"] = {"1/10", "3/10", "1/2", "7/10", "9/10"};
  pfaff.values["equal"] = pf;
  pfaff.verdict = pass_or(pf, Verdict::Violation);
  out.push_back(pfaff);

  if (n == 2 || n == 3) {
    Record aux{n == 2 ? "aux_inequality_n2" : "aux_inequality_n3", p};
    aux.params["l_max"] = l_max;
    std::vector<unsigned> bad;
    Rational extreme;
    for (unsigned l = 0; l <= l_max; ++l) {
      const Rational v = n == 2 ? sym::aux_n2_value(alpha, l) : sym::aux_n3_value(alpha, l);
      if (l == 0 || (n == 2 ? v > extreme : v < extreme)) extreme = v;
      if (n == 2 ? v > 0 : v < 0) bad.push_back(l);
    }
    aux.values[n == 2 ? "max_value" : "min_value"] = exact(extreme);
    aux.values["failing_l"] = exact_list(bad);
    aux.verdict = pass_or(bad.empty(), Verdict::Finding);
    if (!bad.empty()) aux.note = "auxiliary step fails for some l; the main bound is checked separately";
    out.push_back(aux);
  }
  return out;
}

std::vector<Record> b_identity_records(unsigned n, const Rational& alpha, unsigned k_max) {
  Record r{"b_weight_identities", {{"n", n}, {"alpha", alpha_json(alpha)}, {"k_max", k_max}, {"l_max", 50}}};
  std::optional<unsigned> bad_k, bad_l;
  for (unsigned k = n; k <= k_max && !bad_k; ++k)
    if (!sym::b_partial_fraction_check(n, alpha, k).equal()) bad_k = k;
  for (unsigned l = 0; l <= 50 && !bad_l; ++l)
    if (!sym::b_binomial_sum_check(n, alpha, l).equal()) bad_l = l;
  Json w = Json::array();
  const auto b = sym::b_weights(n, alpha);
  for (unsigned j = 1; j <= n; ++j) w.push_back(exact(b[j]));
  r.values["B"] = w;
  r.values["partial_fraction_failure_k"] = bad_k ? Json(*bad_k) : Json(nullptr);
  r.values["binomial_sum_failure_l"] = bad_l ? Json(*bad_l) : Json(nullptr);
  r.verdict = pass_or(!bad_k && !bad_l, Verdict::Violation);
  return {r};
}

std::vector<Record> residue_records(unsigned n, const Rational& alpha) {
  const auto d = sym::roots_and_residues(n, alpha, 50);
  Record r{"roots_and_residues", {{"n", n}, {"alpha", alpha_json(alpha)}, {"l_max", 50}}};
  Json roots = Json::array();
  for (double t : d.roots) roots.push_back(with_error(t, 1e-13));
  r.values["roots"] = roots;
  const double max_moment = d.moment_relative_errors.empty()
                                ? 0.0
                                : *std::max_element(d.moment_relative_errors.begin(), d.moment_relative_errors.end());
  r.values["max_vieta_error"] = with_error(d.max_vieta_error, 1e-13 * n);
  r.values["residue_sum_error"] = with_error(d.residue_sum_error, kEps * n);
  r.values["partial_fraction_error"] = with_error(d.partial_fraction_error, kEps * n);
  r.values["max_moment_relative_error"] = with_error(max_moment, kEps * n);
  r.values["P_at_one"] = with_error(d.p_at_one, kEps * d.p_at_one);
  r.values["P_at_one_reciprocal_form"] = with_error(d.p_at_one_reciprocal_form, kEps * d.p_at_one_reciprocal_form);
  const bool ok = d.max_vieta_error <= 1e-10 && (n > 3 || max_moment <= 1e-9);
  r.verdict = pass_or(ok, n <= 5 ? Verdict::Violation : Verdict::Finding);
  return {r};
}

std::vector<Record> koeficijenti_records(unsigned n, const Rational& alpha, unsigned k_max) {
  Record r{"coefficient_integral_bound", {{"n", n}, {"alpha", alpha_json(alpha)}, {"k_max", k_max}}};
  double worst = 0.0, worst_err = 0.0;
  std::optional<unsigned> worst_k;
  std::vector<unsigned> failing;
  for (unsigned k = n; k <= k_max; ++k) {
    const auto m = sym::koeficijenti_check(k, n, alpha);
    if (!worst_k || m.margin < worst) {
      worst = m.margin;
      worst_err = m.lhs.error;
      worst_k = k;
    }
    if (!m.holds()) failing.push_back(k);
  }
  r.values["min_margin"] = with_error(worst, worst_err);
  r.values["argmin_k"] = worst_k ? Json(*worst_k) : Json(nullptr);
  r.values["failing_k"] = exact_list(failing);
  r.verdict = pass_or(failing.empty(), n <= sym::kProvenMaxN ? Verdict::Violation : Verdict::Finding);
  return {r};
}

std::vector<Record> lemma31_records() {
  const std::vector<Rational> betas = {Rational(2), Rational(7, 3), Rational(11, 4)};
  const std::vector<Rational> ls = {Rational(-3, 2), Rational(0), Rational(1), Rational(11, 2), Rational(20)};
  Record r{"hypergeometric_sum_identity", {{"m_max", 40}}};
  Json b = Json::array(), l = Json::array();
  for (const auto& x : betas) b.push_back(exact(x));
  for (const auto& x : ls) l.push_back(exact(x));
  r.params["beta"] = b;
  r.params["l"] = l;
  unsigned checked = 0;
  Json failures = Json::array();
  for (const auto& beta : betas)
    for (const auto& lv : ls)
      for (unsigned m = 0; m <= 40; ++m, ++checked)
        if (!sym::lemma31_check(m, beta, lv).equal()) failures.push_back({{"m", m}, {"beta", exact(beta)}, {"l", exact(lv)}});
  r.values["instances"] = checked;
  r.values["failures"] = failures;
  r.verdict = pass_or(failures.empty(), Verdict::Violation);
  return {r};
}

// ------------------------------------------------------------------ profile

std::string profile_id(const std::string& fn, unsigned n, const Rational& alpha, conc::MeasureVariant v) {
  return fn + "|n=" + std::to_string(n) + "|alpha=" + exact(alpha) + "|" + conc::to_string(v);
}

std::vector<Record> profile_records(const std::string& fn, unsigned n, const Rational& alpha, conc::MeasureVariant v,
                                    const std::vector<double>& grid, double tol, std::vector<ProfileRows>& sink,
                                    std::mutex& mu) {
  const double a = to_double(alpha);
  const auto f = make_function(fn, a);
  const conc::SpaceParams params{a, n};
  if (conc::UFunction(f, params, v).vanishes()) return {};
  conc::EngineOptions opt;
  opt.tol = tol;
  const std::string id = profile_id(fn, n, alpha, v);
  auto prof = conc::profile_I(f, params, grid, v, opt, id);
  const auto bound = conc::bound_report(prof);
  const auto ode = conc::ode_convexity_check(prof, opt);

  const Json p = {{"function", fn}, {"n", n}, {"alpha", exact(alpha)}, {"variant", conc::to_string(v)}};
  double max_err = 0.0;
  for (const auto& s : prof.samples) max_err = std::max(max_err, s.error);

  Record b{"concentration_bound", p};
  b.values["X"] = with_error(prof.X, 0.0);
  b.values["min_margin"] = with_error(bound.min_margin, max_err);
  b.values["max_abs_margin"] = with_error(bound.max_abs_margin, max_err);
  b.values["sup_u"] = with_error(prof.sup_u, 1e-12 * prof.sup_u);
  b.values["ceiling"] = with_error(prof.ceiling, kEps * prof.ceiling);
  b.values["rays"] = prof.rays;
  b.values["strict"] = bound.strict;
  b.values["monotone"] = bound.monotone;
  b.values["normalized"] = bound.normalized;
  const bool sound = bound.pass && bound.ceiling_ok && bound.monotone && bound.normalized;
  if (!sound) {
    b.verdict = n <= symmetric::kProvenMaxN || v == conc::MeasureVariant::Nu ? Verdict::Violation : Verdict::Finding;
  } else if (n >= 1 && !bound.strict) {
    b.verdict = Verdict::Finding;
    b.note = "margin not separated from zero by the error bar";
  }

  Record o{"ode_convexity", p};
  o.values["min_ode_residual"] = with_error(ode.min_ode_residual, ode.tol);
  o.values["min_second_difference"] = with_error(ode.min_second_difference, ode.tol);
  o.verdict = pass_or(ode.passed(), Verdict::Violation);

  {
    std::lock_guard lock(mu);
    sink.push_back({id, std::move(prof)});
  }
  return {b, o};
}

// ------------------------------------------------------------- fock etc.

std::vector<Record> fock_records(unsigned n, unsigned k) {
  const auto m = conc::fock_limit_check(k, n);
  Record r{"fock_limit_bound", {{"n", n}, {"k", k}}};
  r.values["integral"] = with_error(m.integral.value, m.integral.error);
  r.values["bound"] = exact(m.bound);
  r.values["margin"] = with_error(m.margin, m.error_bar);
  r.verdict = pass_or(m.holds(), Verdict::Violation);
  return {r};
}

std::vector<Record> fock_convergence_records(unsigned n, unsigned k) {
  const std::vector<double> R = {1e2, 1e3, 1e4};
  const auto c = conc::bergman_to_fock_convergence(k, n, R);
  Record r{"bergman_to_fock_convergence", {{"n", n}, {"k", k}, {"R", R}}};
  Json scaled = Json::array(), gaps = Json::array();
  for (std::size_t i = 0; i < R.size(); ++i) {
    scaled.push_back(with_error(c.scaled[i].value, c.scaled[i].error));
    gaps.push_back(with_error(c.gaps[i], c.scaled[i].error + c.limit.error));
  }
  r.values["limit"] = with_error(c.limit.value, c.limit.error);
  r.values["scaled"] = scaled;
  r.values["gaps"] = gaps;
  r.verdict = pass_or(c.gaps_strictly_shrinking(), Verdict::NonConvergent);
  return {r};
}

std::vector<Record> lemma22_records(unsigned n, const Rational& alpha) {
  std::vector<double> grid(200);
  for (unsigned i = 0; i < 200; ++i) grid[i] = 0.995 * i / 199.0;
  const auto c = conc::laplacian_log_g_check(n, alpha, grid);
  Record r{"laplacian_log_weight", {{"n", n}, {"alpha", exact(alpha)}, {"grid", "200 points on [0, 0.995]"}}};
  double scale = 0.0;
  for (double h : c.H) scale = std::max(scale, std::abs(h));
  r.values["min_H"] = with_error(c.min_H, 64 * kEps * scale);
  r.values["argmin_t"] = with_error(c.argmin_t, 0.0);
  r.values["H0_exact_zero"] = c.h0_exact_zero;
  r.verdict = pass_or(c.min_H >= 0.0 && c.h0_exact_zero, Verdict::Violation);
  return {r};
}

std::vector<Record> isoperimetry_records() {
  std::vector<Record> out;
  for (int i = 1; i <= 19; ++i) {
    const double r = 0.05 * i;
    const double s = bergman::hyperbolic_disc_area(r), L = bergman::hyperbolic_circle_length(r);
    const double residual = std::abs(L * L - 4.0 * std::numbers::pi * s - 4.0 * s * s);
    Record rec{"isoperimetric_circle", {{"r", r}}};
    rec.values["area"] = with_error(s, 4 * kEps * s);
    rec.values["length"] = with_error(L, 4 * kEps * L);
    rec.values["residual"] = with_error(residual, 16 * kEps * L * L);
    rec.verdict = pass_or(residual <= 1e-12, Verdict::Violation);
    out.push_back(rec);
  }
  return out;
}

unsigned worker_count(unsigned jobs) {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

std::vector<std::vector<Record>> run_tasks(const std::vector<std::pair<std::string, Task>>& tasks, unsigned jobs) {
  std::vector<std::vector<Record>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        results[i] = tasks[i].second();
      } catch (const Error& e) {
        try {
          results[i] = {Record{tasks[i].first, Json::object(), {{"error", e.what()}}, verdict_for(e.code()), e.what()}};
        } catch (...) {
          errors[i] = std::current_exception();
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<std::size_t>(worker_count(jobs), std::max<std::size_t>(tasks.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

Report cmd_verify_exact(const RunConfig& cfg) {
  const Json conf = cfg.resolved("verify-exact");
  const auto alphas = alphas_of(conf);
  const auto ns = ns_of(conf);
  const unsigned l_max = conf["l_max"], k_max = conf["k_max"], c_k_max = conf["c_k_max"];
  for (unsigned n : ns)
    if (n == 0) throw UsageError("verify-exact needs n >= 1");

  TaskList tasks;
  tasks.emplace_back("hypergeometric_sum_identity", lemma31_records);
  for (const auto& a : alphas)
    for (unsigned n : ns) {
      tasks.emplace_back("symmetric_sum_bound", [=] { return scan_records(n, a, l_max); });
      tasks.emplace_back("c_coefficient", [=] { return c_scan_records(n, a, c_k_max); });
      tasks.emplace_back("structure", [=] { return structure_records(n, a, l_max); });
      tasks.emplace_back("b_weight_identities", [=] { return b_identity_records(n, a, std::min(k_max, 50u)); });
      tasks.emplace_back("roots_and_residues", [=] { return residue_records(n, a); });
      tasks.emplace_back("coefficient_integral_bound", [=] { return koeficijenti_records(n, a, k_max); });
    }
  return assemble("verify-exact", conf, tasks, cfg.jobs);
}

Report cmd_profile(const RunConfig& cfg) {
  const Json conf = cfg.resolved("profile");
  const auto alphas = alphas_of(conf);
  const auto ns = ns_of(conf);
  const auto grid = conf["s_grid"].get<std::vector<double>>();
  std::vector<conc::MeasureVariant> variants;
  if (cfg.variant != "nu") variants.push_back(conc::MeasureVariant::Mu);
  if (cfg.variant != "mu") variants.push_back(conc::MeasureVariant::Nu);
  for (const auto& fn : cfg.functions) make_function(fn, 2.0);  // validate names before spawning work

  std::vector<ProfileRows> rows;
  std::mutex mu;
  TaskList tasks;
  for (const auto& fn : cfg.functions)
    for (const auto& a : alphas)
      for (unsigned n : ns)
        for (auto v : variants)
          tasks.emplace_back("concentration_bound", [&, fn, a, n, v] {
            return profile_records(fn, n, a, v, grid, cfg.tol, rows, mu);
          });
  Report report = assemble("profile", conf, tasks, cfg.jobs);
  std::sort(rows.begin(), rows.end(), [](const ProfileRows& x, const ProfileRows& y) { return x.id < y.id; });
  report.profiles = std::move(rows);
  return report;
}

Report cmd_fock(const RunConfig& cfg) {
  const Json conf = cfg.resolved("fock");
  const auto ns = ns_of(conf);
  const unsigned k_max = conf["k_max"];
  TaskList tasks;
  for (unsigned n : ns)
    for (unsigned k = n; k <= k_max; ++k) tasks.emplace_back("fock_limit_bound", [=] { return fock_records(n, k); });
  for (auto [n, k] : {std::pair{0u, 2u}, {1u, 2u}, {2u, 4u}})
    tasks.emplace_back("bergman_to_fock_convergence", [=] { return fock_convergence_records(n, k); });
  return assemble("fock", conf, tasks, cfg.jobs);
}

Report cmd_lemma22(const RunConfig& cfg) {
  const Json conf = cfg.resolved("lemma22");
  TaskList tasks;
  for (const auto& a : alphas_of(conf))
    for (unsigned n : ns_of(conf)) tasks.emplace_back("laplacian_log_weight", [=] { return lemma22_records(n, a); });
  return assemble("lemma22", conf, tasks, cfg.jobs);
}

Report cmd_isoperimetry(const RunConfig& cfg) {
  Json conf = {{"r", "0.05, 0.10, ..., 0.95"}, {"threshold", 1e-12}};
  return assemble("isoperimetry", conf, {{"isoperimetric_circle", isoperimetry_records}}, cfg.jobs);
}

Report cmd_all(const RunConfig& cfg) {
  Report all;
  all.command = "all";
  for (auto* cmd : {cmd_verify_exact, cmd_profile, cmd_fock, cmd_lemma22, cmd_isoperimetry}) {
    Report r = cmd(cfg);
    all.config[r.command] = r.config;
    for (auto& rec : r.records) all.records.push_back(std::move(rec));
    for (auto& p : r.profiles) all.profiles.push_back(std::move(p));
  }
  return all;
}

Report run_command(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  if (cfg.command == "verify-exact") r = cmd_verify_exact(cfg);
  else if (cfg.command == "profile") r = cmd_profile(cfg);
  else if (cfg.command == "fock") r = cmd_fock(cfg);
  else if (cfg.command == "lemma22") r = cmd_lemma22(cfg);
  else if (cfg.command == "isoperimetry") r = cmd_isoperimetry(cfg);
  else if (cfg.command == "all") r = cmd_all(cfg);
  else throw UsageError("unknown command '" + cfg.command + "'");
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int execute(const RunConfig& cfg, std::ostream& out) {
  const Report report = run_command(cfg);
  auto emit = [&](std::ostream& os) {
    if (cfg.format == "csv") report.write_csv(os);
    else report.write_json(os, cfg.timings);
  };
  if (cfg.out.empty()) {
    emit(out);
  } else {
    std::ofstream file(cfg.out);
    if (!file) throw UsageError("cannot open '" + cfg.out + "' for writing");
    emit(file);
    if (cfg.format == "csv") {
      std::ofstream manifest(cfg.out + ".report.json");
      report.write_json(manifest, cfg.timings);
    }
  }
  return report.exit_code();
}

}  // namespace bergsharp::cli
