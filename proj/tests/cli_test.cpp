#include <sstream>

#include "bergsharp/cli/commands.hpp"
#include "bergsharp/cli/config.hpp"
#include "bergsharp/error.hpp"
#include "doctest.h"

using namespace bergsharp;
using namespace bergsharp::cli;

namespace {

std::optional<int> parse_raw(std::vector<std::string> args, RunConfig& cfg) {
  args.insert(args.begin(), "bergsharp");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return parse_command_line(static_cast<int>(argv.size()), argv.data(), cfg);
}

RunConfig parse(std::vector<std::string> args) {
  RunConfig cfg;
  REQUIRE_FALSE(parse_raw(std::move(args), cfg).has_value());
  return cfg;
}

int parse_code(std::vector<std::string> args) {
  RunConfig cfg;
  try {
    parse_raw(std::move(args), cfg);
  } catch (const UsageError&) {
    return kExitUsage;
  }
  return 0;
}

std::string run(const RunConfig& cfg, int* code = nullptr) {
  std::ostringstream os;
  const int c = execute(cfg, os);
  if (code) *code = c;
  return os.str();
}

}  // namespace

TEST_CASE("list parsers") {
  const auto a = parse_alpha_list("2, 5/2,3.5,10/4");
  REQUIRE(a.size() == 4);
  CHECK(a[1] == make_rational(5, 2));
  CHECK(a[2] == make_rational(7, 2));
  CHECK(a[3] == make_rational(5, 2));
  CHECK_THROWS_AS(parse_alpha_list("abc"), UsageError);
  CHECK_THROWS_AS(parse_alpha_list("1"), UsageError);
  CHECK_THROWS_AS(parse_alpha_list("2,,3"), UsageError);

  CHECK(parse_index_list("1,4..6") == std::vector<unsigned>{1, 4, 5, 6});
  CHECK_THROWS_AS(parse_index_list("3..1"), UsageError);
  CHECK_THROWS_AS(parse_index_list("-1"), UsageError);

  const auto g = parse_s_grid("geom:0.1:100:4");
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 0.1);
  CHECK(g[1] == doctest::Approx(1.0));
  CHECK(g[3] == 100.0);
  CHECK(parse_s_grid("0.5,2") == std::vector<double>{0.5, 2.0});
  CHECK_THROWS_AS(parse_s_grid("2,1"), UsageError);
  CHECK_THROWS_AS(parse_s_grid("0,1"), UsageError);

  CHECK(parse_complex("0.3") == bergman::Complex(0.3, 0.0));
  CHECK(parse_complex("0.3+0.0i") == bergman::Complex(0.3, 0.0));
  CHECK(parse_complex("-0.1-0.2i") == bergman::Complex(-0.1, -0.2));
  CHECK(parse_complex("-0.2i") == bergman::Complex(0.0, -0.2));
  CHECK_THROWS_AS(parse_complex("x"), UsageError);

  CHECK(make_function("monomial:3", 2.0).degree() == 3);
  CHECK(make_function("one", 2.0).degree() == 0);
  CHECK(make_function("kernel:0.3+0.0i", 2.0).degree() > 10);
  CHECK_THROWS_AS(make_function("kernel:1.2", 2.0), UsageError);
  CHECK_THROWS_AS(make_function("sin", 2.0), UsageError);
}

TEST_CASE("command line") {
  const auto cfg = parse({"verify-exact", "--alpha", "3,7/2", "--n", "1..2", "--l-max", "40", "--jobs", "2"});
  CHECK(cfg.command == "verify-exact");
  REQUIRE(cfg.alpha);
  CHECK(cfg.alpha->size() == 2);
  CHECK(*cfg.n == std::vector<unsigned>{1, 2});
  CHECK(*cfg.l_max == 40);
  CHECK(cfg.jobs == 2);
  CHECK_FALSE(cfg.k_max.has_value());

  const auto flags_first = parse({"--alpha", "2", "fock", "--no-timings"});
  CHECK(flags_first.command == "fock");
  CHECK_FALSE(flags_first.timings);

  CHECK(parse_code({"verify-exact", "--alpha", "abc"}) == kExitUsage);
  CHECK(parse_code({"profile", "--format", "xml"}) == kExitUsage);
  CHECK(parse_code({"profile", "--variant", "sigma"}) == kExitUsage);
  CHECK(parse_code({"nonsense"}) == kExitUsage);
  CHECK(parse_code({}) == kExitUsage);
  CHECK(parse_code({"fock", "--tol", "-1"}) == kExitUsage);
}

TEST_CASE("resolved configuration fills per-command defaults") {
  RunConfig cfg;
  const auto v = cfg.resolved("verify-exact");
  CHECK(v["alpha"] == Json({"2/1", "5/2", "3/1", "7/2", "10/1"}));
  CHECK(v["n"] == Json({1, 2, 3}));
  CHECK(v["l_max"] == 500);
  CHECK(v["k_max"] == 60);
  cfg.n = std::vector<unsigned>{4, 5};
  CHECK(cfg.resolved("verify-exact")["l_max"] == 200);
  CHECK(RunConfig{}.resolved("profile")["s_grid"].size() == 40);
  CHECK(RunConfig{}.resolved("fock")["n"] == Json({0, 1, 2, 3, 4}));
}

TEST_CASE("report summary and exit codes") {
  Report r;
  r.command = "x";
  CHECK(r.exit_code() == 0);
  r.records.push_back({"a", {}, {}, Verdict::Pass});
  r.records.push_back({"b", {}, {}, Verdict::Finding});
  CHECK(r.exit_code() == 0);
  r.records.push_back({"c", {}, {}, Verdict::NonConvergent});
  CHECK(r.exit_code() == 2);
  r.records.push_back({"d", {}, {}, Verdict::Violation});
  CHECK(r.exit_code() == 1);
  const auto s = r.summary();
  CHECK(s["PASS"] == 1);
  CHECK(s["FINDING"] == 1);
  CHECK(s["NON_CONVERGENT"] == 1);
  CHECK(s["VIOLATION"] == 1);
  CHECK(s["records"] == 4);

  CHECK(exact(make_rational(-6, 4)) == "-3/2");
  CHECK(with_error(1.5, 1e-3)["error"] == 1e-3);

  r.wall_seconds = 1.25;
  CHECK(r.to_json(true).contains("timings"));
  CHECK_FALSE(r.to_json(false).contains("timings"));
  Report same = r;
  same.wall_seconds = 99.0;
  CHECK(same.to_json(false).dump() == r.to_json(false).dump());
  CHECK(same.run_id() == r.run_id());
  same.config["tol"] = 1e-3;
  CHECK(same.run_id() != r.run_id());
}

TEST_CASE("task pool keeps order and maps toolkit errors") {
  std::vector<std::pair<std::string, Task>> tasks;
  for (int i = 0; i < 20; ++i)
    tasks.emplace_back("t", [i] { return std::vector<Record>{{"t" + std::to_string(i)}}; });
  tasks.emplace_back("viol", []() -> std::vector<Record> { throw Error(ErrorCode::Violation, "bad"); });
  tasks.emplace_back("slow", []() -> std::vector<Record> { throw Error(ErrorCode::NonConvergent, "slow"); });
  const auto out = run_tasks(tasks, 4);
  REQUIRE(out.size() == 22);
  for (int i = 0; i < 20; ++i) CHECK(out[i][0].check == "t" + std::to_string(i));
  CHECK(out[20][0].verdict == Verdict::Violation);
  CHECK(out[21][0].verdict == Verdict::NonConvergent);

  std::vector<std::pair<std::string, Task>> bad = {
      {"x", []() -> std::vector<Record> { throw Error(ErrorCode::InvalidArgument, "x"); }}};
  CHECK_THROWS_AS(run_tasks(bad, 2), Error);
}

TEST_CASE("commands end to end") {
  RunConfig cfg;
  cfg.timings = false;

  SUBCASE("isoperimetry") {
    cfg.command = "isoperimetry";
    int code = -1;
    const auto j = Json::parse(run(cfg, &code));
    CHECK(code == 0);
    CHECK(j["summary"]["PASS"] == 19);
    CHECK(j["summary"]["records"] == j["records"].size());
  }
  SUBCASE("verify-exact, proven and open ranges") {
    cfg.command = "verify-exact";
    cfg.l_max = 40;
    cfg.k_max = 12;
    cfg.c_k_max = 200;
    cfg.alpha = parse_alpha_list("2,7/2");
    int code = -1;
    auto j = Json::parse(run(cfg, &code));
    CHECK(code == 0);
    CHECK(j["summary"]["VIOLATION"] == 0);
    CHECK(j["summary"]["records"] == j["records"].size());
    bool saw_scan = false;
    for (const auto& r : j["records"])
      if (r["check"] == "symmetric_sum_bound") {
        saw_scan = true;
        CHECK(r["values"]["zero_margin_l"] == Json({0, 1}));
        CHECK(r["values"]["min_margin_l_ge_2"].is_string());
      }
    CHECK(saw_scan);

    cfg.n = std::vector<unsigned>{4, 5};
    j = Json::parse(run(cfg, &code));
    CHECK(code == 0);
    CHECK(j["summary"]["VIOLATION"] == 0);

    cfg.n = std::vector<unsigned>{0};
    CHECK_THROWS_AS(run(cfg), UsageError);
  }
  SUBCASE("profile csv and determinism") {
    cfg.command = "profile";
    cfg.functions = {"one", "monomial:1"};
    cfg.alpha = parse_alpha_list("2");
    cfg.n = std::vector<unsigned>{0, 1};
    cfg.variant = "mu";
    cfg.s_grid = {0.5, 2.0, 8.0};
    cfg.format = "csv";
    int code = -1;
    const auto csv = run(cfg, &code);
    CHECK(code == 0);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "profile,s,I_raw,I_hat,theta,margin,err");
    int rows = 0;
    while (std::getline(is, line)) {
      ++rows;
      CHECK(std::count(line.begin(), line.end(), ',') == 6);
    }
    CHECK(rows == 9);  // one at n=1 vanishes

    cfg.format = "json";
    cfg.jobs = 1;
    const auto a = run(cfg);
    cfg.jobs = 3;
    CHECK(run(cfg) == a);
  }
}
