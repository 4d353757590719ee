#include "bergsharp/cli/report.hpp"

#include <cstdio>
#include <iomanip>

namespace bergsharp::cli {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Violation: return "VIOLATION";
    case Verdict::Finding: return "FINDING";
    case Verdict::NonConvergent: return "NON_CONVERGENT";
  }
  return "UNKNOWN";
}

std::string exact(const Rational& q) { return to_fraction_string(q); }

Json with_error(double value, double error) { return Json{{"value", value}, {"error", error}}; }

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Json record_json(const Record& r) {
  Json j;
  j["check"] = r.check;
  j["params"] = r.params;
  j["values"] = r.values;
  j["verdict"] = to_string(r.verdict);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string Report::run_id() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(std::string(kToolVersion) + command + config.dump())));
  return buf;
}

Json Report::summary() const {
  Json s = {{"PASS", 0}, {"VIOLATION", 0}, {"FINDING", 0}, {"NON_CONVERGENT", 0}};
  for (const auto& r : records) s[to_string(r.verdict)] = s[to_string(r.verdict)].get<int>() + 1;
  s["records"] = records.size();
  return s;
}

int Report::exit_code() const {
  bool nonconv = false;
  for (const auto& r : records) {
    if (r.verdict == Verdict::Violation) return 1;
    if (r.verdict == Verdict::NonConvergent) nonconv = true;
  }
  return nonconv ? 2 : 0;
}

Json Report::to_json(bool include_timings) const {
  Json j;
  j["tool"] = "bergsharp";
  j["version"] = kToolVersion;
  j["run_id"] = run_id();
  j["command"] = command;
  j["config"] = config;
  j["summary"] = summary();
  Json recs = Json::array();
  for (const auto& r : records) recs.push_back(record_json(r));
  j["records"] = std::move(recs);
  if (!profiles.empty()) {
    Json ps = Json::array();
    for (const auto& p : profiles) {
      Json pj;
      pj["profile"] = p.id;
      pj["X"] = p.profile.X;
      pj["rays"] = p.profile.rays;
      Json samples = Json::array();
      for (const auto& s : p.profile.samples)
        samples.push_back(Json{{"s", s.s},
                               {"t", s.t},
                               {"I_raw", s.I_raw},
                               {"I_hat", s.I_hat},
                               {"I_literal", s.I_literal},
                               {"theta", s.theta},
                               {"margin", s.margin},
                               {"err", s.error}});
      pj["samples"] = std::move(samples);
      ps.push_back(std::move(pj));
    }
    j["profiles"] = std::move(ps);
  }
  if (include_timings) j["timings"] = Json{{"wall_seconds", wall_seconds}};
  return j;
}

void Report::write_json(std::ostream& os, bool include_timings) const {
  os << to_json(include_timings).dump(2) << '\n';
}

void Report::write_csv(std::ostream& os) const {
  os << "profile,s,I_raw,I_hat,theta,margin,err\n";
  for (const auto& p : profiles)
    for (const auto& s : p.profile.samples)
      os << p.id << ',' << fmt(s.s) << ',' << fmt(s.I_raw) << ',' << fmt(s.I_hat) << ',' << fmt(s.theta) << ','
         << fmt(s.margin) << ',' << fmt(s.error) << '\n';
}

}  // namespace bergsharp::cli
