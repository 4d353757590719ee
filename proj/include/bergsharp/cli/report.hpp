#pragma once

#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergsharp/concentration.hpp"
#include "bergsharp/rational.hpp"

namespace bergsharp::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

enum class Verdict { Pass, Violation, Finding, NonConvergent };
std::string to_string(Verdict v);

struct Record {
  std::string check;
  Json params = Json::object();
  Json values = Json::object();
  Verdict verdict = Verdict::Pass;
  std::string note;
};

/// Exact rationals always leave as "num/den" strings.
std::string exact(const Rational& q);
/// A float together with its error estimate.
Json with_error(double value, double error);

struct ProfileRows {
  std::string id;
  concentration::ConcentrationProfile profile;
};

struct Report {
  std::string command;
  Json config = Json::object();
  std::vector<Record> records;
  std::vector<ProfileRows> profiles;
  double wall_seconds = 0.0;

  std::string run_id() const;
  Json summary() const;
  /// 1 on any VIOLATION, else 2 on any NON_CONVERGENT, else 0.
  int exit_code() const;

  /// Timings go last under their own key so the rest of the body is reproducible.
  Json to_json(bool include_timings = true) const;
  void write_json(std::ostream& os, bool include_timings = true) const;
  /// Row per profile sample: profile,s,I_raw,I_hat,theta,margin,err.
  void write_csv(std::ostream& os) const;
};

}  // namespace bergsharp::cli
