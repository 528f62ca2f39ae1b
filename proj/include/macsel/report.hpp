#pragma once

#include <chrono>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "macsel/ratfunc.hpp"

namespace macsel {

using json = nlohmann::ordered_json;

struct Report {
  std::string id;
  json params = json::object();
  std::string status = "pass";  // pass | fail | skipped
  json witness;                 // null unless status is fail
  json info = json::object();
  long millis = 0;

  bool passed() const { return status == "pass"; }
};

json to_json(const Report& r, bool timing = true);
json report_document(const std::vector<Report>& reports, bool timing = true);
bool all_passed(const std::vector<Report>& reports);

// Records the first mismatching comparison; later comparisons are skipped.
class Checker {
 public:
  bool ok() const { return witness_.is_null(); }
  long compared() const { return compared_; }
  const json& witness() const { return witness_; }
  bool equal(const std::function<json()>& where, const RatFunc& lhs, const RatFunc& rhs);
  bool that(const std::function<json()>& where, bool cond, const std::string& what);
  void fail(json witness) { witness_ = std::move(witness); }

 private:
  long compared_ = 0;
  json witness_;
};

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  long millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

struct Job {
  std::string id;
  json params;
  std::function<Report()> run;
};
// Runs jobs on a worker pool; output order follows input order and an escaping
// exception becomes a fail report carrying the message.
std::vector<Report> run_jobs(const std::vector<Job>& jobs, int workers);

// Fills status, witness, millis and the comparison count from a checker.
Report finish(Report r, const Checker& c, const Stopwatch& sw);

}  // namespace macsel
