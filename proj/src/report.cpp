#include "macsel/report.hpp"

#include <atomic>
#include <thread>

namespace macsel {

json to_json(const Report& r, bool timing) {
  json j;
  j["id"] = r.id;
  j["params"] = r.params;
  j["status"] = r.status;
  if (!r.witness.is_null()) j["witness"] = r.witness;
  if (!r.info.empty()) j["info"] = r.info;
  if (timing) j["millis"] = r.millis;
  return j;
}

json report_document(const std::vector<Report>& reports, bool timing) {
  json arr = json::array();
  for (auto& r : reports) arr.push_back(to_json(r, timing));
  json doc;
  doc["schema"] = "macsel-report/1";
  doc["reports"] = std::move(arr);
  return doc;
}

bool all_passed(const std::vector<Report>& reports) {
  for (auto& r : reports)
    if (r.status == "fail") return false;
  return true;
}

bool Checker::equal(const std::function<json()>& where, const RatFunc& lhs, const RatFunc& rhs) {
  if (!ok()) return false;
  ++compared_;
  if (lhs == rhs) return true;
  witness_ = {{"at", where()}, {"lhs", lhs.to_string()}, {"rhs", rhs.to_string()},
              {"difference", (lhs - rhs).to_string()}};
  return false;
}

bool Checker::that(const std::function<json()>& where, bool cond, const std::string& what) {
  if (!ok()) return false;
  ++compared_;
  if (cond) return true;
  witness_ = {{"at", where()}, {"violated", what}};
  return false;
}

Report finish(Report r, const Checker& c, const Stopwatch& sw) {
  r.status = c.ok() ? "pass" : "fail";
  r.witness = c.witness();
  r.info["comparisons"] = c.compared();
  r.millis = sw.millis();
  return r;
}

std::vector<Report> run_jobs(const std::vector<Job>& jobs, int workers) {
  std::vector<Report> out(jobs.size());
  auto work = [&](std::size_t i) {
    try {
      out[i] = jobs[i].run();
    } catch (const std::exception& e) {
      out[i] = Report{jobs[i].id, jobs[i].params, "fail", json{{"error", e.what()}}};
    }
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) work(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace macsel
