// Acceptance run: one PASS/FAIL line per criterion, followed by a short reason.
// Exit status is nonzero if any criterion fails, except for sub-items recorded
// as unattainable in their stated form (each such line says so).

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "macsel/qnum.hpp"
#include "macsel/selberg.hpp"
#include "macsel/symfunc.hpp"
#include "macsel/verifier.hpp"
#include "oracles.hpp"

using namespace macsel;

namespace {

constexpr int kWorkers = 4;
bool hard_failure = false;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

double num(const json& j) { return j.is_string() ? std::stod(j.get<std::string>()) : j.get<double>(); }

void line(int n, const std::string& title, bool pass, const std::string& detail, bool unattainable = false) {
  std::cout << "criterion " << n << " [" << (pass ? "PASS" : "FAIL") << "] " << title << ": " << detail << std::endl;
  if (!pass && !unattainable) hard_failure = true;
}

std::string secs(const Stopwatch& sw) { return fmt(sw.millis() / 1000.0) + " s"; }

struct Tally {
  int pass = 0, fail = 0, skipped = 0;
  std::string first_fail;
  explicit Tally(const std::vector<Report>& rs) {
    for (const auto& r : rs) {
      if (r.status == "pass") {
        ++pass;
      } else if (r.status == "skipped") {
        ++skipped;
      } else {
        ++fail;
        if (first_fail.empty()) first_fail = r.id + " " + r.params.dump();
      }
    }
  }
  std::string text() const {
    std::string s = std::to_string(pass) + " pass, " + std::to_string(fail) + " fail";
    if (skipped) s += ", " + std::to_string(skipped) + " skipped";
    if (!first_fail.empty()) s += " (first failure: " + first_fail + ")";
    return s;
  }
};

void exact(int n, const std::string& title, const std::vector<CaseSpec>& suite) {
  Stopwatch sw;
  auto rs = run_cases(suite, kWorkers);
  Tally t(rs);
  // Zero tolerance: a pass carries no witness, skips are not acceptable here.
  bool ok = t.fail == 0 && t.skipped == 0;
  for (const auto& r : rs) ok = ok && r.witness.is_null();
  line(n, title, ok, t.text() + ", " + secs(sw) + " with " + std::to_string(kWorkers) + " workers");
}

const Report* find(const std::vector<Report>& rs, const std::string& id, const json& params) {
  for (const auto& r : rs) {
    if (r.id != id) continue;
    bool match = true;
    for (auto& [k, v] : params.items()) match = match && r.params.contains(k) && r.params[k] == v;
    if (match) return &r;
  }
  return nullptr;
}

void criterion3() {
  Stopwatch sw;
  QContext ctx = QContext::make("1/2", 256);
  ctx.check_tol = 1e-20;
  auto rs = run_jobs(qnum_jobs(ctx), kWorkers);
  Tally t(rs);
  bool all = t.fail == 0 && t.skipped == 0;

  const Report* at21 = find(rs, "thm42", {{"n", 2}, {"m", 1}});
  const Report* at31 = find(rs, "thm42", {{"n", 3}, {"m", 1}});
  bool decided = false;
  std::string losing;
  if (at31 && at31->info.contains("prefactor_verdict") && at31->info["prefactor_verdict"] == "binom(m,3)")
    for (const auto& e : at31->info["prefactor_readings"])
      if (!e["balances"].get<bool>() && e.contains("lhs_over_rhs")) {
        decided = true;
        losing = e["second_binomial"].get<std::string>() + " off by " + e["lhs_over_rhs"].get<std::string>();
      }
  bool coincide = at21 && at21->info.value("prefactor_verdict", "").rfind("indistinguishable", 0) == 0;

  std::string detail = t.text() + " at relative 1e-20, " + secs(sw);
  if (!all || !decided) {
    line(3, "q-numeric suite", false, detail + (decided ? "" : "; prefactor adjudication not decided"));
    return;
  }
  // Everything computable passes; the (2,1) wording cannot be met because both
  // readings give the same right side there.
  line(3, "q-numeric suite", false,
       detail + "; adjudication at (n,m)=(2,1) is unattainable as stated (" +
           (coincide ? "both readings coincide and balance there" : "unexpected (2,1) verdict") +
           "); at (3,1) binom(m,3) balances, " + losing,
       coincide);
}

std::vector<Report> selberg_run(std::uint64_t seed) {
  SelbergOptions o;
  o.samples = 10'000'000;
  o.seed = seed;
  o.workers = kWorkers;
  return run_jobs(selberg_jobs(o), 1);
}

void criterion4(const std::vector<Report>& rs, const Stopwatch& sw) {
  Tally t(rs);
  const Report* classical = find(rs, "selberg", {{"k1", 0}, {"k2", 2}});
  double rel = classical && classical->info.contains("rel_diff") ? num(classical->info["rel_diff"]) : 1;
  double worst = 0;
  int mc = 0;
  for (const auto& r : rs)
    if (r.id == "selberg" && r.params.value("method", "") == "mc") {
      ++mc;
      worst = std::max(worst, r.info.value("sigmas", 1e9));
    }
  bool ok = t.fail == 0 && t.skipped == 0 && rel <= 1e-6;
  line(4, "Selberg numeric suite", ok,
       t.text() + "; (0,2) quadrature rel " + fmt(rel) + " (<= 1e-6); " + std::to_string(mc) +
           " MC integrals, worst " + fmt(worst) + " combined standard errors (<= 3); " + secs(sw));
}

void criterion5() {
  Stopwatch sw;
  int checks = 0, bad = 0;
  std::string first;
  auto note = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok && !bad++) first = what;
  };
  note(macdonald_basis().P(Partition{2}).coeff(Partition{1, 1}) ==
           oracle::gram_schmidt_coeff(Partition{2}, Partition{1, 1}),
       "Gram-Schmidt P(2)");
  note(macdonald_basis().P(Partition{2, 1}).coeff(Partition{1, 1, 1}) ==
           oracle::gram_schmidt_coeff(Partition{2, 1}, Partition{1, 1, 1}),
       "Gram-Schmidt P(2,1)");
  std::vector<mpq_class> x = {mpq_class(1, 2), mpq_class(2, 3), mpq_class(-3, 5), mpq_class(7, 4), mpq_class(5, 9)};
  for (int w = 1; w <= 5; ++w)
    for (const auto& l : partitions_of(w))
      note(oracle::eval_at_alpha(jack_P(l), 1, x) == oracle::schur_alternant(l, x), "Schur " + l.to_string());
  double gap = 0;
  for (const char* alpha : {"2", "3/2"})
    for (int w = 1; w <= 3; ++w)
      for (const auto& l : partitions_of(w)) {
        double g = oracle::macdonald_jack_gap(l, alpha, "1e-6");
        gap = std::max(gap, g);
        note(g <= 1e-4, "Macdonald limit " + l.to_string());
      }
  line(5, "oracle equivalences", bad == 0,
       std::to_string(checks - bad) + "/" + std::to_string(checks) + " oracle checks agree, Macdonald-to-Jack gap " +
           fmt(gap) + " (<= 1e-4)" + (bad ? "; first disagreement: " + first : "") + ", " + secs(sw));
}

std::string cli(const std::string& args) {
  std::string out;
  FILE* p = popen((std::string(MACSEL_CLI_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
  if (!p) return out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  pclose(p);
  return out;
}

void criterion6(const std::vector<Report>& s1, const std::vector<Report>& s2) {
  Stopwatch sw;
  // Byte-identical documents, in-process and through the command line.
  bool same = true;
  QContext ctx = QContext::make("1/2", 256);
  auto q1 = report_document(run_jobs(qnum_jobs(ctx), kWorkers), false).dump();
  auto q2 = report_document(run_jobs(qnum_jobs(ctx), 1), false).dump();
  same = same && q1 == q2;
  auto e1 = report_document(run_cases(exact_suite(), kWorkers), false).dump();
  auto e2 = report_document(run_cases(exact_suite(), 1), false).dump();
  same = same && e1 == e2;
  same = same && report_document(s1, false).dump() == report_document(selberg_run(1), false).dump();
  for (const char* args : {"verify --suite paper --no-timing", "qcheck thm42 --n 1 --m 1 --beta1 3/4 --no-timing",
                           "selberg --k1 1 --k2 2 --beta1 0.6 --gamma 0.15 --samples 1000000 --no-timing"}) {
    std::string a = cli(args), b = cli(args);
    same = same && !a.empty() && a == b;
  }

  // Every Selberg integral: seeds 1 and 2 agree within 3 combined error bars.
  int cases = 0, agree = 0;
  double worst = 0;
  for (std::size_t i = 0; i < s1.size() && i < s2.size(); ++i) {
    if (s1[i].id != "selberg" || !s1[i].info.contains("lhs") || !s2[i].info.contains("lhs")) continue;
    ++cases;
    double v1 = num(s1[i].info["lhs"]), v2 = num(s2[i].info["lhs"]);
    double err = std::hypot(num(s1[i].info["error"]), num(s2[i].info["error"]));
    double z = err > 0 ? std::abs(v1 - v2) / err : (v1 == v2 ? 0 : INFINITY);
    worst = std::max(worst, z);
    if (z <= 3) ++agree;
  }
  line(6, "reproducibility", same && cases > 0 && agree == cases,
       std::string(same ? "repeated runs byte-identical" : "repeated runs differ") + "; seeds 1 and 2 agree on " +
           std::to_string(agree) + "/" + std::to_string(cases) + " Selberg integrals, worst " + fmt(worst) +
           " combined errors (<= 3); " + secs(sw));
}

}  // namespace

int main() {
  exact(1, "exact suite", exact_suite());
  exact(2, "structural invariants", invariant_suite());
  criterion3();
  Stopwatch sw;
  auto seed1 = selberg_run(1);
  criterion4(seed1, sw);
  criterion5();
  auto seed2 = selberg_run(2);
  criterion6(seed1, seed2);
  return hard_failure ? 1 : 0;
}
