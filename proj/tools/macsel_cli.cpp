#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "macsel/cache.hpp"
#include "macsel/partition.hpp"
#include "macsel/qnum.hpp"
#include "macsel/report.hpp"
#include "macsel/selberg.hpp"
#include "macsel/symfunc.hpp"
#include "macsel/verifier.hpp"

using namespace macsel;

namespace {

struct Config {
  // shared
  std::string out;
  std::string cache_dir;
  int workers = 0;
  bool no_timing = false;
  // sizes
  std::optional<int> n, m, k, deg, wmax, nmax, mumax, r, N;
  // polynomials
  std::string lambda, mu, basis = "P", format;
  // q-numerics
  std::string q = "1/2", alpha = "3/2", beta = "2", alpha1, alpha2, beta1, beta2, gamma;
  int precision = 0;
  int trunc_k = 0;
  double tol = 1e-20;
  // Selberg
  std::optional<int> k1, k2;
  std::string method = "mc", check = "integral", csv;
  long samples = 10'000'000, max_samples = 2'000'000'000;
  std::uint64_t seed = 1;
  int quad_order = 24;
  // positional
  std::vector<std::string> names;
  std::string suite;
};

Partition parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::string tok;
  for (char c : text + ",") {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok += c;
    } else if (c == ',' || c == ' ' || c == ')' || c == '(' || c == '[' || c == ']') {
      if (!tok.empty()) parts.push_back(std::stoi(tok));
      tok.clear();
    } else {
      throw InvalidPartition("cannot read partition '" + text + "'");
    }
  }
  return Partition(parts);
}

int env_workers() {
  if (const char* w = std::getenv("MACSEL_WORKERS")) {
    int v = std::atoi(w);
    if (v > 0) return v;
  }
  return 1;
}

std::string env_cache_dir() {
  const char* d = std::getenv("MACSEL_CACHE_DIR");
  return d ? d : "";
}

Report error_report(const std::string& id, const json& params, const std::string& what) {
  Report r;
  r.id = id;
  r.params = params;
  r.status = "fail";
  r.info["error"] = what;
  return r;
}

void attach_cache(const std::string& dir) {
  if (dir.empty()) return;
  macdonald_basis().set_cache(std::make_shared<PolyCache>(dir, "macdonald"));
  jack_basis().set_cache(std::make_shared<PolyCache>(dir, "jack"));
}

// ---------------- poly ----------------

std::string render(const SymSeries& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [nu, c] : f.coeffs()) {
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string m = "m[";
    for (std::size_t i = 0; i < nu.parts().size(); ++i) m += (i ? "," : "") + std::to_string(nu.parts()[i]);
    m += "]";
    s += c == RatFunc(1) ? m : "(" + c.to_string() + ")*" + m;
  }
  return s;
}

std::vector<Report> cmd_poly(const Config& c) {
  Partition l = parse_partition(c.lambda);
  int n = c.n.value_or(-1);
  json params = {{"lambda", l.parts()}, {"n", n}, {"basis", c.basis}};
  SymSeries f;
  if (c.basis == "P")
    f = macdonald_P(l, n);
  else if (c.basis == "Q")
    f = macdonald_Q(l, n);
  else if (c.basis == "normalized_P")
    f = normalized_P(l, n);
  else if (c.basis == "normalized_Q")
    f = normalized_Q(l, n);
  else if (c.basis == "jack")
    f = jack_P(l, n);
  else
    throw std::invalid_argument("unknown basis '" + c.basis + "'");
  Report r;
  r.id = "poly";
  r.params = params;
  json terms = json::array();
  for (const auto& [nu, co] : f.coeffs())
    if (!co.is_zero()) terms.push_back({{"m", nu.parts()}, {"coeff", co.to_string()}});
  r.info["terms"] = terms;
  r.info["text"] = render(f);
  return {r};
}

// ---------------- verify ----------------

std::optional<json> default_params(const std::string& id) {
  for (const auto& suite : {exact_suite(), invariant_suite()})
    for (const auto& cs : suite)
      if (cs.id == id) return cs.params;
  return std::nullopt;
}

std::vector<Report> cmd_verify(const Config& c) {
  std::vector<CaseSpec> cases;
  std::string suite = c.suite;
  std::vector<std::string> names = c.names;
  if (names.size() == 1 && names[0] == "all") names.clear();
  if (names.empty() && suite.empty()) suite = "all";
  if (suite == "paper" || suite == "all")
    for (auto& cs : exact_suite()) cases.push_back(cs);
  if (suite == "invariants" || suite == "all")
    for (auto& cs : invariant_suite()) cases.push_back(cs);
  if (!suite.empty() && cases.empty()) throw std::invalid_argument("unknown suite '" + suite + "'");

  std::vector<Report> errors;
  for (const auto& id : names) {
    auto p = default_params(id);
    if (!p) {
      errors.push_back(error_report(id, json::object(), "unknown case id"));
      continue;
    }
    auto set = [&](const char* key, const std::optional<int>& v) {
      if (v && p->contains(key)) (*p)[key] = *v;
    };
    set("n", c.n);
    set("m", c.m);
    set("deg", c.deg);
    set("wmax", c.wmax);
    set("nmax", c.nmax);
    set("mumax", c.mumax);
    set("r", c.r);
    set("N", c.N);
    cases.push_back({id, *p});
  }
  auto reports = run_cases(cases, c.workers);
  reports.insert(reports.end(), errors.begin(), errors.end());
  return reports;
}

// ---------------- qcheck ----------------

QContext qcontext(const Config& c) {
  QContext ctx = QContext::make(c.q, c.precision > 0 ? c.precision : 256);
  ctx.check_tol = c.tol;
  ctx.workers = c.workers;
  if (c.trunc_k > 0) ctx.max_shells = c.trunc_k;
  return ctx;
}

std::vector<Report> cmd_qcheck(const Config& c) {
  QContext ctx = qcontext(c);
  std::string id = c.names.empty() ? "all" : c.names.front();
  if (id == "all") return run_jobs(qnum_jobs(ctx), c.workers);
  int n = c.n.value_or(1), m = c.m.value_or(1), k = c.k.value_or(1);
  Partition l = parse_partition(c.lambda), u = parse_partition(c.mu);
  std::string a1 = c.alpha1.empty() ? c.alpha : c.alpha1;
  std::string a2 = c.alpha2.empty() ? c.beta : c.alpha2;
  if (id == "qbeta") return {check_qbeta(c.alpha, c.beta, ctx)};
  if (id == "ahk") return {check_ahk(n, k, c.alpha, c.beta, ctx)};
  if (id == "qkm") return {check_qkm(n, k, c.alpha, c.beta, l, ctx)};
  if (id == "thm41")
    return {check_thm41(n, m, k, a1, a2, c.beta1.empty() ? "5/2" : c.beta1, l, u, ctx)};
  if (id == "thm42")
    return {check_thm42(n, m, k, c.alpha1.empty() ? "2" : c.alpha1, c.alpha2.empty() ? "2" : c.alpha2,
                        c.beta1.empty() ? "3/4" : c.beta1, l, u, ctx)};
  return {error_report(id, json::object(), "unknown q-numeric check")};
}

// ---------------- selberg ----------------

SelbergOptions selberg_options(const Config& c) {
  SelbergOptions o;
  o.method = c.method;
  o.samples = c.samples;
  o.seed = c.seed;
  o.workers = c.workers;
  o.quad_order = c.quad_order;
  if (c.precision > 0) o.precision = c.precision;
  return o;
}

std::vector<Report> cmd_selberg(const Config& c) {
  SelbergOptions o = selberg_options(c);
  if (o.method != "mc" && o.method != "quad") throw std::invalid_argument("method must be mc or quad");
  if (c.suite == "paper") return run_jobs(selberg_jobs(o), 1);
  if (!c.suite.empty()) throw std::invalid_argument("unknown suite '" + c.suite + "'");
  int k1 = c.k1.value_or(1), k2 = c.k2.value_or(1);
  std::string beta = c.beta1.empty() ? "0.55" : c.beta1, gamma = c.gamma.empty() ? "0.13" : c.gamma;
  if (c.check == "chain_forms") return {check_chain_forms(k1, k2, beta, gamma)};
  if (c.check == "chainid") return {check_chainid(k1, k2, gamma)};
  if (c.check == "ccsymm") return {check_cc_symmetry(k1, k2, beta, gamma)};
  if (c.check != "integral") throw std::invalid_argument("unknown check '" + c.check + "'");

  SelbergParams p;
  p.k1 = k1;
  p.k2 = k2;
  if (!c.alpha1.empty()) p.alpha1 = c.alpha1;
  if (!c.alpha2.empty()) p.alpha2 = c.alpha2;
  if (!c.beta2.empty()) p.beta1 = "";  // derived unless also given
  if (!c.beta1.empty()) p.beta1 = c.beta1;
  if (!c.beta2.empty()) p.beta2 = c.beta2;
  if (!c.gamma.empty()) p.gamma = c.gamma;
  p.lambda = parse_partition(c.lambda);
  p.mu = parse_partition(c.mu);
  json params = {{"k1", k1}, {"k2", k2}, {"method", o.method}};
  if (k1 < 0 || k2 < 0 || k1 + k2 == 0) throw std::invalid_argument("need k1, k2 >= 0 with k1 + k2 > 0");
  if (o.method == "mc" && o.samples > c.max_samples)
    return {error_report("selberg", params, "budget exceeded: samples above --max-samples")};
  if (o.method == "quad") {
    double evals = 0;
    for (int s : {o.quad_order, 2 * o.quad_order}) evals += std::pow(static_cast<double>(s), k1 + k2);
    if (evals > static_cast<double>(c.max_samples))
      return {error_report("selberg", params, "budget exceeded: tensor quadrature needs " +
                                                  std::to_string(static_cast<long long>(evals)) + " evaluations")};
  }
  return {check_thm31(p, o)};
}

// ---------------- cache ----------------

std::vector<Report> cmd_cache(const Config& c) {
  std::string dir = c.cache_dir.empty() ? ".macsel-cache" : c.cache_dir;
  std::string action = c.names.empty() ? "list" : c.names.front();
  Report r;
  r.id = "cache";
  r.params = {{"action", action}, {"dir", dir}};
  auto mac = std::make_shared<PolyCache>(dir, "macdonald");
  auto jack = std::make_shared<PolyCache>(dir, "jack");
  auto counts = [&] {
    return json{{"macdonald", mac->list().size()}, {"jack", jack->list().size()}};
  };
  if (action == "list") {
    r.info["files"] = {mac->path().string(), jack->path().string()};
    r.info["records"] = counts();
    r.info["corrupt_records"] = mac->corrupt_records() + jack->corrupt_records();
    json keys = json::array();
    for (auto& [l, n] : mac->list()) keys.push_back(l.parts());
    r.info["macdonald_partitions"] = keys;
  } else if (action == "clear") {
    mac->clear();
    jack->clear();
    r.info["records"] = counts();
  } else if (action == "warm") {
    int wmax = c.wmax.value_or(4), n = c.n.value_or(-1);
    r.params["wmax"] = wmax;
    r.params["n"] = n;
    json before = counts();
    macdonald_basis().set_cache(mac);
    jack_basis().set_cache(jack);
    for (const auto& l : enumerate_partitions(wmax, n)) {
      macdonald_basis().P(l);
      jack_basis().P(l);
    }
    r.info["records_before"] = before;
    r.info["records"] = counts();
  } else {
    return {error_report("cache", r.params, "unknown cache action '" + action + "'")};
  }
  return {r};
}

// ---------------- output ----------------

json config_json(const std::string& sub, const Config& c) {
  json j = {{"subcommand", sub}, {"workers", c.workers}};
  auto opt = [&](const char* key, const std::optional<int>& v) {
    if (v) j[key] = *v;
  };
  opt("n", c.n);
  opt("m", c.m);
  opt("k", c.k);
  opt("deg", c.deg);
  opt("wmax", c.wmax);
  if (!c.names.empty()) j["names"] = c.names;
  if (!c.suite.empty()) j["suite"] = c.suite;
  if (sub == "qcheck") {
    j["q"] = c.q;
    j["precision"] = c.precision > 0 ? c.precision : 256;
    j["trunc_k"] = c.trunc_k > 0 ? c.trunc_k : QContext{}.max_shells;
    j["tol"] = c.tol;
  }
  if (sub == "selberg") {
    opt("k1", c.k1);
    opt("k2", c.k2);
    j["method"] = c.method;
    if (c.method == "mc") {
      j["samples"] = c.samples;
      j["seed"] = c.seed;
    } else {
      j["quad_order"] = c.quad_order;
    }
    j["precision"] = c.precision > 0 ? c.precision : 256;
  }
  return j;
}

int emit(const std::string& sub, const Config& c, const std::vector<Report>& reports) {
  std::string text;
  if (c.format == "csv") {
    if (sub != "selberg") throw std::invalid_argument("csv output is only available for selberg integrals");
    for (const auto& r : reports) text += domains_csv(r);
  } else {
    json doc;
    doc["schema"] = "macsel-report/1";
    doc["config"] = config_json(sub, c);
    doc["reports"] = report_document(reports, !c.no_timing)["reports"];
    doc["passed"] = all_passed(reports);
    text = doc.dump(2) + "\n";
  }
  if (!c.csv.empty()) {
    std::ofstream f(c.csv);
    for (const auto& r : reports) f << domains_csv(r);
  }
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot write " + c.out);
    f << text;
  }
  return all_passed(reports) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Macdonald, Jack and Selberg identity verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "macsel 1.0");
  Config c;

  auto common = [&](CLI::App* s) {
    s->add_option("--out", c.out, "write the report here instead of stdout");
    s->add_option("--cache-dir", c.cache_dir, "polynomial cache directory (env MACSEL_CACHE_DIR)");
    s->add_option("--workers", c.workers, "worker threads (env MACSEL_WORKERS)")->check(CLI::PositiveNumber);
    s->add_flag("--no-timing", c.no_timing, "omit timings so reports are byte-reproducible");
    s->add_option("--n", c.n);
    s->add_option("--m", c.m);
    s->add_option("--precision", c.precision, "bits");
  };

  auto* poly = app.add_subcommand("poly", "print a basis element in the monomial basis");
  common(poly);
  poly->add_option("lambda", c.lambda, "partition, e.g. 2,1")->required();
  poly->add_option("--basis", c.basis)->check(CLI::IsMember({"P", "Q", "normalized_P", "normalized_Q", "jack"}));
  poly->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));

  auto* verify = app.add_subcommand("verify", "run exact identity checks");
  common(verify);
  verify->add_option("case", c.names, "case ids (default: every suite)");
  verify->add_option("--suite", c.suite)->check(CLI::IsMember({"paper", "invariants", "all"}));
  verify->add_option("--deg", c.deg);
  verify->add_option("--wmax", c.wmax);
  verify->add_option("--nmax", c.nmax);
  verify->add_option("--mumax", c.mumax);
  verify->add_option("--r", c.r);
  verify->add_option("--N", c.N);

  auto* qcheck = app.add_subcommand("qcheck", "q-integral identities at a numeric q");
  common(qcheck);
  qcheck->add_option("check", c.names, "qbeta | ahk | qkm | thm41 | thm42 | all")->expected(0, 1);
  qcheck->add_option("--k", c.k);
  qcheck->add_option("--q", c.q);
  qcheck->add_option("--alpha", c.alpha);
  qcheck->add_option("--beta", c.beta);
  qcheck->add_option("--alpha1", c.alpha1);
  qcheck->add_option("--alpha2", c.alpha2);
  qcheck->add_option("--beta1", c.beta1);
  qcheck->add_option("--lambda", c.lambda);
  qcheck->add_option("--mu", c.mu);
  qcheck->add_option("--trunc-k", c.trunc_k, "cap on lattice shells");
  qcheck->add_option("--tol", c.tol, "relative tolerance");

  auto* selberg = app.add_subcommand("selberg", "two-family Selberg integrals and integration chains");
  common(selberg);
  selberg->add_option("--k1", c.k1);
  selberg->add_option("--k2", c.k2);
  selberg->add_option("--alpha1", c.alpha1);
  selberg->add_option("--alpha2", c.alpha2);
  selberg->add_option("--beta1", c.beta1);
  selberg->add_option("--beta2", c.beta2);
  selberg->add_option("--gamma", c.gamma);
  selberg->add_option("--lambda", c.lambda);
  selberg->add_option("--mu", c.mu);
  selberg->add_option("--method", c.method)->check(CLI::IsMember({"mc", "quad"}));
  selberg->add_option("--samples", c.samples);
  selberg->add_option("--max-samples", c.max_samples, "evaluation budget");
  selberg->add_option("--seed", c.seed);
  selberg->add_option("--quad-order", c.quad_order);
  selberg->add_option("--check", c.check)->check(CLI::IsMember({"integral", "chain_forms", "chainid", "ccsymm"}));
  selberg->add_option("--suite", c.suite)->check(CLI::IsMember({"paper"}));
  selberg->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  selberg->add_option("--csv", c.csv, "also write the per-domain breakdown here");

  auto* cache = app.add_subcommand("cache", "manage the polynomial cache");
  common(cache);
  cache->add_option("action", c.names, "list | clear | warm")->expected(0, 1);
  cache->add_option("--wmax", c.wmax);

  CLI11_PARSE(app, argc, argv);

  if (c.workers <= 0) c.workers = env_workers();
  if (c.cache_dir.empty()) c.cache_dir = env_cache_dir();

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    if (name != "cache") attach_cache(c.cache_dir);
    std::vector<Report> reports;
    if (name == "poly") {
      reports = cmd_poly(c);
      if (c.format != "json") {
        std::string text = reports[0].info["text"].get<std::string>() + "\n";
        if (c.out.empty()) {
          std::cout << text;
        } else {
          std::ofstream(c.out) << text;
        }
        return 0;
      }
    } else if (name == "verify") {
      reports = cmd_verify(c);
    } else if (name == "qcheck") {
      reports = cmd_qcheck(c);
    } else if (name == "selberg") {
      reports = cmd_selberg(c);
    } else {
      reports = cmd_cache(c);
    }
    return emit(name, c, reports);
  } catch (const std::exception& e) {
    json doc;
    doc["schema"] = "macsel-report/1";
    doc["config"] = config_json(name, c);
    doc["reports"] = json::array({to_json(error_report(name, json::object(), e.what()), false)});
    doc["passed"] = false;
    std::cout << doc.dump(2) << "\n";
    return 1;
  }
}
