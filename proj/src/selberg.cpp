#include "macsel/selberg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "macsel/qnum.hpp"
#include "macsel/symfunc.hpp"

namespace macsel {

namespace {

std::string num(const BigReal& x) { return x.str(25); }

BigReal lin(const BigReal& base, long m, const BigReal& g) { return base + BigReal(m) * g; }

bool near_integer(const BigReal& x) {
  BigReal r(x);
  mpfr_rint(r.get(), x.get(), MPFR_RNDN);
  BigReal d = abs(x - r);
  return d < pow(BigReal(2L), -static_cast<long>(x.precision() / 2));
}

BigReal checked_ratio(const BigReal& num_arg, const BigReal& den_arg) {
  if (near_integer(den_arg)) throw ChainError("chain weight has a vanishing denominator sin(pi*" + den_arg.str(12) + ")");
  return sin_pi(num_arg) / sin_pi(den_arg);
}

void check_nonintegrality(int k1, int k2, const BigReal& beta, const BigReal& gamma) {
  for (int i = 1; i <= std::min(k1, k2); ++i)
    if (near_integer(lin(beta, i - k2 - 1, gamma)))
      throw ChainError("beta + (i-k2-1) gamma is an integer at i = " + std::to_string(i));
}

void append_seq(std::vector<std::vector<int>>& out, std::vector<int>& cur, int length, int lo, int hi) {
  if (static_cast<int>(cur.size()) == length) {
    out.push_back(cur);
    return;
  }
  int from = cur.empty() ? lo : cur.back();
  for (int v = from; v <= hi; ++v) {
    cur.push_back(v);
    append_seq(out, cur, length, lo, hi);
    cur.pop_back();
  }
}

std::string swap_labels(std::string s) {
  for (char& c : s) c = c == 'x' ? 'y' : 'x';
  return s;
}

json seq_json(const std::vector<int>& s) { return json(s); }

}  // namespace

std::vector<std::vector<int>> weak_sequences(int length, int lo, int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (length == 0 || lo <= hi) append_seq(out, cur, length, lo, hi);
  return out;
}

std::string order_from_a(const std::vector<int>& a, int k2) {
  std::string s;
  int placed = 0;
  for (int ai : a) {
    for (; placed < ai; ++placed) s += 'y';
    s += 'x';
  }
  for (; placed < k2; ++placed) s += 'y';
  return s;
}

std::string order_from_b(const std::vector<int>& b, int k1) { return swap_labels(order_from_a(b, k1)); }

std::vector<WeightedDomain> enumerate_chain(int k1, int k2, const BigReal& beta, const BigReal& gamma) {
  check_nonintegrality(k1, k2, beta, gamma);
  std::vector<WeightedDomain> out;
  for (auto& a : weak_sequences(k1, 0, k2)) {
    BigReal w(1L);
    for (int i = 1; i <= k1; ++i)
      w *= checked_ratio(lin(beta, -(i - a[i - 1] - k1 + k2), gamma), lin(beta, -(i - k1 + k2), gamma));
    out.push_back({a, order_from_a(a, k2), w});
  }
  return out;
}

std::vector<WeightedDomain> chain_b_form(int k1, int k2, const BigReal& beta, const BigReal& gamma) {
  check_nonintegrality(k1, k2, beta, gamma);
  std::vector<WeightedDomain> out;
  for (auto& b : weak_sequences(k2, 0, k1)) {
    BigReal w(1L);
    for (int i = 1; i <= k2; ++i)
      w *= checked_ratio(lin(beta, i - b[i - 1] + k1 - k2 - 1, gamma), lin(beta, i - k2 - 1, gamma));
    out.push_back({b, order_from_b(b, k1), w});
  }
  return out;
}

std::vector<WeightedDomain> chain_tv(int k1, int k2, const BigReal& gamma) {
  std::vector<WeightedDomain> out;
  for (auto& M : weak_sequences(k1, 1, k2)) {
    bool ok = true;
    for (int i = 1; i <= k1; ++i) ok = ok && M[i - 1] <= i - k1 + k2;
    if (!ok) continue;
    BigReal w(1L);
    std::vector<int> a;
    for (int i = 1; i <= k1; ++i) {
      w *= checked_ratio(BigReal(static_cast<long>(i - M[i - 1] - k1 + k2 + 1)) * gamma,
                         BigReal(static_cast<long>(i - k1 + k2)) * gamma);
      a.push_back(M[i - 1] - 1);
    }
    out.push_back({M, order_from_a(a, k2), w});
  }
  return out;
}

// ---- Jack polynomials ----

JackNum::JackNum(const Partition& lambda, int n, const BigReal& alpha) : n_(n), weight_(lambda.size()) {
  if (lambda.length() > n) throw std::invalid_argument("partition longer than the number of variables");
  std::array<BigReal, kNumVars> pt;
  for (auto& v : pt) v = BigReal(1L);
  pt[kAlpha] = alpha;
  auto conv = [](const mpz_class& z) { return BigReal(z); };
  for (const auto& [nu, c] : jack_basis().P(lambda).coeffs()) {
    if (nu.length() > n) continue;
    BigReal cv = eval_ratfunc(c, pt, conv);
    for (auto& perm : distinct_permutations(nu.padded(n))) terms_.push_back({perm, cv, 0});
  }
  BigReal norm(0L);
  for (auto& t : terms_) norm += t.c;
  if (norm.is_zero()) throw std::runtime_error("Jack polynomial vanishes at 1^n");
  for (auto& t : terms_) {
    t.c /= norm;
    t.cd = t.c.to_double();
  }
}

double JackNum::operator()(const double* x) const {
  double acc = 0;
  for (const auto& t : terms_) {
    double v = t.cd;
    for (int i = 0; i < n_; ++i)
      for (int e = 0; e < t.e[i]; ++e) v *= x[i];
    acc += v;
  }
  return acc;
}

BigReal JackNum::eval(const std::vector<BigReal>& x) const {
  BigReal acc(0L);
  for (const auto& t : terms_) {
    BigReal v = t.c;
    for (int i = 0; i < n_; ++i)
      if (t.e[i]) v *= pow(x[i], static_cast<long>(t.e[i]));
    acc += v;
  }
  return acc;
}

// ---- right sides ----

namespace {

struct GammaProduct {
  BigReal value{1L};
  void mul(const BigReal& x) { value *= g(x); }
  void div(const BigReal& x) { value /= g(x); }
  static BigReal g(const BigReal& x) {
    if (x.sign() <= 0) throw std::domain_error("Gamma argument " + x.str(12) + " is not positive");
    return gamma(x);
  }
};

}  // namespace

BigReal selberg_rhs(int k1, int k2, const BigReal& a1, const BigReal& a2, const BigReal& b1, const BigReal& b2,
                    const BigReal& g, const Partition& lambda, const Partition& mu) {
  GammaProduct P;
  for (int i = 1; i <= k1; ++i) {
    BigReal l(static_cast<long>(lambda[i]));
    P.mul(lin(a1, k1 - i, g) + l);
    P.mul(lin(b1, i - k2 - 1, g));
    P.mul(BigReal(static_cast<long>(i)) * g);
    P.div(lin(a1 + b1, 2 * k1 - k2 - i - 1, g) + l);
    P.div(g);
  }
  for (int i = 1; i <= k2; ++i) {
    BigReal m(static_cast<long>(mu[i]));
    P.mul(lin(a2, k2 - i, g) + m);
    P.mul(lin(b2, i - 1, g));
    P.mul(BigReal(static_cast<long>(i)) * g);
    P.div(lin(a2 + b2, 2 * k2 - k1 - i - 1, g) + m);
    P.div(g);
  }
  for (int i = 1; i <= k1; ++i)
    for (int j = 1; j <= k2; ++j) {
      BigReal s(static_cast<long>(lambda[i] + mu[j]));
      P.mul(lin(a1 + a2, k1 + k2 - i - j - 1, g) + s);
      P.div(lin(a1 + a2, k1 + k2 - i - j, g) + s);
    }
  return P.value;
}

BigReal tv_rhs(int k1, int k2, const BigReal& a1, const BigReal& a2, const BigReal& b2, const BigReal& g) {
  GammaProduct P;
  BigReal one(1L);
  for (int i = 0; i < k1; ++i) {
    P.mul(lin(a1, i, g));
    P.mul(lin(one, i - k2, g));
    P.mul(BigReal(static_cast<long>(i + 1)) * g);
    P.div(lin(a1 + one, i + k1 - k2 - 1, g));
    P.div(g);
  }
  for (int i = 0; i < k2; ++i) {
    P.mul(lin(a2, i, g));
    P.mul(lin(b2, i, g));
    P.mul(BigReal(static_cast<long>(i + 1)) * g);
    P.div(lin(a2 + b2, i + k2 - k1 - 1, g));
    P.div(g);
  }
  for (int i = 0; i < k1; ++i) {
    P.mul(lin(a1 + a2, i - 1, g));
    P.div(lin(a1 + a2 + b2, i + k2 - 2, g));
    P.mul(lin(a2 + b2, i + k2 - k1 - 1, g));
    P.div(lin(a2, i + k2 - k1, g));
  }
  return P.value;
}

// ---- integrand ----

namespace {

struct Resolved {
  BigReal a1, a2, b1, b2, g;
};

Resolved resolve(const SelbergParams& p) {
  Resolved r;
  r.a1 = BigReal::parse(p.alpha1);
  r.a2 = BigReal::parse(p.alpha2);
  r.g = BigReal::parse(p.gamma);
  BigReal one(1L);
  if (!p.beta2.empty()) {
    r.b2 = BigReal::parse(p.beta2);
    r.b1 = r.g + one - r.b2;
    if (!p.beta1.empty() && rel_diff(r.b1, BigReal::parse(p.beta1)) > BigReal(1e-30))
      throw std::invalid_argument("beta1 + beta2 must equal gamma + 1");
  } else {
    r.b1 = BigReal::parse(p.beta1);
    r.b2 = r.g + one - r.b1;
  }
  return r;
}

struct CellData {
  int K = 0;
  std::vector<double> am1, bm1;
  std::vector<std::vector<double>> e;
  std::vector<int> fam;
  std::unique_ptr<JackNum> jx, jy;
  int nx = 0, ny = 0;
};

}  // namespace

CellIntegrand cell_integrand(const std::string& order, const SelbergParams& p) {
  Resolved r = resolve(p);
  auto d = std::make_shared<CellData>();
  const int K = static_cast<int>(order.size());
  d->K = K;
  const double g = r.g.to_double();
  for (char c : order) {
    bool x = c == 'x';
    d->fam.push_back(x ? 0 : 1);
    d->am1.push_back((x ? r.a1 : r.a2).to_double() - 1);
    d->bm1.push_back((x ? r.b1 : r.b2).to_double() - 1);
    (x ? d->nx : d->ny)++;
  }
  d->e.assign(K, std::vector<double>(K, 0));
  for (int a = 0; a < K; ++a)
    for (int b = a + 1; b < K; ++b) d->e[a][b] = d->fam[a] == d->fam[b] ? 2 * g : -g;
  BigReal alpha = BigReal(1L) / r.g;
  if (!p.lambda.empty()) d->jx = std::make_unique<JackNum>(p.lambda, d->nx, alpha);
  if (!p.mu.empty()) d->jy = std::make_unique<JackNum>(p.mu, d->ny, alpha);

  CellIntegrand out;
  out.shape.dim = K;
  for (int l = 0; l < K; ++l) {
    double a0 = l;
    for (int a = 0; a <= l; ++a) {
      a0 += d->am1[a];
      for (int b = a + 1; b <= l; ++b) a0 += d->e[a][b];
    }
    out.shape.a0.push_back(a0);
    out.shape.a1.push_back(l + 1 < K ? d->e[l][l + 1] : d->bm1[K - 1]);
  }
  out.f = [d](const double* u, const double* v) {
    const int K = d->K;
    double Lu[16] = {}, S[17] = {}, z[16] = {}, X[16] = {}, Y[16] = {};
    for (int l = 0; l < K; ++l) Lu[l] = u[l] < 0.5 ? std::log(u[l]) : std::log1p(-v[l]);
    S[K] = 0;
    for (int l = K - 1; l >= 0; --l) S[l] = S[l + 1] + Lu[l];
    double logF = 0;
    for (int l = 0; l < K; ++l) logF += l * Lu[l];
    for (int a = 0; a < K; ++a) {
      logF += d->am1[a] * S[a];
      if (d->bm1[a] != 0) logF += d->bm1[a] * (a == K - 1 ? std::log(v[a]) : std::log(-std::expm1(S[a])));
      double inner = 0;
      for (int b = a + 1; b < K; ++b) {
        inner += Lu[b - 1];
        double gap = b == a + 1 ? v[a] : -std::expm1(inner);
        logF += d->e[a][b] * (S[b] + std::log(gap));
      }
    }
    double F = std::exp(logF);
    if (d->jx || d->jy) {
      int ix = 0, iy = 0;
      for (int a = 0; a < K; ++a) {
        z[a] = std::exp(S[a]);
        (d->fam[a] == 0 ? X[ix++] : Y[iy++]) = z[a];
      }
      if (d->jx) F *= (*d->jx)(X);
      if (d->jy) F *= (*d->jy)(Y);
    }
    return F;
  };
  if (K > 16) throw std::invalid_argument("too many integration variables");
  return out;
}

// ---- checks ----

namespace {

json selberg_params_json(const SelbergParams& p, const Resolved& r) {
  return json{{"k1", p.k1},
              {"k2", p.k2},
              {"alpha1", p.alpha1},
              {"alpha2", p.alpha2},
              {"beta1", num(r.b1)},
              {"beta2", num(r.b2)},
              {"gamma", p.gamma},
              {"lambda", p.lambda.parts()},
              {"mu", p.mu.parts()}};
}

Report skipped(Report r, const std::string& why) {
  r.status = "skipped";
  r.info["diagnostic"] = why;
  return r;
}

}  // namespace

Report check_thm31(const SelbergParams& p, const SelbergOptions& opt) {
  PrecisionScope ps(opt.precision);
  Stopwatch sw;
  Resolved r = resolve(p);
  Report rep;
  rep.id = "selberg";
  rep.params = selberg_params_json(p, r);
  rep.params["method"] = opt.method;
  if (opt.method == "mc") {
    rep.params["samples"] = opt.samples;
    rep.params["seed"] = opt.seed;
  } else if (opt.method == "quad") {
    rep.params["order"] = opt.quad_order;
  } else {
    throw std::invalid_argument("unknown integration method " + opt.method);
  }
  if (p.lambda.length() > p.k1 || p.mu.length() > p.k2)
    throw std::invalid_argument("partition longer than its variable set");
  if (opt.method == "quad" && p.k1 + p.k2 > 3) throw std::invalid_argument("quadrature is limited to k1 + k2 <= 3");
  BigReal zero(0L);
  if ((p.k1 > 0 && (r.a1 + BigReal(static_cast<long>(p.lambda[p.k1])) <= zero || r.b1 <= zero)) ||
      (p.k2 > 0 && (r.a2 + BigReal(static_cast<long>(p.mu[p.k2])) <= zero || r.b2 <= zero)))
    throw std::invalid_argument("parameters outside the region of convergence");

  std::vector<WeightedDomain> chain;
  BigReal rhs;
  try {
    chain = enumerate_chain(p.k1, p.k2, r.b1, r.g);
    rhs = selberg_rhs(p.k1, p.k2, r.a1, r.a2, r.b1, r.b2, r.g, p.lambda, p.mu);
  } catch (const ChainError& e) {
    return skipped(rep, e.what());
  } catch (const std::domain_error& e) {
    return skipped(rep, e.what());
  }

  long live = std::count_if(chain.begin(), chain.end(), [](const WeightedDomain& d) { return !d.weight.is_zero(); });
  BigReal lhs(0L), var(0L), scale(0L);
  json domains = json::array();
  std::uint64_t stream = 0;
  for (const auto& d : chain) {
    json row{{"seq", seq_json(d.seq)}, {"order", d.order}, {"weight", num(d.weight)}};
    ++stream;
    if (d.weight.is_zero()) {
      row["value"] = 0;
      row["error"] = 0;
      domains.push_back(row);
      continue;
    }
    CellIntegrand cell = cell_integrand(d.order, p);
    Estimate est;
    if (opt.method == "mc") {
      McOptions mo{opt.samples / live, opt.seed, stream, opt.workers};
      est = cube_monte_carlo(cell.f, cell.shape, mo);
      row["strata"] = est.strata;
    } else {
      est = cube_quadrature(cell.f, cell.shape, opt.quad_order);
    }
    row["value"] = est.value;
    row["error"] = est.error;
    row["evals"] = est.evals;
    lhs += d.weight * BigReal(est.value);
    BigReal we = d.weight * BigReal(est.error);
    var += we * we;
    scale += abs(d.weight * BigReal(est.value));
    domains.push_back(row);
  }
  BigReal err = sqrt(var);
  if (opt.method == "quad") {
    // Double-precision rounding floor for rules that are exact on the cell.
    BigReal floor = scale * BigReal(64 * 0x1p-52);
    if (err < floor) {
      err = floor;
      rep.info["error_floor"] = true;
    }
  }
  BigReal diff = abs(lhs - rhs);
  rep.info["lhs"] = num(lhs);
  rep.info["rhs"] = num(rhs);
  rep.info["error"] = num(err);
  rep.info["abs_diff"] = num(diff);
  rep.info["rel_diff"] = num(rel_diff(lhs, rhs));
  rep.info["sigmas"] = err.is_zero() ? 0.0 : (diff / err).to_double();
  rep.info["safety"] = opt.safety;
  rep.info["precision"] = opt.precision;
  rep.info["domains"] = domains;
  bool ok = diff <= BigReal(opt.safety) * err;

  // At beta1 = 1 the chain and the right side are the Tarasov-Varchenko ones.
  if (p.lambda.empty() && p.mu.empty() && r.b1 == BigReal(1L) && p.k1 <= p.k2) {
    BigReal tv = tv_rhs(p.k1, p.k2, r.a1, r.a2, r.b2, r.g);
    auto tvc = chain_tv(p.k1, p.k2, r.g);
    std::map<std::string, BigReal> nz;
    for (const auto& d : chain)
      if (!d.weight.is_zero()) nz.emplace(d.order, d.weight);
    bool match = nz.size() == tvc.size();
    for (const auto& d : tvc) {
      auto it = nz.find(d.order);
      match = match && it != nz.end() && rel_diff(it->second, d.weight) <= BigReal(1e-25);
    }
    BigReal rd = rel_diff(tv, rhs);
    rep.info["overlap"] = {{"tv_rhs", num(tv)}, {"rhs_rel_diff", num(rd)}, {"chain_match", match}};
    ok = ok && match && rd <= BigReal(1e-25);
  }
  rep.status = ok ? "pass" : "fail";
  if (!ok) rep.witness = {{"lhs", num(lhs)}, {"rhs", num(rhs)}, {"error", num(err)}};
  rep.millis = sw.millis();
  return rep;
}

Report check_chain_forms(int k1, int k2, const std::string& beta_s, const std::string& gamma_s) {
  Stopwatch sw;
  Report rep;
  rep.id = "chain_forms";
  rep.params = {{"k1", k1}, {"k2", k2}, {"beta", beta_s}, {"gamma", gamma_s}};
  BigReal beta = BigReal::parse(beta_s), g = BigReal::parse(gamma_s);
  std::vector<WeightedDomain> A, B;
  try {
    A = enumerate_chain(k1, k2, beta, g);
    B = chain_b_form(k1, k2, beta, g);
  } catch (const ChainError& e) {
    return skipped(rep, e.what());
  }
  Checker c;
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), k1 + k2, k1);
  c.that([&] { return json{{"count", A.size()}}; }, A.size() == binom.get_ui() && B.size() == A.size(),
         "domain count is binom(k1+k2, k1)");
  std::map<std::string, const WeightedDomain*> by_order;
  for (const auto& d : B) by_order.emplace(d.order, &d);
  c.that([&] { return json{{"distinct_b", by_order.size()}}; }, by_order.size() == B.size(), "b orderings distinct");
  BigReal worst(0L);
  std::map<std::string, int> seen;
  for (const auto& d : A) {
    json where = {{"a", d.seq}, {"order", d.order}};
    c.that([&] { return where; }, ++seen[d.order] == 1, "ordering appears once");
    c.that([&] { return where; },
           std::count(d.order.begin(), d.order.end(), 'x') == k1 && static_cast<int>(d.order.size()) == k1 + k2,
           "ordering has k1 x's and k2 y's");
    auto it = by_order.find(d.order);
    if (!c.that([&] { return where; }, it != by_order.end(), "ordering present in the b form")) continue;
    const auto& b = it->second->seq;
    for (int i = 1; i <= k1; ++i) {
      long conj = std::count_if(b.begin(), b.end(), [&](int bj) { return bj >= i; });
      c.that([&] { return where; }, conj == k2 - d.seq[i - 1], "conjugate-complement bijection");
    }
    BigReal rd = rel_diff(d.weight, it->second->weight);
    worst = max(worst, rd);
    c.that([&] { return json{{"a", d.seq}, {"a_weight", num(d.weight)}, {"b_weight", num(it->second->weight)}}; },
           rd <= BigReal(1e-25), "weights agree");
  }
  rep.info["domains"] = A.size();
  rep.info["max_rel_diff"] = num(worst);
  return finish(rep, c, sw);
}

Report check_chainid(int k1, int k2, const std::string& gamma_s) {
  Stopwatch sw;
  Report rep;
  rep.id = "chainid";
  rep.params = {{"k1", k1}, {"k2", k2}, {"gamma", gamma_s}};
  BigReal g = BigReal::parse(gamma_s);
  std::vector<WeightedDomain> A, T;
  if (k1 > k2) return skipped(rep, "the beta = 1 chain has a vanishing denominator when k1 > k2");
  try {
    A = enumerate_chain(k1, k2, BigReal(1L), g);
    T = chain_tv(k1, k2, g);
  } catch (const ChainError& e) {
    return skipped(rep, e.what());
  }
  Checker c;
  std::map<std::string, const WeightedDomain*> tv;
  for (const auto& d : T) tv.emplace(d.order, &d);
  long dropped = 0;
  for (const auto& d : A) {
    bool below = true;
    for (int i = 1; i <= k1; ++i) below = below && d.seq[i - 1] < i - k1 + k2;
    json where = {{"a", d.seq}, {"order", d.order}};
    c.that([&] { return where; }, d.weight.is_zero() == !below, "zero weight exactly when some a_i >= i-k1+k2");
    if (d.weight.is_zero()) {
      ++dropped;
      c.that([&] { return where; }, !tv.count(d.order), "dropped domain absent from the TV chain");
      continue;
    }
    auto it = tv.find(d.order);
    if (!c.that([&] { return where; }, it != tv.end(), "domain present in the TV chain")) continue;
    c.that([&] { return json{{"a", d.seq}, {"weight", num(d.weight)}, {"tv_weight", num(it->second->weight)}}; },
           rel_diff(d.weight, it->second->weight) <= BigReal(1e-25), "weights agree");
  }
  c.that([&] { return json{{"tv", T.size()}, {"kept", A.size() - dropped}}; },
         static_cast<long>(T.size()) == static_cast<long>(A.size()) - dropped, "same number of domains");
  rep.info["domains"] = A.size();
  rep.info["dropped"] = dropped;
  return finish(rep, c, sw);
}

Report check_cc_symmetry(int k1, int k2, const std::string& beta1_s, const std::string& gamma_s) {
  Stopwatch sw;
  Report rep;
  rep.id = "ccsymm";
  rep.params = {{"k1", k1}, {"k2", k2}, {"beta1", beta1_s}, {"gamma", gamma_s}};
  BigReal b1 = BigReal::parse(beta1_s), g = BigReal::parse(gamma_s);
  BigReal b2 = g + BigReal(1L) - b1;
  std::vector<WeightedDomain> C1, C2;
  BigReal G(1L);
  try {
    C1 = enumerate_chain(k1, k2, b1, g);
    C2 = enumerate_chain(k2, k1, b2, g);
    GammaProduct P;
    for (int i = 0; i < k1; ++i) {
      P.value *= gamma(lin(b1, i, g));
      P.value /= gamma(lin(b1, i - k2, g));
    }
    for (int i = 0; i < k2; ++i) {
      P.value *= gamma(lin(b2, i - k1, g));
      P.value /= gamma(lin(b2, i, g));
    }
    G = P.value;
  } catch (const ChainError& e) {
    return skipped(rep, e.what());
  }
  Checker c;
  std::map<std::string, const WeightedDomain*> swapped;
  for (const auto& d : C2) swapped.emplace(swap_labels(d.order), &d);
  BigReal worst(0L);
  for (const auto& d : C1) {
    auto it = swapped.find(d.order);
    if (!c.that([&] { return json{{"order", d.order}}; }, it != swapped.end(), "label swap is a bijection")) continue;
    BigReal rd = rel_diff(it->second->weight, d.weight * G);
    worst = max(worst, rd);
    c.that([&] { return json{{"order", d.order}, {"lhs", num(it->second->weight)}, {"rhs", num(d.weight * G)}}; },
           rd <= BigReal(1e-25), "swapped weight equals scaled weight");
  }
  // The alpha1+alpha2 block of the right side is symmetric in (k1, k2).
  std::mt19937_64 rng(20240);
  json alpha_block = json::array();
  for (int trial = 0; trial < 3; ++trial) {
    BigReal A(2.0 + 3.0 * static_cast<double>(rng() >> 11) * 0x1p-53);
    BigReal L(1L), R(1L);
    for (int i = 0; i < k1; ++i) L *= gamma(lin(A, i - 1, g)) / gamma(lin(A, i + k2 - 1, g));
    for (int i = 0; i < k2; ++i) R *= gamma(lin(A, i - 1, g)) / gamma(lin(A, i + k1 - 1, g));
    BigReal rd = rel_diff(L, R);
    alpha_block.push_back({{"alpha1_plus_alpha2", num(A)}, {"rel_diff", num(rd)}});
    c.that([&] { return json{{"alpha1_plus_alpha2", num(A)}}; }, rd <= BigReal(1e-25), "alpha block symmetric");
  }
  rep.info["scale"] = num(G);
  rep.info["max_rel_diff"] = num(worst);
  rep.info["alpha_block"] = alpha_block;
  return finish(rep, c, sw);
}

Report check_sin_limit(const std::string& beta1_s, const std::string& gamma_s, int k1, int k2, int i, int j,
                       const std::string& x_s, const std::string& y_s) {
  Stopwatch sw;
  Report rep;
  rep.id = "sin_limit";
  rep.params = {{"beta1", beta1_s}, {"gamma", gamma_s}, {"k1", k1}, {"k2", k2},
                {"i", i},           {"j", j},           {"x", x_s},  {"y", y_s}};
  BigReal b1 = BigReal::parse(beta1_s), g = BigReal::parse(gamma_s);
  const BigReal x0 = BigReal::parse(x_s), y0 = BigReal::parse(y_s);
  json rows = json::array();
  std::vector<BigReal> errs;
  for (const char* q_text : {"0.99", "0.999", "0.9999"}) {
    QContext ctx = QContext::make(q_text, 128);
    PrecisionScope ps(ctx.precision);
    // Off the q-lattice the product oscillates as q -> 1, so x and y are moved
    // to the nearest powers of q, as in the lattice sums being approximated.
    BigReal lq = log(ctx.q);
    BigReal x = pow(ctx.q, (log(x0) / lq).round_to_long());
    BigReal y = pow(ctx.q, (log(y0) / lq).round_to_long());
    BigReal target = pow(abs(x - y), -g);
    if (x > y) {
      long m = i - j - k1 + k2;
      target *= sin_pi(lin(b1, -m, g)) / sin_pi(lin(b1, -(m + 1), g));
    }
    BigReal c = pow(ctx.q, lin(b1, k1 - k2 + j - i, g));
    BigReal val = pow(y, -g) * qpoch_real(c * x / y, -g, ctx);
    BigReal err = rel_diff(val, target);
    errs.push_back(err);
    rows.push_back({{"q", q_text}, {"x", num(x)}, {"y", num(y)}, {"value", num(val)}, {"target", num(target)},
                    {"rel_err", num(err)}});
  }
  Checker ch;
  for (std::size_t k = 1; k < errs.size(); ++k)
    ch.that([&] { return json{{"step", k}}; }, errs[k] < errs[k - 1] || errs[k] <= BigReal(1e-25),
            "error decreases as q -> 1");
  ch.that([&] { return json{{"last_rel_err", num(errs.back())}}; }, errs.back() < BigReal(1e-2),
          "limit reached to 1e-2 at q = 0.9999");
  rep.info["steps"] = rows;
  return finish(rep, ch, sw);
}

std::string domains_csv(const Report& r) {
  std::ostringstream os;
  os << "seq,order,weight,value,error\n";
  if (!r.info.contains("domains")) return os.str();
  for (const auto& d : r.info["domains"]) {
    std::string seq;
    for (const auto& v : d["seq"]) seq += (seq.empty() ? "" : " ") + std::to_string(v.get<int>());
    os << seq << ',' << d["order"].get<std::string>() << ',' << d["weight"].get<std::string>() << ','
       << d["value"].dump() << ',' << d["error"].dump() << '\n';
  }
  return os.str();
}

std::vector<Job> selberg_jobs(const SelbergOptions& opt) {
  std::vector<Job> jobs;
  auto integral = [&](SelbergParams p, const std::string& method) {
    SelbergOptions o = opt;
    o.method = method;
    if (method != "mc") o.workers = 1;
    jobs.push_back({"selberg", json{{"k1", p.k1}, {"k2", p.k2}}, [p, o] { return check_thm31(p, o); }});
  };
  SelbergParams s;
  s.k1 = 0, s.k2 = 2, s.alpha2 = "2", s.beta2 = "2", s.beta1 = "", s.gamma = "1/2";
  integral(s, "quad");
  s = {};
  s.k1 = 0, s.k2 = 1, s.alpha2 = "2", s.beta2 = "2", s.beta1 = "", s.gamma = "1/4";
  integral(s, "quad");
  s = {};
  s.k1 = 1, s.k2 = 0, s.alpha1 = "2", s.beta1 = "3/2", s.gamma = "1/4", s.lambda = Partition{1};
  integral(s, "quad");
  s = {};
  s.k1 = 1, s.k2 = 1, s.alpha1 = "2", s.alpha2 = "2", s.beta1 = "1", s.gamma = "1/4";
  integral(s, "mc");
  s.beta1 = "0.7", s.gamma = "0.2";
  integral(s, "mc");
  s = {};
  s.k1 = 1, s.k2 = 2, s.alpha1 = "2", s.alpha2 = "2", s.beta1 = "0.6", s.gamma = "0.15";
  integral(s, "mc");
  s = {};
  s.k1 = 1, s.k2 = 1, s.alpha1 = "2", s.alpha2 = "2", s.beta1 = "0.7", s.gamma = "0.2", s.lambda = Partition{1};
  integral(s, "mc");
  for (int k1 = 0; k1 <= 4; ++k1)
    for (int k2 = 0; k2 <= 4; ++k2) {
      jobs.push_back({"chain_forms", json{{"k1", k1}, {"k2", k2}},
                      [k1, k2] { return check_chain_forms(k1, k2, "0.55", "0.13"); }});
      if (k1 <= k2)
        jobs.push_back({"chainid", json{{"k1", k1}, {"k2", k2}}, [k1, k2] { return check_chainid(k1, k2, "0.13"); }});
      jobs.push_back({"ccsymm", json{{"k1", k1}, {"k2", k2}},
                      [k1, k2] { return check_cc_symmetry(k1, k2, "0.55", "0.13"); }});
    }
  jobs.push_back({"ccsymm", json{{"k1", 1}, {"k2", 2}}, [] { return check_cc_symmetry(1, 2, "0.6", "0.15"); }});
  jobs.push_back({"sin_limit", json::object(), [] { return check_sin_limit("0.8", "0.1", 1, 1, 1, 1, "0.6", "0.3"); }});
  jobs.push_back({"sin_limit", json::object(), [] { return check_sin_limit("0.8", "0.1", 1, 1, 1, 1, "0.3", "0.6"); }});
  return jobs;
}

}  // namespace macsel
