#include "macsel/qnum.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "macsel/symfunc.hpp"

namespace macsel {

QContext QContext::make(const std::string& q, mpfr_prec_t precision) {
  QContext c;
  PrecisionScope ps(precision);
  c.q_text = q;
  c.precision = precision;
  c.q = BigReal::parse(q);
  if (c.q <= BigReal(0L) || c.q >= BigReal(1L)) throw std::invalid_argument("q must lie in (0,1)");
  return c;
}

namespace {

bool is_integer(const BigReal& x) { return mpfr_integer_p(x.get()); }

BigReal qpow_int(const QContext& ctx, long e) { return pow(ctx.q, e); }

long binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

json num(const BigReal& x) { return x.str(25); }

json context_info(const QContext& ctx) {
  return {{"q", ctx.q_text}, {"precision", ctx.precision}, {"tail_tol", ctx.tail_tol}, {"tol", ctx.check_tol}};
}

}  // namespace

BigReal qpoch_num(const BigReal& b, const QContext& ctx, long N) {
  BigReal r(1L);
  if (N >= 0) {
    BigReal qi(1L);
    for (long i = 0; i < N; ++i, qi *= ctx.q) r *= BigReal(1L) - b * qi;
    return r;
  }
  BigReal qi = ctx.q;
  BigReal denom(1L);
  for (long l = 1; l <= -N; ++l, qi *= ctx.q) denom *= BigReal(1L) - b / qi;
  if (denom.is_zero()) throw QPole("(b)_N with negative N hits a zero factor");
  return r / denom;
}

QValue qpoch_inf(const BigReal& b, const QContext& ctx) {
  // Stop once |b| q^K/((1-q)(1-|b|q^K)) falls below 2^-precision.
  BigReal eps = pow(BigReal(2L), -static_cast<long>(ctx.precision));
  BigReal one(1L), ab = abs(b), omq = one - ctx.q;
  BigReal r(1L), bq = b;
  int K = 0;
  for (;; ++K, bq *= ctx.q) {
    BigReal m = abs(bq);
    if (m < BigReal(0.5)) {
      BigReal bound = m / (omq * (one - m));
      if (bound < eps) return {r, bound, K};
    }
    if (K > 10000000) throw std::runtime_error("infinite q-product does not converge");
    r *= one - bq;
  }
}

BigReal qpoch_real(const BigReal& b, const BigReal& z, const QContext& ctx) {
  if (is_integer(z) && abs(z) < BigReal(1e6)) return qpoch_num(b, ctx, z.round_to_long());
  BigReal den = qpoch_inf(b * pow(ctx.q, z), ctx).value;
  if (den.is_zero()) throw QPole("(b)_z denominator vanishes");
  return qpoch_inf(b, ctx).value / den;
}

double pole_distance(const BigReal& x) {
  if (x > BigReal(0.5)) return 1e9;
  BigReal r(x);
  mpfr_round(r.get(), x.get());
  return abs(x - r).to_double();
}

BigReal qgamma(const BigReal& x, const QContext& ctx) {
  double thr = std::ldexp(1.0, -static_cast<int>(ctx.precision / 2));
  if (pole_distance(x) < thr) throw QPole("q-Gamma pole at " + x.str(12));
  BigReal one(1L), omq = one - ctx.q;
  if (is_integer(x) && x < BigReal(1e6)) {
    long n = x.round_to_long();
    return qpoch_num(ctx.q, ctx, n - 1) / pow(omq, n - 1);
  }
  return qpoch_inf(ctx.q, ctx).value / qpoch_inf(pow(ctx.q, x), ctx).value * pow(omq, one - x);
}

// ---- lattice sums ----

QIntResult qint_multi(const LatticeFn& f, int n, const QContext& ctx) {
  PrecisionScope ps(ctx.precision);
  QIntResult res;
  if (n == 0) {
    if (f.prepare) f.prepare(0);
    std::vector<int> none(1, 0);
    res.value = f.eval(none.data());
    res.tail = BigReal(0L);
    res.rate = BigReal(0L);
    res.converged = true;
    return res;
  }
  std::vector<BigReal> qpow{BigReal(1L)};
  BigReal sum(0L);
  std::vector<BigReal> shell_abs;
  BigReal tol(ctx.tail_tol);
  const int min_shells = 4;
  constexpr std::size_t kChunk = 2048;

  for (int s = 0; s < ctx.max_shells; ++s) {
    if (f.prepare) f.prepare(s);
    while (static_cast<int>(qpow.size()) <= n * s) qpow.push_back(qpow.back() * ctx.q);
    // Points with max coordinate s, grouped by the first coordinate equal to s.
    std::vector<int> pts;
    std::vector<int> cur(n);
    for (int j = 0; j < n; ++j) {
      std::vector<int> hi(n);
      for (int i = 0; i < n; ++i) hi[i] = i < j ? s - 1 : s;
      if (j > 0 && s == 0) continue;
      for (int i = 0; i < n; ++i) cur[i] = i == j ? s : 0;
      for (;;) {
        pts.insert(pts.end(), cur.begin(), cur.end());
        int i = n - 1;
        for (; i >= 0; --i) {
          if (i == j) continue;
          if (cur[i] < hi[i]) {
            ++cur[i];
            break;
          }
          cur[i] = 0;
        }
        if (i < 0) break;
      }
    }
    std::size_t npts = pts.size() / n;
    std::size_t nchunks = (npts + kChunk - 1) / kChunk;
    std::vector<BigReal> csum(nchunks), cabs(nchunks);
    auto do_chunk = [&](std::size_t c) {
      BigReal acc(0L), aacc(0L);
      for (std::size_t p = c * kChunk; p < std::min(npts, (c + 1) * kChunk); ++p) {
        const int* k = &pts[p * n];
        BigReal v = f.eval(k);
        if (v.is_zero()) continue;
        int tot = 0;
        for (int i = 0; i < n; ++i) tot += k[i];
        v *= qpow[tot];
        acc += v;
        aacc += abs(v);
      }
      csum[c] = acc;
      cabs[c] = aacc;
    };
    int workers = std::min<int>(ctx.workers, static_cast<int>(nchunks));
    if (workers <= 1) {
      for (std::size_t c = 0; c < nchunks; ++c) do_chunk(c);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
          PrecisionScope inner(ctx.precision);
          for (std::size_t c = next++; c < nchunks; c = next++) do_chunk(c);
        });
      for (auto& th : pool) th.join();
    }
    BigReal ssum(0L), sabs(0L);
    for (std::size_t c = 0; c < nchunks; ++c) {
      ssum += csum[c];
      sabs += cabs[c];
    }
    sum += ssum;
    shell_abs.push_back(sabs);
    res.points += static_cast<long>(npts);
    res.K = s + 1;

    // Decay rate from the last three ratios of nonzero shells.
    int m = static_cast<int>(shell_abs.size());
    if (m < min_shells + 1) continue;
    bool usable = true;
    BigReal rho(0L);
    for (int t = m - 3; t < m; ++t) {
      if (shell_abs[t - 1].is_zero()) {
        usable = false;
        break;
      }
      rho = max(rho, shell_abs[t] / shell_abs[t - 1]);
    }
    if (!usable) continue;
    res.rate = rho;
    if (rho >= BigReal(1L)) {
      if (s >= 48) break;
      continue;
    }
    BigReal tail = shell_abs.back() * rho / (BigReal(1L) - rho);
    BigReal scale = sum.is_zero() ? BigReal(1L) : abs(sum);
    if (tail <= tol * scale) {
      res.tail = tail;
      res.converged = true;
      break;
    }
    res.tail = tail;
  }
  BigReal norm = pow(BigReal(1L) - ctx.q, static_cast<long>(n));
  res.value = sum * norm;
  res.tail = res.tail * norm;
  return res;
}

// ---- numeric Macdonald polynomials ----

MacdonaldNum::MacdonaldNum(const Partition& lambda, int n, int k, const QContext& ctx) : n_(n), total_(lambda.size()) {
  PrecisionScope ps(ctx.precision);
  if (lambda.length() > n) throw std::invalid_argument("partition longer than the number of variables");
  const SymSeries& P = macdonald_basis().P(lambda);
  BigReal t = pow(ctx.q, static_cast<long>(k));
  std::array<BigReal, kNumVars> pt;
  pt[kQ] = ctx.q;
  pt[kT] = t;
  auto conv = [](const mpz_class& z) { return BigReal(z); };
  for (const auto& [mu, c] : P.coeffs()) {
    if (mu.length() > n) continue;
    BigReal cv = eval_ratfunc(c, pt, conv);
    for (auto& perm : distinct_permutations(mu.padded(n))) terms_.push_back({perm, cv});
  }
  // Divide by the value at <0>_n = (t^{n-1}, ..., 1).
  std::vector<BigReal> base;
  for (int i = 1; i <= n; ++i) base.push_back(pow(t, static_cast<long>(n - i)));
  BigReal norm = (*this)(base);
  if (norm.is_zero()) throw std::runtime_error("vanishing principal value");
  for (auto& term : terms_) term.c /= norm;
}

BigReal MacdonaldNum::operator()(const std::vector<BigReal>& x) const {
  BigReal acc(0L);
  for (auto& term : terms_) {
    BigReal v = term.c;
    for (int i = 0; i < n_; ++i)
      if (term.e[i]) v *= pow(x[i], static_cast<long>(term.e[i]));
    acc += v;
  }
  return acc;
}

BigReal MacdonaldNum::at_lattice(const int* a, const std::vector<BigReal>& qpow) const {
  BigReal acc(0L);
  for (auto& term : terms_) {
    long e = 0;
    for (int i = 0; i < n_; ++i) e += static_cast<long>(term.e[i]) * a[i];
    acc += term.c * qpow[e];
  }
  return acc;
}

BigReal eval_macdonald_num(const Partition& lambda, int n, int k, const std::vector<BigReal>& x, const QContext& ctx) {
  return MacdonaldNum(lambda, n, k, ctx)(x);
}

// ---- integrand tables ----

namespace {

// Integer powers of q, grown on demand.
struct PowTable {
  const QContext* ctx;
  std::vector<BigReal> v{BigReal(1L)};
  void grow(int upto) {
    while (static_cast<int>(v.size()) <= upto) v.push_back(v.back() * ctx->q);
  }
};

// q^{a c} for real c and a = 0, 1, ...
struct ExpTable {
  BigReal step;
  std::vector<BigReal> v{BigReal(1L)};
  ExpTable(const QContext& ctx, const BigReal& c) : step(pow(ctx.q, c)) {}
  void grow(int upto) {
    while (static_cast<int>(v.size()) <= upto) v.push_back(v.back() * step);
  }
};

// (q^{a+u})_v at a = 0, 1, ...; finite products when v is a nonnegative integer.
struct PochTable {
  const QContext* ctx;
  BigReal u, z;
  bool finite;
  std::vector<BigReal> v;
  PochTable(const QContext& c, BigReal u_, BigReal z_) : ctx(&c), u(std::move(u_)), z(std::move(z_)) {
    finite = is_integer(z) && z >= BigReal(0L);
  }
  BigReal direct(int a) const {
    if (finite) {
      BigReal r(1L);
      long N = z.round_to_long();
      for (long l = 0; l < N; ++l) {
        BigReal e = u + BigReal(static_cast<long>(a) + l);
        if (e.is_zero()) return BigReal(0L);
        r *= BigReal(1L) - pow(ctx->q, e);
      }
      return r;
    }
    return qpoch_real(pow(ctx->q, u + BigReal(static_cast<long>(a))), z, *ctx);
  }
  void grow(int upto) {
    while (static_cast<int>(v.size()) <= upto) {
      int a = static_cast<int>(v.size());
      if (finite || a == 0) {
        v.push_back(direct(a));
        continue;
      }
      // (q^{a+u})_z = (q^{a-1+u})_z (1 - q^{a-1+u+z}) / (1 - q^{a-1+u})
      BigReal e0 = u + BigReal(static_cast<long>(a - 1));
      BigReal d = BigReal(1L) - pow(ctx->q, e0);
      if (d.is_zero()) {
        v.push_back(direct(a));
        continue;
      }
      v.push_back(v.back() * (BigReal(1L) - pow(ctx->q, e0 + z)) / d);
    }
  }
};

// g(d) for d in [-s, s], stored at offset.
struct DiffTable {
  std::function<BigReal(int)> g;
  std::vector<BigReal> v;
  int s = -1;
  void grow(int upto) {
    if (upto <= s) return;
    std::vector<BigReal> nv(2 * upto + 1);
    for (int d = -upto; d <= upto; ++d)
      nv[d + upto] = (d >= -s && d <= s) ? v[d + s] : g(d);
    v = std::move(nv);
    s = upto;
  }
  const BigReal& operator()(int d) const { return v[d + s]; }
};

// (q^{c})_{2k}-type pair factor: prod_{l=0}^{2k-1} (1 - q^{1-k+d+l}), exact zeros kept.
DiffTable pair_table(const QContext& ctx, int k) {
  DiffTable t;
  t.g = [&ctx, k](int d) {
    BigReal r(1L);
    for (int l = 0; l < 2 * k; ++l) {
      long e = 1 - k + d + l;
      if (e == 0) return BigReal(0L);
      r *= BigReal(1L) - qpow_int(ctx, e);
    }
    return r;
  };
  return t;
}

Partition parse_check(const Partition& p, int n) {
  if (p.length() > n) throw std::invalid_argument("partition " + p.to_string() + " longer than " + std::to_string(n));
  return p;
}

Report numeric_report(std::string id, json params, const QContext& ctx) {
  Report r;
  r.id = std::move(id);
  r.params = std::move(params);
  r.info = context_info(ctx);
  return r;
}

void record_integral(json& j, const QIntResult& I) {
  j["value"] = num(I.value);
  j["tail"] = num(I.tail);
  j["K"] = I.K;
  j["points"] = I.points;
  j["converged"] = I.converged;
}

// Compares lhs with rhs; sets status and witness.
void verdict(Report& r, const BigReal& lhs, const BigReal& rhs, const std::vector<const QIntResult*>& ints,
             const QContext& ctx) {
  BigReal rd = rel_diff(lhs, rhs);
  r.info["lhs"] = num(lhs);
  r.info["rhs"] = num(rhs);
  r.info["abs_diff"] = num(abs(lhs - rhs));
  r.info["rel_diff"] = num(rd);
  BigReal tail(0L);
  bool conv = true;
  for (auto* I : ints) {
    if (!I->converged) conv = false;
    BigReal sc = abs(I->value);
    if (!sc.is_zero()) tail = max(tail, I->tail / sc);
  }
  r.info["rel_tail"] = num(tail);
  bool ok = conv && rd <= BigReal(ctx.check_tol) && tail <= BigReal(ctx.check_tol);
  r.status = ok ? "pass" : "fail";
  if (!ok) {
    r.witness = {{"lhs", num(lhs)}, {"rhs", num(rhs)}, {"rel_diff", num(rd)}};
    if (!conv) r.witness["violated"] = "lattice sum did not converge";
  }
}

// Integrand of the Askey-Habsieger-Kadell / Kaneko-Macdonald type:
// phi(X) prod x_i^{alpha-1} (x_i q)_{beta-1} prod_{i<j} x_i^{2k} (q^{1-k} x_j/x_i)_{2k},
// optionally with extra per-variable factors.
struct KadellIntegrand {
  const QContext& ctx;
  int n, k;
  ExpTable xa;
  PochTable xb;
  DiffTable pair;
  PowTable qp;
  std::vector<PochTable> extra;  // each contributes 1/(x_i q^{u})_k
  std::optional<MacdonaldNum> phi;

  KadellIntegrand(const QContext& c, int n_, int k_, const BigReal& alpha, const BigReal& beta)
      : ctx(c), n(n_), k(k_), xa(c, alpha - BigReal(1L)), xb(c, BigReal(1L), beta - BigReal(1L)),
        pair(pair_table(c, k_)), qp{&c} {}

  LatticeFn fn() {
    LatticeFn f;
    f.prepare = [this](int s) {
      xa.grow(s);
      xb.grow(s);
      pair.grow(s);
      qp.grow(std::max(1, (phi ? phi->weight() : 0)) * s + 2 * k * s + 1);
      for (auto& e : extra) e.grow(s);
    };
    f.eval = [this](const int* a) {
      BigReal v(1L);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const BigReal& p = pair(a[j] - a[i]);
          if (p.is_zero()) return BigReal(0L);
          v *= p * qp.v[2 * k * a[i]];
        }
      for (int i = 0; i < n; ++i) {
        v *= xa.v[a[i]] * xb.v[a[i]];
        for (auto& e : extra) v /= e.v[a[i]];
      }
      if (phi && !phi->is_constant()) v *= phi->at_lattice(a, qp.v);
      return v;
    };
    return f;
  }
};

BigReal G(const BigReal& x, const QContext& ctx) { return qgamma(x, ctx); }
BigReal L(long v) { return BigReal(v); }

BigReal kadell_rhs(int n, int k, const BigReal& a, const BigReal& b, const std::vector<int>& lam, const QContext& ctx) {
  BigReal e = a * L(k * binom(n, 2)) + L(2L * k * k * binom(n, 3));
  BigReal r = pow(ctx.q, e);
  for (int i = 1; i <= n; ++i) {
    r *= G(a + L((n - i) * k + lam[i - 1]), ctx) * G(b + L((i - 1) * k), ctx) * G(L(i * k + 1), ctx);
    r /= G(a + b + L((2 * n - i - 1) * k + lam[i - 1]), ctx) * G(L(k + 1), ctx);
  }
  return r;
}

}  // namespace

Report check_qbeta(const std::string& alpha, const std::string& beta, const QContext& ctx) {
  Stopwatch sw;
  PrecisionScope ps(ctx.precision);
  Report r = numeric_report("qbeta", {{"alpha", alpha}, {"beta", beta}}, ctx);
  BigReal a = BigReal::parse(alpha), b = BigReal::parse(beta);
  KadellIntegrand ig(ctx, 1, 0, a, b);
  QIntResult I = qint_multi(ig.fn(), 1, ctx);
  BigReal rhs = G(a, ctx) * G(b, ctx) / G(a + b, ctx);
  record_integral(r.info["integral"], I);
  verdict(r, I.value, rhs, {&I}, ctx);
  r.millis = sw.millis();
  return r;
}

Report check_ahk(int n, int k, const std::string& alpha, const std::string& beta, const QContext& ctx) {
  Stopwatch sw;
  PrecisionScope ps(ctx.precision);
  Report r = numeric_report("ahk", {{"n", n}, {"k", k}, {"alpha", alpha}, {"beta", beta}}, ctx);
  BigReal a = BigReal::parse(alpha), b = BigReal::parse(beta);
  KadellIntegrand ig(ctx, n, k, a, b);
  QIntResult I = qint_multi(ig.fn(), n, ctx);
  BigReal e = a * L(k * binom(n, 2)) + L(2L * k * k * binom(n, 3));
  BigReal rhs = pow(ctx.q, e);
  for (int i = 0; i < n; ++i) {
    rhs *= G(a + L(i * k), ctx) * G(b + L(i * k), ctx) * G(L(1 + (i + 1) * k), ctx);
    rhs /= G(a + b + L((n + i - 1) * k), ctx) * G(L(1 + k), ctx);
  }
  record_integral(r.info["integral"], I);
  verdict(r, I.value, rhs, {&I}, ctx);
  r.millis = sw.millis();
  return r;
}

Report check_qkm(int n, int k, const std::string& alpha, const std::string& beta, const Partition& lambda,
                 const QContext& ctx) {
  Stopwatch sw;
  PrecisionScope ps(ctx.precision);
  Report r = numeric_report(
      "qkm", {{"n", n}, {"k", k}, {"alpha", alpha}, {"beta", beta}, {"lambda", json(parse_check(lambda, n).parts())}},
      ctx);
  BigReal a = BigReal::parse(alpha), b = BigReal::parse(beta);
  KadellIntegrand ig(ctx, n, k, a, b);
  ig.phi.emplace(lambda, n, k, ctx);
  QIntResult I = qint_multi(ig.fn(), n, ctx);
  BigReal rhs = kadell_rhs(n, k, a, b, lambda.padded(n), ctx);
  record_integral(r.info["integral"], I);
  verdict(r, I.value, rhs, {&I}, ctx);
  r.millis = sw.millis();
  return r;
}

namespace {

// S^{(n,m)}_{lambda mu}(alpha1, alpha2, beta; k).
QIntResult thm41_integral(int n, int m, int k, const BigReal& a1, const BigReal& a2, const BigReal& b,
                          const Partition& lam, const Partition& mu, const QContext& ctx) {
  KadellIntegrand ig(ctx, n, k, a1, b - L((n - 1) * k));
  if (n > 0) ig.phi.emplace(lam, n, k, ctx);
  auto mp = mu.padded(m);
  for (int j = 1; j <= m; ++j)
    ig.extra.emplace_back(ctx, a2 + b + L(mp[j - 1] + (m - n - j) * k), L(k));
  if (n == 0) {
    LatticeFn f;
    f.eval = [](const int*) { return BigReal(1L); };
    return qint_multi(f, 0, ctx);
  }
  return qint_multi(ig.fn(), n, ctx);
}

// The multiplier F with S^{(n,m)}_{lambda mu}(a1,a2,b) = F S^{(m,n)}_{mu lambda}(a2,a1,b).
BigReal thm41_factor(int n, int m, int k, const BigReal& a1, const BigReal& a2, const BigReal& b,
                     const std::vector<int>& lam, const std::vector<int>& mu, const QContext& ctx) {
  BigReal e = a1 * L(k * binom(n, 2)) - a2 * L(k * binom(m, 2)) + L(2L * k * k * (binom(n, 3) - binom(m, 3)));
  BigReal r = pow(ctx.q, e);
  for (int i = 1; i <= n; ++i) {
    r *= G(b - L((i - 1) * k), ctx) * G(a1 + L(lam[i - 1] + (n - i) * k), ctx) * G(L(i * k + 1), ctx);
    r /= G(a1 + b + L(lam[i - 1] + (n - m - i) * k), ctx) * G(L(k + 1), ctx);
  }
  for (int i = 1; i <= m; ++i) {
    r *= G(a2 + b + L(mu[i - 1] + (m - n - i) * k), ctx) * G(L(k + 1), ctx);
    r /= G(b - L((i - 1) * k), ctx) * G(a2 + L(mu[i - 1] + (m - i) * k), ctx) * G(L(i * k + 1), ctx);
  }
  return r;
}

}  // namespace

Report check_thm41(int n, int m, int k, const std::string& alpha1, const std::string& alpha2,
                   const std::string& beta, const Partition& lambda, const Partition& mu, const QContext& ctx) {
  Stopwatch sw;
  PrecisionScope ps(ctx.precision);
  Report r = numeric_report("thm41",
                            {{"n", n},
                             {"m", m},
                             {"k", k},
                             {"alpha1", alpha1},
                             {"alpha2", alpha2},
                             {"beta", beta},
                             {"lambda", json(parse_check(lambda, n).parts())},
                             {"mu", json(parse_check(mu, m).parts())}},
                            ctx);
  BigReal a1 = BigReal::parse(alpha1), a2 = BigReal::parse(alpha2), b = BigReal::parse(beta);
  auto lam = lambda.padded(n), mup = mu.padded(m);

  // Generic-beta conditions.
  std::vector<std::pair<std::string, BigReal>> guards{{"beta-(n-1)k", b - L((n - 1) * k)},
                                                      {"beta-(m-1)k", b - L((m - 1) * k)}};
  for (int j = 1; j <= n; ++j) guards.push_back({"alpha1+beta+lambda_j+(n-m-j)k", a1 + b + L(lam[j - 1] + (n - m - j) * k)});
  for (int j = 1; j <= m; ++j) guards.push_back({"alpha2+beta+mu_j+(m-n-j)k", a2 + b + L(mup[j - 1] + (m - n - j) * k)});
  for (auto& [what, v] : guards)
    if (pole_distance(v) < 1e-12) {
      r.status = "skipped";
      r.info["diagnostic"] = what + " is a nonpositive integer";
      r.millis = sw.millis();
      return r;
    }

  QIntResult S = thm41_integral(n, m, k, a1, a2, b, lambda, mu, ctx);
  QIntResult T = thm41_integral(m, n, k, a2, a1, b, mu, lambda, ctx);
  BigReal F = thm41_factor(n, m, k, a1, a2, b, lam, mup, ctx);
  BigReal Fs = thm41_factor(m, n, k, a2, a1, b, mup, lam, ctx);
  record_integral(r.info["S_nm"], S);
  record_integral(r.info["S_mn"], T);
  r.info["factor"] = num(F);
  r.info["swapped_factor"] = num(Fs);
  verdict(r, S.value, F * T.value, {&S, &T}, ctx);

  // The swapped statement must give the reciprocal multiplier.
  BigReal recip = rel_diff(F * Fs, BigReal(1L));
  r.info["swap_rel_diff"] = num(recip);
  if (r.passed() && recip > BigReal(ctx.check_tol)) {
    r.status = "fail";
    r.witness = {{"violated", "swap consistency F(n,m) F(m,n) = 1"}, {"rel_diff", num(recip)}};
  }

  if (m == 0) {
    // Against the Kaneko-Macdonald closed form with beta -> beta-(n-1)k.
    BigReal km = kadell_rhs(n, k, a1, b - L((n - 1) * k), lam, ctx);
    BigReal d = rel_diff(S.value, km);
    r.info["qkm_rel_diff"] = num(d);
    if (r.passed() && d > BigReal(ctx.check_tol)) {
      r.status = "fail";
      r.witness = {{"violated", "m=0 reduction to the Kaneko-Macdonald integral"}, {"rel_diff", num(d)}};
    }
  }
  r.millis = sw.millis();
  return r;
}

namespace {

struct Thm42Integrand {
  const QContext& ctx;
  int n, m, k;
  ExpTable xa, ya;
  PochTable xb, yb;
  DiffTable pair, cross;
  PowTable qp;
  std::optional<MacdonaldNum> px, py;

  Thm42Integrand(const QContext& c, int n_, int m_, int k_, const BigReal& ea1, const BigReal& ea2, const BigReal& b1,
                 const BigReal& b2)
      : ctx(c), n(n_), m(m_), k(k_), xa(c, ea1), ya(c, ea2), xb(c, BigReal(1L), b1 - BigReal(1L)),
        yb(c, BigReal(1L), b2 - BigReal(1L)), pair(pair_table(c, k_)), qp{&c} {
    // (q^{beta1} x/y)_{-k} at x/y = q^d.
    BigReal b1c = b1;
    cross.g = [&c, b1c, k_](int d) {
      BigReal r(1L);
      for (int l = 1; l <= k_; ++l) r *= BigReal(1L) - pow(c.q, b1c + BigReal(static_cast<long>(d - l)));
      if (r.is_zero()) throw QPole("cross factor pole");
      return BigReal(1L) / r;
    };
  }

  LatticeFn fn() {
    LatticeFn f;
    f.prepare = [this](int s) {
      xa.grow(s);
      ya.grow(s);
      xb.grow(s);
      yb.grow(s);
      pair.grow(s);
      cross.grow(s);
      int w = std::max(px ? px->weight() : 0, py ? py->weight() : 0);
      qp.grow((w + 2 * k + 1) * s + 1);
    };
    f.eval = [this](const int* a) {
      const int* b = a + n;
      BigReal v(1L);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const BigReal& p = pair(a[i] - a[j]);
          if (p.is_zero()) return BigReal(0L);
          v *= p * qp.v[2 * k * a[j]];
        }
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          const BigReal& p = pair(b[i] - b[j]);
          if (p.is_zero()) return BigReal(0L);
          v *= p * qp.v[2 * k * b[j]];
        }
      for (int i = 0; i < n; ++i) v *= xa.v[a[i]] * xb.v[a[i]];
      for (int j = 0; j < m; ++j) v *= ya.v[b[j]] * yb.v[b[j]];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) v *= cross(a[i] - b[j]) / qp.v[k * b[j]];
      if (px && !px->is_constant()) v *= px->at_lattice(a, qp.v);
      if (py && !py->is_constant()) v *= py->at_lattice(b, qp.v);
      return v;
    };
    return f;
  }
};

struct Thm42Reading {
  bool gamma_k_plus_1;
  bool second_uses_m;
};

BigReal thm42_rhs(int n, int m, int k, const BigReal& a1, const BigReal& a2, const BigReal& b1, const BigReal& b2,
                  const std::vector<int>& lam, const std::vector<int>& mu, Thm42Reading rd, const QContext& ctx) {
  long second = binom(rd.second_uses_m ? m : n, 3);
  BigReal e = a1 * L(k * binom(n, 2)) + a2 * L(k * binom(m, 2)) +
              L(2L * k * k * binom(n, 3) + 2L * k * k * second - 1L * k * k * n * binom(m, 2));
  BigReal r = pow(ctx.q, e);
  BigReal gk = G(L(rd.gamma_k_plus_1 ? k + 1 : k), ctx);
  for (int i = 1; i <= n; ++i) {
    r *= G(a1 + L((n - i) * k + lam[i - 1]), ctx) * G(b1 + L((i - m - 1) * k), ctx) * G(L(i * k + 1), ctx);
    r /= G(a1 + b1 + L((2 * n - m - i - 1) * k + lam[i - 1]), ctx) * gk;
  }
  for (int i = 1; i <= m; ++i) {
    r *= G(a2 + L((m - i) * k + mu[i - 1]), ctx) * G(b2 + L((i - 1) * k), ctx) * G(L(i * k + 1), ctx);
    r /= G(a2 + b2 + L((2 * m - n - i - 1) * k + mu[i - 1]), ctx) * gk;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) {
      long s = lam[i - 1] + mu[j - 1];
      r *= G(a1 + a2 + L((n + m - i - j - 1) * k + s), ctx) / G(a1 + a2 + L((n + m - i - j) * k + s), ctx);
    }
  return r;
}

// e with ratio = q^e when that e is an integer to working accuracy.
std::optional<long> exact_q_power(const BigReal& ratio, const QContext& ctx) {
  if (ratio.sign() <= 0) return std::nullopt;
  BigReal e = log(ratio) / log(ctx.q);
  BigReal r(e);
  mpfr_round(r.get(), e.get());
  if (abs(e - r) < BigReal(1e-15)) return r.round_to_long();
  return std::nullopt;
}

}  // namespace

Report check_thm42(int n, int m, int k, const std::string& alpha1, const std::string& alpha2,
                   const std::string& beta1, const Partition& lambda, const Partition& mu, const QContext& ctx,
                   const Thm42Options& opt) {
  Stopwatch sw;
  PrecisionScope ps(ctx.precision);
  Report r = numeric_report("thm42",
                            {{"n", n},
                             {"m", m},
                             {"k", k},
                             {"alpha1", alpha1},
                             {"alpha2", alpha2},
                             {"beta1", beta1},
                             {"lambda", json(parse_check(lambda, n).parts())},
                             {"mu", json(parse_check(mu, m).parts())}},
                            ctx);
  if (k < 1) throw std::invalid_argument("k must be positive");
  BigReal a1 = BigReal::parse(alpha1), a2 = BigReal::parse(alpha2), b1 = BigReal::parse(beta1);
  auto lam = lambda.padded(n), mup = mu.padded(m);
  // An integer beta1 puts poles of the cross factor on the lattice (and matching
  // q-Gamma poles on the right); both sides are compared just off the pole.
  if (is_integer(b1) && n > 0 && m > 0) {
    BigReal off = pow(BigReal(2L), -opt.pole_offset_bits);
    b1 += off;
    r.info["pole_limit"] = {{"beta1_offset", "2^-" + std::to_string(opt.pole_offset_bits)}};
  }
  BigReal b2 = L(k + 1) - b1;

  // Exponents: the form consistent with the q-integral measure and with the
  // Kaneko-Macdonald case uses x^{alpha-1}; the displayed integrand has x^{alpha}.
  Thm42Integrand ig(ctx, n, m, k, a1 - L(1), a2 - L(1), b1, b2);
  if (n > 0) ig.px.emplace(lambda, n, k, ctx);
  if (m > 0) ig.py.emplace(mu, m, k, ctx);
  QIntResult I = qint_multi(ig.fn(), n + m, ctx);
  record_integral(r.info["integral"], I);

  json readings = json::array();
  std::optional<bool> m_ok, n_ok;
  std::vector<BigReal> rhs_vals;
  for (bool use_m : {true, false}) {
    BigReal rhs = thm42_rhs(n, m, k, a1, a2, b1, b2, lam, mup, {true, use_m}, ctx);
    BigReal d = rel_diff(I.value, rhs);
    bool ok = d <= BigReal(ctx.check_tol);
    (use_m ? m_ok : n_ok) = ok;
    json e = {{"second_binomial", use_m ? "binom(m,3)" : "binom(n,3)"}, {"rhs", num(rhs)}, {"rel_diff", num(d)},
              {"balances", ok}};
    if (!ok)
      if (auto p = exact_q_power(I.value / rhs, ctx)) e["lhs_over_rhs"] = "q^" + std::to_string(*p);
    readings.push_back(e);
    rhs_vals.push_back(rhs);
  }
  r.info["prefactor_readings"] = readings;
  std::string verdict_s;
  if (*m_ok && *n_ok)
    verdict_s = "indistinguishable: binom(n,3) = binom(m,3) here";
  else if (*m_ok)
    verdict_s = "binom(m,3)";
  else if (*n_ok)
    verdict_s = "binom(n,3)";
  else
    verdict_s = "neither";
  r.info["prefactor_verdict"] = verdict_s;

  // The displayed Gamma_q(k) denominators, compared against the same integral.
  {
    BigReal rhs = thm42_rhs(n, m, k, a1, a2, b1, b2, lam, mup, {false, true}, ctx);
    r.info["gamma_k_denominator"] = {{"rel_diff", num(rel_diff(I.value, rhs))}, {"lhs_over_rhs", num(I.value / rhs)}};
  }
  // The displayed x^{alpha} y^{alpha} integrand.
  if (n + m <= opt.printed_integrand_max_dim) {
    Thm42Integrand pr(ctx, n, m, k, a1, a2, b1, b2);
    if (n > 0) pr.px.emplace(lambda, n, k, ctx);
    if (m > 0) pr.py.emplace(mu, m, k, ctx);
    QIntResult P = qint_multi(pr.fn(), n + m, ctx);
    r.info["displayed_exponent"] = {{"integral", num(P.value)},
                                    {"rel_diff", num(rel_diff(P.value, rhs_vals[0]))},
                                    {"lhs_over_rhs", num(P.value / rhs_vals[0])}};
  }

  bool any = *m_ok || *n_ok;
  BigReal best = min(rel_diff(I.value, rhs_vals[0]), rel_diff(I.value, rhs_vals[1]));
  r.info["lhs"] = num(I.value);
  r.info["rel_diff"] = num(best);
  BigReal rt = I.value.is_zero() ? BigReal(0L) : I.tail / abs(I.value);
  r.info["rel_tail"] = num(rt);
  bool ok = any && I.converged && rt <= BigReal(ctx.check_tol);
  r.status = ok ? "pass" : "fail";
  if (!ok) r.witness = {{"lhs", num(I.value)}, {"rel_diff", num(best)}, {"converged", I.converged}};
  r.millis = sw.millis();
  return r;
}

std::vector<Job> qnum_jobs(const QContext& ctx) {
  std::vector<Job> jobs;
  auto add = [&](std::string id, json params, std::function<Report()> run) {
    jobs.push_back({std::move(id), std::move(params), std::move(run)});
  };
  const std::vector<std::string> ab{"3/2", "2"};
  for (auto& a : ab)
    for (auto& b : ab) add("qbeta", {{"alpha", a}, {"beta", b}}, [=] { return check_qbeta(a, b, ctx); });
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}})
    for (auto& a : ab)
      for (auto& b : ab)
        add("ahk", {{"n", n}, {"k", k}, {"alpha", a}, {"beta", b}}, [=] { return check_ahk(n, k, a, b, ctx); });
  for (const Partition& l : {Partition{1}, Partition{2, 1}})
    add("qkm", {{"n", 2}, {"k", 1}, {"lambda", json(l.parts())}},
        [=] { return check_qkm(2, 1, "3/2", "2", l, ctx); });
  for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}})
    for (const Partition& l : enumerate_partitions(2, n))
      for (const Partition& u : enumerate_partitions(2, m))
        add("thm41", {{"n", n}, {"m", m}}, [=] { return check_thm41(n, m, 1, "3/2", "2", "5/2", l, u, ctx); });
  add("thm41", {{"n", 2}, {"m", 0}}, [=] { return check_thm41(2, 0, 1, "3/2", "2", "5/2", Partition{1}, {}, ctx); });
  for (const char* b1 : {"1", "3/4"})
    add("thm42", {{"n", 1}, {"m", 1}, {"beta1", b1}},
        [=] { return check_thm42(1, 1, 1, "2", "2", b1, {}, {}, ctx); });
  add("thm42", {{"n", 1}, {"m", 1}, {"k", 2}}, [=] { return check_thm42(1, 1, 2, "2", "2", "3/4", {}, {}, ctx); });
  add("thm42", {{"n", 2}, {"m", 1}}, [=] { return check_thm42(2, 1, 1, "2", "2", "3/4", {}, {}, ctx); });
  add("thm42", {{"n", 2}, {"m", 1}, {"lambda", {1}}, {"mu", {1}}},
      [=] { return check_thm42(2, 1, 1, "2", "2", "3/4", Partition{1}, Partition{1}, ctx); });
  add("thm42", {{"n", 1}, {"m", 2}, {"lambda", {2}}, {"mu", {1, 1}}},
      [=] { return check_thm42(1, 2, 1, "2", "5/2", "3/4", Partition{2}, Partition{1, 1}, ctx); });
  add("thm42", {{"n", 3}, {"m", 1}}, [=] { return check_thm42(3, 1, 1, "2", "2", "3/4", {}, {}, ctx); });
  return jobs;
}

}  // namespace macsel
