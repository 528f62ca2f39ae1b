// Brown's dense modular gcd: reduction modulo word-size primes, recursive
// evaluation/interpolation on the least significant variable, CRT lifting and
// trial division.
#include <algorithm>
#include <map>
#include <mutex>

#include "macsel/poly.hpp"

namespace macsel {

GcdStats& gcd_stats() {
  static thread_local GcdStats s;
  return s;
}

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct Fp {
  u32 p;
  u32 add(u32 a, u32 b) const {
    u32 s = a + b;
    return s >= p ? s - p : s;
  }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
  u32 mul(u32 a, u32 b) const { return static_cast<u32>((u64)a * b % p); }
  u32 neg(u32 a) const { return a ? p - a : 0; }
  u32 pow(u32 a, u64 e) const {
    u64 r = 1, b = a;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<u32>(r);
  }
  u32 inv(u32 a) const { return pow(a, p - 2); }
  u32 reduce(const mpz_class& c) const { return static_cast<u32>(mpz_fdiv_ui(c.get_mpz_t(), p)); }
};

bool is_prime32(u32 n) {
  if (n < 2) return false;
  for (u32 sp : {2u, 3u, 5u, 7u, 11u, 13u})
    if (n % sp == 0) return n == sp;
  u32 d = n - 1;
  int s = 0;
  while (!(d & 1)) d >>= 1, ++s;
  Fp F{n};
  for (u32 a : {2u, 7u, 61u}) {
    if (a % n == 0) continue;
    u32 x = F.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = F.mul(x, x);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

u32 prime_at(std::size_t idx) {
  static std::vector<u32> primes;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  u32 cand = primes.empty() ? 2147483647u : primes.back() - 2;
  while (primes.size() <= idx) {
    while (!is_prime32(cand)) cand -= 2;
    primes.push_back(cand);
    cand -= 2;
  }
  return primes[idx];
}

// ---------------- univariate over Fp (ascending coefficients) ----------------
using UPoly = std::vector<u32>;

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
int udeg(const UPoly& a) { return static_cast<int>(a.size()) - 1; }

u32 ueval(const UPoly& a, u32 x, const Fp& F) {
  u64 r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = (r * x + a[i]) % F.p;
  return static_cast<u32>(r);
}

UPoly umul(const UPoly& a, const UPoly& b, const Fp& F) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

void uscale(UPoly& a, u32 c, const Fp& F) {
  for (auto& x : a) x = F.mul(x, c);
  trim(a);
}

// a = q*b + r
void udivmod(const UPoly& a, const UPoly& b, const Fp& F, UPoly* q, UPoly* r) {
  UPoly rem(a);
  int db = udeg(b);
  u32 binv = F.inv(b.back());
  UPoly quo(std::max(0, udeg(a) - db + 1), 0);
  for (int d = udeg(rem); d >= db; --d) {
    u32 c = F.mul(rem[d], binv);
    if (c) {
      quo[d - db] = c;
      for (int k = 0; k <= db; ++k) rem[d - db + k] = F.sub(rem[d - db + k], F.mul(c, b[k]));
    }
  }
  trim(rem);
  trim(quo);
  if (q) *q = std::move(quo);
  if (r) *r = std::move(rem);
}

void umonic(UPoly& a, const Fp& F) {
  if (!a.empty() && a.back() != 1) uscale(a, F.inv(a.back()), F);
}

UPoly ugcd(UPoly a, UPoly b, const Fp& F) {
  while (!b.empty()) {
    UPoly r;
    udivmod(a, b, F, nullptr, &r);
    a = std::move(b);
    b = std::move(r);
  }
  umonic(a, F);
  return a;
}

// ---------------- multivariate over Fp ----------------
struct PTerm {
  Mono m;
  u32 c;
};
using PPoly = std::vector<PTerm>;  // decreasing monomials

unsigned pvars(const PPoly& a) {
  Mono acc = 0;
  for (auto& t : a) acc |= t.m;
  unsigned mask = 0;
  for (int v = 0; v < kNumVars; ++v)
    if (acc & mono_field_mask(v)) mask |= 1u << v;
  return mask;
}

void pmonic(PPoly& a, const Fp& F) {
  if (a.empty() || a[0].c == 1) return;
  u32 inv = F.inv(a[0].c);
  for (auto& t : a) t.c = F.mul(t.c, inv);
}

PPoly pconst(u32 c) { return c ? PPoly{{0, c}} : PPoly{}; }

Mono pmin_mono(const PPoly& a) {
  Mono m = a[0].m;
  for (auto& t : a) m = mono_min(m, t.m);
  return m;
}

bool pdivides(const PPoly& d, const PPoly& a, const Fp& F) {
  if (a.empty()) return true;
  if (!mono_divides(d[0].m, a[0].m)) return false;
  std::map<Mono, u32, std::greater<Mono>> rem;
  for (auto& t : a) rem.emplace(t.m, t.c);
  u32 linv = F.inv(d[0].c);
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!mono_divides(d[0].m, it->first)) return false;
    u32 c = F.mul(it->second, linv);
    Mono qm = it->first - d[0].m;
    rem.erase(it);
    for (std::size_t k = 1; k < d.size(); ++k) {
      Mono m = qm + d[k].m;
      if (m & kGuardMask) return false;
      auto [jt, ins] = rem.try_emplace(m, 0u);
      jt->second = F.sub(jt->second, F.mul(c, d[k].c));
      if (jt->second == 0) rem.erase(jt);
    }
  }
  return true;
}

// Polynomial viewed in Fp[x_v][rest]: groups keyed by the rest monomial.
struct Group {
  Mono rest;
  UPoly u;
};
using Grouped = std::vector<Group>;

Grouped group_by(const PPoly& a, int v) {
  Grouped g;
  Mono mask = mono_field_mask(v);
  int sh = field_shift(v);
  for (auto& t : a) {
    Mono rest = t.m & ~mask;
    int e = static_cast<int>((t.m & mask) >> sh);
    if (g.empty() || g.back().rest != rest) g.push_back({rest, {}});
    auto& u = g.back().u;
    if (static_cast<int>(u.size()) <= e) u.resize(e + 1, 0);
    u[e] = t.c;
  }
  return g;
}

PPoly ungroup(const Grouped& g, int v) {
  PPoly out;
  int sh = field_shift(v);
  for (auto& gr : g)
    for (std::size_t e = gr.u.size(); e-- > 0;)
      if (gr.u[e]) out.push_back({gr.rest | (Mono(e) << sh), gr.u[e]});
  return out;
}

PPoly eval_group(const Grouped& g, u32 x, const Fp& F) {
  PPoly out;
  for (auto& gr : g) {
    u32 c = ueval(gr.u, x, F);
    if (c) out.push_back({gr.rest, c});
  }
  return out;
}

UPoly group_content(const Grouped& g, const Fp& F) {
  UPoly c;
  for (auto& gr : g) {
    c = c.empty() ? gr.u : ugcd(c, gr.u, F);
    if (udeg(c) == 0) break;
  }
  umonic(c, F);
  return c;
}

void group_divide(Grouped& g, const UPoly& c, const Fp& F) {
  if (udeg(c) <= 0) return;
  for (auto& gr : g) {
    UPoly q;
    udivmod(gr.u, c, F, &q, nullptr);
    gr.u = std::move(q);
  }
}

int group_vdeg(const Grouped& g) {
  int d = 0;
  for (auto& gr : g) d = std::max(d, udeg(gr.u));
  return d;
}

PPoly from_upoly(const UPoly& u, int v) {
  PPoly out;
  for (std::size_t e = u.size(); e-- > 0;)
    if (u[e]) out.push_back({mono_var(v, static_cast<int>(e)), u[e]});
  return out;
}

PPoly pgcd(const PPoly& a0, const PPoly& b0, const Fp& F);

PPoly pgcd_body(const PPoly& a, const PPoly& b, const Fp& F) {
  unsigned mask = pvars(a) | pvars(b);
  int v = 31 - __builtin_clz(mask);  // least significant active field
  if (mask == (1u << v)) {
    auto ga = group_by(a, v), gb = group_by(b, v);
    UPoly g = ugcd(ga[0].u, gb[0].u, F);
    return from_upoly(g, v);
  }
  Grouped ga = group_by(a, v), gb = group_by(b, v);
  UPoly ca = group_content(ga, F), cb = group_content(gb, F);
  group_divide(ga, ca, F);
  group_divide(gb, cb, F);
  UPoly c = ugcd(ca, cb, F);
  if ((ga.size() == 1 && ga[0].rest == 0) || (gb.size() == 1 && gb[0].rest == 0)) return from_upoly(c, v);
  const UPoly& la = ga[0].u;
  const UPoly& lb = gb[0].u;
  UPoly g = ugcd(la, lb, F);
  int limit = udeg(g) + std::min(group_vdeg(ga), group_vdeg(gb));
  PPoly a1 = ungroup(ga, v), b1 = ungroup(gb, v);

  std::map<Mono, UPoly, std::greater<Mono>> H;
  Mono hdeg = 0;
  bool have = false;
  UPoly qprod{1};
  int npts = 0;
  for (u32 beta = 1;; ++beta) {
    if (beta >= F.p) throw std::runtime_error("modular gcd ran out of evaluation points");
    if (ueval(la, beta, F) == 0 || ueval(lb, beta, F) == 0) continue;
    PPoly A = eval_group(ga, beta, F), B = eval_group(gb, beta, F);
    PPoly C = pgcd(A, B, F);
    if (C.size() == 1 && C[0].m == 0) return from_upoly(c, v);
    u32 gb_ = ueval(g, beta, F);
    for (auto& t : C) t.c = F.mul(t.c, gb_);
    Mono d = C[0].m;
    if (!have || d < hdeg) {
      H.clear();
      for (auto& t : C) H[t.m] = UPoly{t.c};
      qprod = UPoly{F.neg(beta), 1};
      hdeg = d;
      npts = 1;
      have = true;
    } else if (d == hdeg) {
      u32 fac = F.inv(ueval(qprod, beta, F));
      std::map<Mono, u32, std::greater<Mono>> diff;
      for (auto& [m, u] : H) {
        u32 hv = ueval(u, beta, F);
        if (hv) diff[m] = F.neg(hv);
      }
      for (auto& t : C) {
        u32& x = diff[t.m];
        x = F.add(x, t.c);
      }
      for (auto& [m, val] : diff) {
        if (!val) continue;
        UPoly add = qprod;
        uscale(add, F.mul(val, fac), F);
        UPoly& u = H[m];
        if (u.size() < add.size()) u.resize(add.size(), 0);
        for (std::size_t k = 0; k < add.size(); ++k) u[k] = F.add(u[k], add[k]);
        trim(u);
        if (u.empty()) H.erase(m);
      }
      UPoly lin{F.neg(beta), 1};
      qprod = umul(qprod, lin, F);
      ++npts;
    } else {
      continue;
    }
    if (npts > limit) {
      Grouped hg;
      for (auto& [m, u] : H) hg.push_back({m, u});
      UPoly hc = group_content(hg, F);
      group_divide(hg, hc, F);
      PPoly Hp = ungroup(hg, v);
      pmonic(Hp, F);
      if (pdivides(Hp, a1, F) && pdivides(Hp, b1, F)) {
        for (auto& gr : hg) gr.u = umul(gr.u, c, F);
        PPoly r = ungroup(hg, v);
        pmonic(r, F);
        return r;
      }
    }
  }
}

PPoly pgcd(const PPoly& a0, const PPoly& b0, const Fp& F) {
  if (a0.empty()) {
    PPoly r(b0);
    pmonic(r, F);
    return r;
  }
  if (b0.empty()) {
    PPoly r(a0);
    pmonic(r, F);
    return r;
  }
  Mono ma = pmin_mono(a0), mb = pmin_mono(b0);
  Mono mg = mono_min(ma, mb);
  PPoly a(a0), b(b0);
  for (auto& t : a) t.m -= ma;
  for (auto& t : b) t.m -= mb;
  PPoly r;
  if ((a.size() == 1 && a[0].m == 0) || (b.size() == 1 && b[0].m == 0))
    r = pconst(1);
  else
    r = pgcd_body(a, b, F);
  for (auto& t : r) t.m += mg;
  pmonic(r, F);
  return r;
}

PPoly reduce_mod(const MultiPoly& a, const Fp& F) {
  PPoly out;
  out.reserve(a.size());
  for (auto& t : a.terms()) {
    u32 c = F.reduce(t.c);
    if (c) out.push_back({t.m, c});
  }
  return out;
}

MultiPoly primitive_positive(MultiPoly h) {
  mpz_class c = h.content();
  if (h.lead().c < 0) c = -c;
  if (c != 1) h.div_scalar_exact(c);
  return h;
}

}  // namespace

MultiPoly gcd(const MultiPoly& A, const MultiPoly& B) {
  auto& st = gcd_stats();
  ++st.calls;
  if (A.is_zero() && B.is_zero()) return MultiPoly();
  if (A.is_zero()) return B.lead().c < 0 ? -B : B;
  if (B.is_zero()) return A.lead().c < 0 ? -A : A;
  Mono ma = A.min_mono(), mb = B.min_mono();
  Mono mg = mono_min(ma, mb);
  mpz_class cA = A.content(), cB = B.content(), cg;
  mpz_gcd(cg.get_mpz_t(), cA.get_mpz_t(), cB.get_mpz_t());
  if (A.is_monomial() || B.is_monomial()) {
    ++st.trivial;
    return MultiPoly::monomial(cg, mg);
  }
  MultiPoly a(A), b(B);
  a.div_mono_exact(ma).div_scalar_exact(cA);
  b.div_mono_exact(mb).div_scalar_exact(cB);
  if (a.is_constant() || b.is_constant()) {
    ++st.trivial;
    return MultiPoly::monomial(cg, mg);
  }
  if (a.lead().c < 0) a = -a;
  if (b.lead().c < 0) b = -b;
  if (a == b) {
    a.mul_scalar(cg).mul_mono(mg);
    return a;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.lead().c.get_mpz_t(), b.lead().c.get_mpz_t());

  MultiPoly H;  // coefficients in symmetric range mod M
  mpz_class M = 0;
  Mono hdeg = 0;
  for (std::size_t pi = 0;; ++pi) {
    Fp F{prime_at(pi)};
    ++st.primes;
    if (F.reduce(a.lead().c) == 0 || F.reduce(b.lead().c) == 0) continue;
    PPoly Cp = pgcd(reduce_mod(a, F), reduce_mod(b, F), F);
    if (Cp.size() == 1 && Cp[0].m == 0) {
      ++st.trivial;
      return MultiPoly::monomial(cg, mg);
    }
    u32 gp = F.reduce(g);
    for (auto& t : Cp) t.c = F.mul(t.c, gp);
    Mono d = Cp[0].m;
    if (M == 0 || d < hdeg) {
      std::vector<MultiPoly::Term> tt;
      for (auto& t : Cp) {
        mpz_class c = t.c;
        if (t.c > F.p / 2) c -= F.p;
        tt.push_back({t.m, c});
      }
      H = MultiPoly::from_terms(std::move(tt));
      M = F.p;
      hdeg = d;
    } else if (d == hdeg) {
      u32 minv = F.inv(F.reduce(M));
      mpz_class Mn = M * F.p, half = Mn / 2;
      std::vector<MultiPoly::Term> tt;
      const auto& ht = H.terms();
      std::size_t i = 0, j = 0;
      bool changed = false;
      while (i < ht.size() || j < Cp.size()) {
        Mono m;
        mpz_class h = 0;
        u32 c = 0;
        if (j == Cp.size() || (i < ht.size() && ht[i].m > Cp[j].m)) {
          m = ht[i].m;
          h = ht[i++].c;
        } else if (i == ht.size() || Cp[j].m > ht[i].m) {
          m = Cp[j].m;
          c = Cp[j++].c;
        } else {
          m = ht[i].m;
          h = ht[i++].c;
          c = Cp[j++].c;
        }
        u32 hp = F.reduce(h);
        u32 k = F.mul(F.sub(c, hp), minv);
        mpz_class x = h;
        if (k) {
          changed = true;
          x += M * k;
          if (x > half) x -= Mn;
          if (x < -half) x += Mn;
        }
        if (x != 0) tt.push_back({m, std::move(x)});
      }
      M = Mn;
      if (!changed) {
        MultiPoly C = primitive_positive(H);
        if (try_divide(a, C, nullptr) && try_divide(b, C, nullptr)) {
          C.mul_scalar(cg).mul_mono(mg);
          return C;
        }
      }
      H = MultiPoly::from_terms(std::move(tt));
    }
  }
}

}  // namespace macsel
