#include "macsel/verifier.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>

#include "macsel/plethysm.hpp"
#include "macsel/series.hpp"

namespace macsel {

namespace {

RatFunc one() { return RatFunc(1); }

json exps_json(const Exps& e) { return json(e); }

json pj(const Partition& p) { return json(p.parts()); }

// Per-report memo of normalized polynomials (stable ring).
class Norms {
 public:
  const SymSeries& P(const Partition& l) {
    auto it = P_.find(l);
    if (it == P_.end()) it = P_.emplace(l, normalized_P(l)).first;
    return it->second;
  }
  const SymSeries& Q(const Partition& l) {
    auto it = Q_.find(l);
    if (it == Q_.end()) it = Q_.emplace(l, normalized_Q(l)).first;
    return it->second;
  }
  const SymSeries& skewP(const Partition& l, const Partition& m) {
    auto k = std::make_pair(l, m);
    auto it = sP_.find(k);
    if (it == sP_.end()) it = sP_.emplace(k, normalized_skew_P(l, m)).first;
    return it->second;
  }
  const SymSeries& skewQ(const Partition& l, const Partition& m) {
    auto k = std::make_pair(l, m);
    auto it = sQ_.find(k);
    if (it == sQ_.end()) it = sQ_.emplace(k, normalized_skew_Q(l, m)).first;
    return it->second;
  }

 private:
  std::map<Partition, SymSeries> P_, Q_;
  std::map<std::pair<Partition, Partition>, SymSeries> sP_, sQ_;
};

Exps unit(int nv, int v, int k = 1) {
  Exps e(nv, 0);
  e[v] = k;
  return e;
}

Exps pair_exp(int nv, int i, int j) {
  Exps e(nv, 0);
  e[i] = 1;
  e[j] = 1;
  return e;
}

Partition block_partition(const Exps& e, int off, int len) {
  return Partition(std::vector<int>(e.begin() + off, e.begin() + off + len));
}

int sum_of(const Exps& e, int off, int len) {
  int s = 0;
  for (int i = off; i < off + len; ++i) s += e[i];
  return s;
}

std::vector<Partition> weight_exact(int w, int n) { return w < 0 ? std::vector<Partition>{} : partitions_of(w, n); }

// prod_{i<=n, j<=m} (b t^{j-i-1})_{l_i - m_j} / (b t^{j-i})_{l_i - m_j}
RatFunc double_ratio(const RatFunc& b, const std::vector<int>& lam, const std::vector<int>& mu, int n, int m,
                     const QT& qt = {}) {
  RatFunc r(1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) {
      int li = i <= static_cast<int>(lam.size()) ? lam[i - 1] : 0;
      int mj = j <= static_cast<int>(mu.size()) ? mu[j - 1] : 0;
      r *= poch_ratio(b * qt.t.pow(j - i - 1), b * qt.t.pow(j - i), li - mj, qt);
    }
  return r;
}

// Product over variables of single-variable q-binomial ratios (alpha x_v)_inf/(beta x_v)_inf.
Series product_over(int nv, int order, int off, int len, const RatFunc& alpha, const RatFunc& beta, const QT& qt = {}) {
  Series s = Series::constant(nv, order, one());
  for (int v = off; v < off + len; ++v) s = s * qratio_series(nv, order, unit(nv, v), alpha, beta, qt);
  return s;
}

Series cross_product(int nv, int order, int n, int m, const RatFunc& alpha, const RatFunc& beta, const QT& qt = {}) {
  Series s = Series::constant(nv, order, one());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) s = s * qratio_series(nv, order, pair_exp(nv, i, n + j), alpha, beta, qt);
  return s;
}

// ---------- generic Cauchy-type double sum ----------

struct Specialization {
  QT qt;
  RatFunc a = ra();
  RatFunc xs = RatFunc(1), ys = RatFunc(1);
  std::optional<std::array<std::optional<RatFunc>, kNumVars>> subst;
  RatFunc map(const RatFunc& c) const { return subst ? c.substitute(*subst) : c; }
};

// Coefficient of x^alpha y^beta on the left of the Cauchy-type identity.
RatFunc thm12_lhs(Norms& N, const Specialization& S, int n, int m, const Partition& al, const Partition& be) {
  const RatFunc& q = S.qt.q;
  const RatFunc& t = S.qt.t;
  RatFunc total;
  for (auto& lam : weight_exact(al.size(), n)) {
    RatFunc pl = N.P(lam).coeff(al);
    if (pl.is_zero()) continue;
    pl = S.map(pl) * S.xs.pow(lam.size()) * poch_partition(S.a * t.pow(m - 1), lam, S.qt);
    for (auto& mu : weight_exact(be.size(), m)) {
      RatFunc pm = N.P(mu).coeff(be);
      if (pm.is_zero()) continue;
      pm = S.map(pm) * S.ys.pow(mu.size());
      RatFunc w = t.pow(lam.size() - n * mu.size()) * poch_partition(q * t.pow(n) / S.a, mu, S.qt) *
                  double_ratio(S.a, lam.parts(), mu.parts(), n, m, S.qt);
      total += pl * pm * w;
    }
  }
  return total;
}

Series thm12_rhs(const Specialization& S, int n, int m, int D) {
  const int nv = n + m;
  const RatFunc& q = S.qt.q;
  const RatFunc& t = S.qt.t;
  Series s = product_over(nv, D, 0, n, S.a * S.xs, t * S.xs, S.qt);
  s = s * product_over(nv, D, n, m, q / S.a * S.ys, S.ys, S.qt);
  s = s * cross_product(nv, D, n, m, t * S.xs * S.ys, S.xs * S.ys, S.qt);
  return s;
}

Report thm12_like(const std::string& id, const Specialization& S, int n, int m, int D) {
  Stopwatch sw;
  Report r{id, {{"n", n}, {"m", m}, {"deg", D}}};
  Norms N;
  Checker c;
  Series rhs = thm12_rhs(S, n, m, D);
  for (auto& e : dominant_exponents({n, m}, D, Exps(n + m, 0))) {
    Partition al = block_partition(e, 0, n), be = block_partition(e, n, m);
    if (!c.equal([&] { return json{{"monomial", exps_json(e)}}; }, thm12_lhs(N, S, n, m, al, be), rhs.coeff(e)))
      break;
  }
  return finish(r, c, sw);
}

}  // namespace

// ---------------- q-binomial theorem ----------------

Report verify_qbt(int n, int D) {
  Stopwatch sw;
  Report r{"qbt", {{"n", n}, {"deg", D}}};
  Norms N;
  Checker c;
  Series rhs = product_over(n, D, 0, n, ra(), one());
  for (auto& e : dominant_exponents({n}, D, Exps(n, 0))) {
    Partition al(e);
    RatFunc lhs;
    for (auto& lam : weight_exact(al.size(), n)) lhs += poch_partition(ra(), lam) * N.P(lam).coeff(al);
    if (!c.equal([&] { return json{{"monomial", exps_json(e)}}; }, lhs, rhs.coeff(e))) break;
  }
  return finish(r, c, sw);
}

// ---------------- evaluation symmetry ----------------

Report verify_eval_symmetry(int n, int wmax) {
  Stopwatch sw;
  Report r{"eval_symmetry", {{"n", n}, {"wmax", wmax}}};
  Checker c;
  auto parts = enumerate_partitions(wmax, n);
  std::map<Partition, SymSeries> P;
  std::map<Partition, RatFunc> P0;
  for (auto& l : parts) {
    P.emplace(l, macdonald_P(l, n));
    P0.emplace(l, principal_spec(P.at(l), Partition(), n));
  }
  for (std::size_t i = 0; i < parts.size() && c.ok(); ++i)
    for (std::size_t j = i; j < parts.size(); ++j) {
      auto& l = parts[i];
      auto& m = parts[j];
      RatFunc lhs = principal_spec(P.at(l), m, n) * P0.at(m);
      RatFunc rhs = principal_spec(P.at(m), l, n) * P0.at(l);
      if (!c.equal([&] { return json{{"lambda", pj(l)}, {"mu", pj(m)}}; }, lhs, rhs)) break;
    }
  return finish(r, c, sw);
}

Report verify_gen_eval_I(int n, int wmax) {
  Stopwatch sw;
  Report r{"gen_eval_I", {{"n", n}, {"wmax", wmax}}};
  Norms N;
  Checker c;
  auto parts = enumerate_partitions(wmax, n);
  Alphabet top = Alphabet::fraction(one(), ra() * rt(n));
  std::map<Partition, RatFunc> Pt;
  for (auto& l : parts) Pt.emplace(l, pleth_eval(N.P(l), top));
  for (std::size_t i = 0; i < parts.size() && c.ok(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      auto& l = parts[i];
      auto& m = parts[j];
      RatFunc lhs = Pt.at(l) * pleth_eval(N.P(m), Alphabet::mixed(l, n, ra()));
      RatFunc rhs = Pt.at(m) * pleth_eval(N.P(l), Alphabet::mixed(m, n, ra()));
      if (!c.equal([&] { return json{{"lambda", pj(l)}, {"mu", pj(m)}}; }, lhs, rhs)) break;
    }
  return finish(r, c, sw);
}

Report verify_gen_eval_II(int n, int wmax) {
  Stopwatch sw;
  Report r{"gen_eval_II", {{"n", n}, {"wmax", wmax}}};
  Norms N;
  Checker c;
  auto parts = enumerate_partitions(wmax, n);
  auto side = [&](const Partition& l, const Partition& m) {
    // (a t^n)_l sum_nu (a)_nu Q_{m/nu}(a<l>)
    auto x = principal_point(l, n, ra());
    RatFunc s;
    for (auto& nu : subpartitions(m)) {
      if (nu.length() > n) continue;
      s += poch_partition(ra(), nu) * evaluate(N.skewQ(m, nu).restrict(n), x);
    }
    return poch_partition(ra() * rt(n), l) * s;
  };
  for (std::size_t i = 0; i < parts.size() && c.ok(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      auto& l = parts[i];
      auto& m = parts[j];
      if (!c.equal([&] { return json{{"lambda", pj(l)}, {"mu", pj(m)}}; }, side(l, m), side(m, l))) break;
    }
  return finish(r, c, sw);
}

// ---------------- sl_n - sl_m transformation ----------------

namespace {

// prod_j (a y_j/t)_lam/(a y_j)_lam as a series in the variables off..off+len-1.
Series y_ratio_series(int nv, int order, int off, int len, const Partition& lam) {
  Series s = Series::constant(nv, order, one());
  for (int v = off; v < off + len; ++v)
    for (const Cell& cell : lam.cells()) {
      RatFunc d = ra() * rq(Partition::coarm(cell)) * rt(-Partition::coleg(cell));
      s = s * linear_ratio_series(nv, order, unit(nv, v), d / rt(), d);
    }
  return s;
}

// sum_lam (a)_lam prod_j (a y_j/t)_lam/(a y_j)_lam P_lam(X): X in block (xoff, nx), Y in (yoff, ny).
Series phi_series(Norms& N, int nv, int D, int xoff, int nx, int yoff, int ny) {
  Series s(nv, D);
  for (auto& lam : enumerate_partitions(D, nx)) {
    Series term = embed_symmetric(N.P(lam).restrict(nx), nv, D, xoff, nx, one());
    term.scale(poch_partition(ra(), lam));
    s += term * y_ratio_series(nv, D, yoff, ny, lam);
  }
  return s;
}

}  // namespace

Report verify_phi_transformation(int n, int m, int D) {
  Stopwatch sw;
  Report r{"phi_transformation", {{"n", n}, {"m", m}, {"deg", D}}};
  Norms N;
  Checker c;
  const int nv = n + m;
  Series lhs = phi_series(N, nv, D, 0, n, n, m);
  Series rhs = product_over(nv, D, 0, n, ra(), one()) * product_over(nv, D, n, m, one(), ra()) *
               phi_series(N, nv, D, n, m, 0, n);
  for (auto& e : dominant_exponents({n, m}, D, Exps(nv, 0)))
    if (!c.equal([&] { return json{{"monomial", exps_json(e)}}; }, lhs.coeff(e), rhs.coeff(e))) break;
  return finish(r, c, sw);
}

// ---------------- Cauchy identities ----------------

Report verify_cauchy(int n, int D) {
  Stopwatch sw;
  Report r{"cauchy", {{"n", n}, {"deg", D}}};
  Norms N;
  Checker c;
  Series rhs = cross_product(2 * n, D, n, n, rt(), one());
  for (auto& e : dominant_exponents({n, n}, D, Exps(2 * n, 0))) {
    Partition al = block_partition(e, 0, n), be = block_partition(e, n, n);
    RatFunc lhs;
    if (al.size() == be.size())
      for (auto& lam : weight_exact(al.size(), n)) lhs += N.P(lam).coeff(al) * N.Q(lam).coeff(be);
    if (!c.equal([&] { return json{{"monomial", exps_json(e)}}; }, lhs, rhs.coeff(e))) break;
  }
  return finish(r, c, sw);
}

Report verify_skew_cauchy(int n, int D, int mumax) {
  Stopwatch sw;
  Report r{"skew_cauchy", {{"n", n}, {"deg", D}, {"mumax", mumax}}};
  Norms N;
  Checker c;
  const int nv = 2 * n;
  Series cross = cross_product(nv, D, n, n, rt(), one());
  for (auto& mu : enumerate_partitions(mumax, n)) {
    Series rhs = embed_symmetric(N.P(mu).restrict(n), nv, D, 0, n) * cross;
    for (auto& e : dominant_exponents({n, n}, D, Exps(nv, 0))) {
      Partition al = block_partition(e, 0, n), be = block_partition(e, n, n);
      RatFunc lhs;
      int w = al.size();
      if (w - static_cast<int>(mu.size()) == static_cast<int>(be.size()))
        for (auto& lam : weight_exact(w, n))
          if (contains(lam, mu)) lhs += N.P(lam).coeff(al) * N.skewQ(lam, mu).coeff(be);
      if (!c.equal([&] { return json{{"mu", pj(mu)}, {"monomial", exps_json(e)}}; }, lhs, rhs.coeff(e))) break;
    }
    if (!c.ok()) break;
  }
  return finish(r, c, sw);
}

// ---------------- skew identity ----------------

Report verify_thmPQ(int n, int wmax) {
  Stopwatch sw;
  Report r{"thmPQ", {{"n", n}, {"wmax", wmax}}};
  Norms N;
  Checker c;
  auto parts = enumerate_partitions(wmax, n);
  const RatFunc a = ra(), q = rq(), t = rt();
  Alphabet A1 = Alphabet::fraction(one(), a);
  Alphabet A2 = Alphabet::fraction(one(), q / (a * t));
  Alphabet B1 = Alphabet::fraction(one(), a * t.pow(n));
  Alphabet B2 = Alphabet::fraction(one(), q * t.pow(n - 1) / a);
  Alphabet C = Alphabet::fraction(one(), q / t);
  for (auto& lam : parts) {
    for (auto& mu : parts) {
      RatFunc lhs;
      for (auto& nu : subpartitions(mu))
        if (contains(lam, nu))
          lhs += t.pow(-static_cast<int>(nu.size())) * pleth_eval(N.skewP(mu, nu), A1) *
                 pleth_eval(N.skewQ(lam, nu), A2);
      RatFunc rhs = t.pow(-n * static_cast<int>(mu.size())) * pleth_eval(N.P(mu), B1) * pleth_eval(N.Q(lam), B2) *
                    double_ratio(q / a, lam.parts(), mu.parts(), n, n);
      if (!c.equal([&] { return json{{"lambda", pj(lam)}, {"mu", pj(mu)}}; }, lhs, rhs)) break;
      // a = 1: Q_{l/m}[(1-q/t)/(1-t)] = t^{(1-n)|m|} (q t^{n-1})_l P_m(<0>) prod ratio
      if (!contains(lam, mu)) continue;
      RatFunc lhs1 = pleth_eval(N.skewQ(lam, mu), C);
      RatFunc rhs1 = t.pow((1 - n) * static_cast<int>(mu.size())) * poch_partition(q * t.pow(n - 1), lam) *
                     principal_spec(N.P(mu).restrict(n), Partition(), n) * double_ratio(q, lam.parts(), mu.parts(), n, n);
      if (!c.equal([&] { return json{{"lambda", pj(lam)}, {"mu", pj(mu)}, {"a", 1}}; }, lhs1, rhs1)) break;
    }
    if (!c.ok()) break;
  }
  return finish(r, c, sw);
}

// ---------------- Pieri-type lemma ----------------

Report verify_pieri_lemma(int n, int mumax, int D) {
  Stopwatch sw;
  Report r{"pieri", {{"n", n}, {"mumax", mumax}, {"deg", D}}};
  Norms N;
  Checker c;
  Alphabet A = Alphabet::fraction(ra(), rb());
  Series prod = product_over(n, D, 0, n, rb(), ra());
  for (auto& mu : enumerate_partitions(mumax, n)) {
    Series rhsP = embed_symmetric(N.P(mu).restrict(n), n, D, 0, n) * prod;
    Series rhsQ = embed_symmetric(N.Q(mu).restrict(n), n, D, 0, n) * prod;
    for (auto& e : dominant_exponents({n}, D, Exps(n, 0))) {
      Partition al(e);
      RatFunc l1, l2;
      for (auto& lam : weight_exact(al.size(), n)) {
        if (!contains(lam, mu)) continue;
        l1 += pleth_eval(N.skewQ(lam, mu), A) * N.P(lam).coeff(al);
        l2 += pleth_eval(N.skewP(lam, mu), A) * N.Q(lam).coeff(al);
      }
      if (!c.equal([&] { return json{{"mu", pj(mu)}, {"monomial", exps_json(e)}, {"form", "QP"}}; }, l1,
                   rhsP.coeff(e)))
        break;
      if (!c.equal([&] { return json{{"mu", pj(mu)}, {"monomial", exps_json(e)}, {"form", "PQ"}}; }, l2,
                   rhsQ.coeff(e)))
        break;
    }
    if (!c.ok()) break;
  }
  return finish(r, c, sw);
}

// ---------------- Cauchy-type identity ----------------

Report verify_thm12(int n, int m, int D) { return thm12_like("thm12", Specialization{}, n, m, D); }

Report verify_kawanaka(int n, int m, int D) {
  Specialization S;
  RatFunc q2 = rq(2);
  S.qt = QT{q2, q2};
  S.a = RatFunc(-1) * q2;
  S.xs = rq(-1);
  S.ys = rq();
  std::array<std::optional<RatFunc>, kNumVars> sub{};
  sub[kQ] = q2;
  sub[kT] = q2;
  S.subst = sub;
  Report r = thm12_like("kawanaka", S, n, m, D);
  r.info["substitution"] = "x->x/q, y->q y, a->-q^2, q->q^2, t->q^2";
  return r;
}

Report verify_thm12_symmetry(int n, int m, int D) {
  // invariance under n<->m, X' = Y/t, Y' = tX, a' = qt/a applied to the left-hand side
  Stopwatch sw;
  Report r{"thm12_symmetry", {{"n", n}, {"m", m}, {"deg", D}}};
  Norms N;
  Checker c;
  Specialization S, Sw;
  Sw.a = rq() * rt() / ra();
  for (auto& e : dominant_exponents({n, m}, D, Exps(n + m, 0))) {
    Partition al = block_partition(e, 0, n), be = block_partition(e, n, m);
    RatFunc lhs = thm12_lhs(N, S, n, m, al, be);
    RatFunc swp = rt(static_cast<int>(al.size()) - static_cast<int>(be.size())) * thm12_lhs(N, Sw, m, n, be, al);
    if (!c.equal([&] { return json{{"monomial", exps_json(e)}}; }, lhs, swp)) break;
  }
  return finish(r, c, sw);
}

// ---------------- extended identity ----------------

namespace {

// Weakly decreasing integer n-tuples with sum w and all parts >= lo.
std::vector<std::vector<int>> integer_sequences(int w, int n, int lo) {
  std::vector<std::vector<int>> out;
  int shifted = w - n * lo;
  if (shifted < 0) return out;
  for (auto& p : partitions_of(shifted, n)) {
    auto v = p.padded(n);
    for (auto& x : v) x += lo;
    out.push_back(v);
  }
  return out;
}

// Coefficient of x^alpha in (q t^{n-1})_lam Pn_lam(X) for an integer sequence lam.
RatFunc extended_coeff(Norms& /*N*/, const std::vector<int>& lam, const std::vector<int>& al) {
  const int n = static_cast<int>(lam.size());
  int s = lam[n - 1];
  std::vector<int> base(lam), target(al);
  for (auto& x : base) x -= s;
  for (auto& x : target) x -= s;
  for (int x : target)
    if (x < 0) return RatFunc();
  Partition b(base), tg(target);
  RatFunc p = macdonald_basis().P(b).coeff(tg);
  if (p.is_zero()) return p;
  RatFunc f = rt(static_cast<int>(n_stat(lam)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      f *= poch_ratio(rq() * rt(j - i), rq() * rt(j - i - 1), lam[i] - lam[j]);
  return f * p;
}

}  // namespace

Report verify_thm26(int n, int m, int D, int r) {
  Stopwatch sw;
  Report rep{"thm26", {{"n", n}, {"m", m}, {"deg", D}, {"r", r}}};
  Norms Nm;
  Checker c;
  const int nv = n + m;
  const RatFunc a = ra(), q = rq(), t = rt();
  json family = json::array();
  for (int Nn = 0; Nn <= r && c.ok(); ++Nn) {
    const RatFunc b = q.pow(Nn + 1) / a;
    const int T = D + n * Nn;
    Exps lo(nv, 0);
    for (int i = 0; i < n; ++i) lo[i] = -Nn;
    // right-hand side
    RatFunc constant(1);
    for (int i = 1; i <= n; ++i) constant *= poch(q * t.pow(i - 1), Nn) / poch(q * t.pow(i) / a, Nn);
    Series rhs = Series::constant(nv, T, constant);
    for (int i = 0; i < n; ++i) {
      rhs = rhs * qpoch_poly_series(nv, T, unit(nv, i, -1), q / a, Nn);
      rhs = rhs * qratio_series(nv, T, unit(nv, i), a, t);
    }
    rhs = rhs * product_over(nv, T, n, m, b, one()) * cross_product(nv, T, n, m, t, one());
    long cases = 0;
    for (auto& e : dominant_exponents({n, m}, T, lo)) {
      std::vector<int> al(e.begin(), e.begin() + n);
      Partition be = block_partition(e, n, m);
      int wx = sum_of(e, 0, n);
      RatFunc lhs;
      for (auto& lam : integer_sequences(wx, n, -Nn)) {
        if (n > 0 && lam[n - 1] > al[n - 1]) continue;
        RatFunc pl = n > 0 ? extended_coeff(Nm, lam, al) : RatFunc(1);
        if (pl.is_zero()) continue;
        pl *= poch_partition(a * t.pow(m - 1), lam) / poch_partition(a * b * t.pow(n - 1), lam);
        for (auto& mu : weight_exact(be.size(), m)) {
          RatFunc pm = Nm.P(mu).coeff(be);
          if (pm.is_zero()) continue;
          lhs += pl * pm * t.pow(wx - n * static_cast<int>(mu.size())) * poch_partition(b * t.pow(n), mu) *
                 double_ratio(a, lam, mu.parts(), n, m);
        }
      }
      ++cases;
      if (!c.equal([&] { return json{{"N", Nn}, {"monomial", exps_json(e)}}; }, lhs, rhs.coeff(e))) break;
    }
    family.push_back({{"b", "q^" + std::to_string(Nn + 1) + "/a"}, {"min_part", -Nn}, {"monomials", cases}});
  }
  rep.info["family"] = family;
  rep.info["window"] = "lambda_n >= -N, total degree <= deg";
  return finish(rep, c, sw);
}

// ---------------- complementation relations ----------------

Report verify_complement_relations(int N, int n, int wmax) {
  Stopwatch sw;
  Report r{"complement", {{"N", N}, {"n", n}, {"wmax", wmax}}};
  Norms Nm;
  Checker c;
  const RatFunc q = rq(), t = rt(), a = ra(), b = rb();
  auto inside = subpartitions(box(N, n));
  std::map<Partition, RatFunc> P0;
  auto p0 = [&](const Partition& l) -> const RatFunc& {
    auto it = P0.find(l);
    if (it == P0.end()) it = P0.emplace(l, principal_spec(Nm.P(l).restrict(n), Partition(), n)).first;
    return it->second;
  };
  const Partition rect = box(N, n);
  const RatFunc qN = q.pow(-N);
  auto ni = [](const Partition& p) { return static_cast<int>(p.n_stat()); };
  auto nc = [](const Partition& p) { return static_cast<int>(p.conjugate().n_stat()); };
  for (auto& lam : inside) {
    Partition lh = complement(lam, N, n);
    int L = lam.size();
    // (a)_{lh}/(b)_{lh}
    RatFunc lhs2 = poch_partition(a, lh) / poch_partition(b, lh);
    RatFunc rhs2 = (b / a).pow(L) * poch_partition(a, rect) / poch_partition(b, rect) *
                   poch_partition(q.pow(1 - N) * t.pow(n - 1) / b, lam) / poch_partition(q.pow(1 - N) * t.pow(n - 1) / a, lam);
    if (!c.equal([&] { return json{{"relation", "ratio"}, {"lambda", pj(lam)}}; }, lhs2, rhs2)) break;
    // P_{lh}(<0>)
    RatFunc rhs3 = RatFunc(L % 2 ? -1 : 1) * q.pow(N * L - nc(lam)) *
                   t.pow(2 * N * (n * (n - 1) / 2) + ni(lam) - 2 * (n - 1) * L) * poch_partition(qN, lam) *
                   poch_partition(q * t.pow(n - 1), lam) / poch_partition(q * t.pow(n - 1), rect) * p0(lam);
    if (!c.equal([&] { return json{{"relation", "principal"}, {"lambda", pj(lam)}}; }, p0(lh), rhs3)) break;
    // f^{eta-hat}_{lambda-hat nu}
    for (auto& eta : inside) {
      int d = L - static_cast<int>(eta.size());
      if (d < 0 || d > wmax) continue;
      Partition eh = complement(eta, N, n);
      for (auto& nu : partitions_of(d, n)) {
        RatFunc lhs1 = normalized_lr(eh, lh, nu);
        RatFunc rhs1 = (RatFunc(-1) * q.pow(N) * t.pow(1 - n)).pow(d) * q.pow(nc(eta) - nc(lam)) *
                       t.pow(ni(lam) - ni(eta)) * normalized_lr(lam, eta, nu) * poch_partition(qN, lam) /
                       poch_partition(qN, eta) * p0(lam) / p0(eta);
        if (!c.equal([&] { return json{{"relation", "lr"}, {"lambda", pj(lam)}, {"eta", pj(eta)}, {"nu", pj(nu)}}; },
                     lhs1, rhs1))
          break;
      }
      if (!c.ok()) break;
    }
    if (!c.ok()) break;
  }
  return finish(r, c, sw);
}

// ---------------- structural invariants ----------------

Report check_unitriangular(int wmax, int nmax) {
  Stopwatch sw;
  Report r{"unitriangular", {{"wmax", wmax}, {"nmax", nmax}}};
  Checker c;
  for (int n = 1; n <= nmax && c.ok(); ++n)
    for (auto& l : enumerate_partitions(wmax, n)) {
      SymSeries P = macdonald_P(l, n);
      if (!c.equal([&] { return json{{"lambda", pj(l)}, {"n", n}}; }, P.coeff(l), one())) break;
      for (auto& [mu, u] : P.coeffs())
        if (!c.that([&] { return json{{"lambda", pj(l)}, {"mu", pj(mu)}, {"n", n}}; },
                    mu.length() <= n && dominance_leq(mu, l), "support below lambda in dominance"))
          break;
      if (!c.ok()) break;
    }
  return finish(r, c, sw);
}

Report check_orthogonal(int wmax) {
  Stopwatch sw;
  Report r{"orthogonal", {{"wmax", wmax}}};
  Checker c;
  OrthoBasis& B = macdonald_basis();
  for (int w = 1; w <= wmax && c.ok(); ++w) {
    auto ps = partitions_of(w);
    for (std::size_t i = 0; i < ps.size() && c.ok(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        RatFunc ip = scalar_product(B.P(ps[i]), B.P(ps[j]), macdonald_weight);
        if (!c.equal([&] { return json{{"lambda", pj(ps[i])}, {"mu", pj(ps[j])}}; }, ip, RatFunc())) break;
      }
  }
  return finish(r, c, sw);
}

Report check_duality(int wmax) {
  Stopwatch sw;
  Report r{"duality", {{"wmax", wmax}}};
  Checker c;
  for (int w = 0; w <= wmax && c.ok(); ++w) {
    auto ps = partitions_of(w);
    for (auto& l : ps) {
      for (auto& m : ps) {
        RatFunc ip = scalar_product(macdonald_P(l), macdonald_Q(m), macdonald_weight);
        if (!c.equal([&] { return json{{"lambda", pj(l)}, {"mu", pj(m)}}; }, ip, RatFunc(l == m ? 1 : 0))) break;
      }
      if (!c.ok()) break;
    }
  }
  return finish(r, c, sw);
}

Report check_homogeneity(int wmax, int n) {
  Stopwatch sw;
  Report r{"homogeneity", {{"wmax", wmax}, {"n", n}}};
  Checker c;
  // P(zX) = z^|l| P(X) at a generic point X = (q, t, a, ...)
  std::vector<RatFunc> x;
  const RatFunc gens[] = {rq() + RatFunc(2), rt() - RatFunc(3), ra() + rb(), rq() * rb() + RatFunc(1)};
  for (int i = 0; i < n; ++i) x.push_back(gens[i % 4] + RatFunc(i / 4));
  std::vector<RatFunc> zx;
  for (auto& v : x) zx.push_back(RatFunc::var(kZ) * v);
  for (auto& l : enumerate_partitions(wmax, n)) {
    SymSeries P = macdonald_P(l, n);
    if (!c.equal([&] { return json{{"lambda", pj(l)}}; }, evaluate(P, zx),
                 RatFunc::var(kZ, static_cast<int>(l.size())) * evaluate(P, x)))
      break;
  }
  return finish(r, c, sw);
}

Report check_stability(int wmax, int nmax) {
  Stopwatch sw;
  Report r{"stability", {{"wmax", wmax}, {"nmax", nmax}}};
  Checker c;
  for (int n = 1; n <= nmax && c.ok(); ++n)
    for (auto& l : enumerate_partitions(wmax, n + 1)) {
      Series big = embed_symmetric(macdonald_P(l, n + 1), n + 1, wmax, 0, n + 1);
      Series small = embed_symmetric(macdonald_P(l, n), n + 1, wmax, 0, n);
      // set x_{n+1} = 0
      Series cut(n + 1, wmax);
      for (auto& [e, v] : big.terms())
        if (e[n] == 0) cut.add_term(e, v);
      if (!c.that([&] { return json{{"lambda", pj(l)}, {"n", n}}; }, cut.terms() == small.terms(),
                  "P(x_1..x_n, 0) = P(x_1..x_n)"))
        break;
    }
  return finish(r, c, sw);
}

Report check_lr_support(int wmax) {
  Stopwatch sw;
  Report r{"lr_support", {{"wmax", wmax}}};
  Checker c;
  auto ps = enumerate_partitions(wmax);
  for (auto& mu : ps)
    for (auto& nu : ps) {
      if (mu.size() + nu.size() > wmax) continue;
      for (auto& [lam, f] : lr_expansion(mu, nu))
        if (!c.that([&] { return json{{"lambda", pj(lam)}, {"mu", pj(mu)}, {"nu", pj(nu)}}; },
                    lam.size() == mu.size() + nu.size() && contains(lam, mu) && contains(lam, nu),
                    "f vanishes unless |lambda| = |mu|+|nu| and mu, nu inside lambda"))
          break;
      if (!c.ok()) return finish(r, c, sw);
    }
  return finish(r, c, sw);
}

Report check_bla(int wmax) {
  Stopwatch sw;
  Report r{"a_lambda_plethysm", {{"wmax", wmax}}};
  Checker c;
  Alphabet A = Alphabet::fraction(one(), ra());
  for (auto& l : enumerate_partitions(wmax))
    if (!c.equal([&] { return json{{"lambda", pj(l)}}; }, pleth_eval(normalized_Q(l), A), poch_partition(ra(), l)))
      break;
  return finish(r, c, sw);
}

Report check_principal_Q(int wmax, int nmax) {
  Stopwatch sw;
  Report r{"principal_Q", {{"wmax", wmax}, {"nmax", nmax}}};
  Checker c;
  for (int n = 1; n <= nmax && c.ok(); ++n)
    for (auto& l : enumerate_partitions(wmax, n))
      if (!c.equal([&] { return json{{"lambda", pj(l)}, {"n", n}}; }, principal_spec(normalized_Q(l, n), Partition(), n),
                   poch_partition(rt(n), l)))
        break;
  return finish(r, c, sw);
}

Report check_ccp(int wmax) {
  Stopwatch sw;
  Report r{"hook_cross_forms", {{"wmax", wmax}}};
  Checker c;
  const RatFunc q = rq(), t = rt();
  for (auto& l : enumerate_partitions(wmax)) {
    for (int n = l.length(); n <= l.length() + 3; ++n) {
      auto v = l.padded(n);
      RatFunc cf = poch_partition(t.pow(n), l), cpf = poch_partition(q * t.pow(n - 1), l);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          int d = v[i] - v[j], s = j - i;
          cf *= poch_ratio(t.pow(s), t.pow(s + 1), d);
          cpf *= poch_ratio(q * t.pow(s - 1), q * t.pow(s), d);
        }
      if (!c.equal([&] { return json{{"lambda", pj(l)}, {"n", n}, {"form", "c"}}; }, c_poly(l), cf)) break;
      if (!c.equal([&] { return json{{"lambda", pj(l)}, {"n", n}, {"form", "c'"}}; }, cprime_poly(l), cpf)) break;
    }
    if (!c.ok()) break;
  }
  return finish(r, c, sw);
}

// ---------------- registry ----------------

namespace {

int geti(const json& p, const char* k) {
  if (!p.contains(k)) throw std::invalid_argument(std::string("missing parameter ") + k);
  return p.at(k).get<int>();
}

}  // namespace

Report run_case(const CaseSpec& cs) {
  const json& p = cs.params;
  const std::string& id = cs.id;
  if (id == "qbt") return verify_qbt(geti(p, "n"), geti(p, "deg"));
  if (id == "eval_symmetry") return verify_eval_symmetry(geti(p, "n"), geti(p, "wmax"));
  if (id == "gen_eval_I") return verify_gen_eval_I(geti(p, "n"), geti(p, "wmax"));
  if (id == "gen_eval_II") return verify_gen_eval_II(geti(p, "n"), geti(p, "wmax"));
  if (id == "phi_transformation") return verify_phi_transformation(geti(p, "n"), geti(p, "m"), geti(p, "deg"));
  if (id == "cauchy") return verify_cauchy(geti(p, "n"), geti(p, "deg"));
  if (id == "skew_cauchy") return verify_skew_cauchy(geti(p, "n"), geti(p, "deg"), geti(p, "mumax"));
  if (id == "thmPQ") return verify_thmPQ(geti(p, "n"), geti(p, "wmax"));
  if (id == "pieri") return verify_pieri_lemma(geti(p, "n"), geti(p, "mumax"), geti(p, "deg"));
  if (id == "thm12") return verify_thm12(geti(p, "n"), geti(p, "m"), geti(p, "deg"));
  if (id == "thm12_symmetry") return verify_thm12_symmetry(geti(p, "n"), geti(p, "m"), geti(p, "deg"));
  if (id == "kawanaka") return verify_kawanaka(geti(p, "n"), geti(p, "m"), geti(p, "deg"));
  if (id == "thm26") return verify_thm26(geti(p, "n"), geti(p, "m"), geti(p, "deg"), geti(p, "r"));
  if (id == "complement") return verify_complement_relations(geti(p, "N"), geti(p, "n"), geti(p, "wmax"));
  if (id == "unitriangular") return check_unitriangular(geti(p, "wmax"), geti(p, "nmax"));
  if (id == "orthogonal") return check_orthogonal(geti(p, "wmax"));
  if (id == "duality") return check_duality(geti(p, "wmax"));
  if (id == "homogeneity") return check_homogeneity(geti(p, "wmax"), geti(p, "n"));
  if (id == "stability") return check_stability(geti(p, "wmax"), geti(p, "nmax"));
  if (id == "lr_support") return check_lr_support(geti(p, "wmax"));
  if (id == "a_lambda_plethysm") return check_bla(geti(p, "wmax"));
  if (id == "principal_Q") return check_principal_Q(geti(p, "wmax"), geti(p, "nmax"));
  if (id == "hook_cross_forms") return check_ccp(geti(p, "wmax"));
  throw std::invalid_argument("unknown case id: " + id);
}

std::vector<std::string> case_ids() {
  return {"qbt",         "eval_symmetry",  "gen_eval_I", "gen_eval_II",   "phi_transformation", "cauchy",
          "skew_cauchy", "thmPQ",          "pieri",      "thm12",         "thm12_symmetry",     "kawanaka",
          "thm26",       "complement",     "unitriangular", "orthogonal", "duality",            "homogeneity",
          "stability",   "lr_support",     "a_lambda_plethysm", "principal_Q", "hook_cross_forms"};
}

std::vector<Report> run_cases(const std::vector<CaseSpec>& cases, int workers) {
  std::vector<Job> jobs;
  for (auto& c : cases) jobs.push_back({c.id, c.params, [c] { return run_case(c); }});
  return run_jobs(jobs, workers);
}

std::vector<CaseSpec> exact_suite() {
  std::vector<CaseSpec> s;
  for (auto [n, m, d] : std::vector<std::tuple<int, int, int>>{{1, 1, 4}, {2, 1, 3}, {2, 2, 3}})
    s.push_back({"thm12", {{"n", n}, {"m", m}, {"deg", d}}});
  for (auto [n, d] : std::vector<std::pair<int, int>>{{1, 5}, {2, 4}, {3, 3}}) s.push_back({"qbt", {{"n", n}, {"deg", d}}});
  for (int n = 1; n <= 3; ++n) s.push_back({"eval_symmetry", {{"n", n}, {"wmax", 3}}});
  for (int n = 1; n <= 2; ++n) {
    s.push_back({"gen_eval_I", {{"n", n}, {"wmax", 3}}});
    s.push_back({"gen_eval_II", {{"n", n}, {"wmax", 3}}});
  }
  s.push_back({"phi_transformation", {{"n", 1}, {"m", 1}, {"deg", 4}}});
  s.push_back({"phi_transformation", {{"n", 2}, {"m", 1}, {"deg", 3}}});
  for (int n = 1; n <= 2; ++n) s.push_back({"thmPQ", {{"n", n}, {"wmax", 3}}});
  s.push_back({"pieri", {{"n", 2}, {"mumax", 2}, {"deg", 3}}});
  s.push_back({"skew_cauchy", {{"n", 2}, {"deg", 3}, {"mumax", 2}}});
  s.push_back({"thm26", {{"n", 1}, {"m", 1}, {"deg", 3}, {"r", 2}}});
  s.push_back({"kawanaka", {{"n", 1}, {"m", 1}, {"deg", 4}}});
  s.push_back({"complement", {{"N", 2}, {"n", 2}, {"wmax", 4}}});
  return s;
}

std::vector<CaseSpec> invariant_suite() {
  return {
      {"unitriangular", {{"wmax", 6}, {"nmax", 4}}},
      {"orthogonal", {{"wmax", 6}}},
      {"duality", {{"wmax", 5}}},
      {"homogeneity", {{"wmax", 5}, {"n", 3}}},
      {"stability", {{"wmax", 5}, {"nmax", 3}}},
      {"lr_support", {{"wmax", 4}}},
      {"a_lambda_plethysm", {{"wmax", 5}}},
      {"principal_Q", {{"wmax", 5}, {"nmax", 3}}},
      {"hook_cross_forms", {{"wmax", 8}}},
      {"cauchy", {{"n", 2}, {"deg", 10}}},
      {"thm12_symmetry", {{"n", 2}, {"m", 1}, {"deg", 3}}},
  };
}

}  // namespace macsel
