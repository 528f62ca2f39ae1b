#include "macsel/symfunc.hpp"

#include <algorithm>

#include "macsel/cache.hpp"

namespace macsel {

// ---------------- SymSeries ----------------

SymSeries::SymSeries(int nvars, Coeffs c) : nvars_(nvars) {
  for (auto& [l, v] : c) add_term(l, v);
}

RatFunc SymSeries::coeff(const Partition& lambda) const {
  auto it = c_.find(lambda);
  return it == c_.end() ? RatFunc() : it->second;
}

void SymSeries::add_term(const Partition& lambda, const RatFunc& c) {
  if (c.is_zero() || (nvars_ >= 0 && lambda.length() > nvars_)) return;
  auto [it, inserted] = c_.try_emplace(lambda, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

bool SymSeries::is_zero() const { return c_.empty(); }

int SymSeries::max_degree() const {
  int d = -1;
  for (auto& [l, v] : c_) d = std::max(d, l.size());
  return d;
}

SymSeries SymSeries::restrict(int n) const {
  SymSeries r(n);
  for (auto& [l, v] : c_)
    if (n < 0 || l.length() <= n) r.c_.emplace(l, v);
  return r;
}

SymSeries SymSeries::truncate(int max_degree) const {
  SymSeries r(nvars_);
  for (auto& [l, v] : c_)
    if (l.size() <= max_degree) r.c_.emplace(l, v);
  return r;
}

SymSeries& SymSeries::operator+=(const SymSeries& o) {
  for (auto& [l, v] : o.c_) add_term(l, v);
  return *this;
}

SymSeries& SymSeries::operator-=(const SymSeries& o) {
  for (auto& [l, v] : o.c_) add_term(l, -v);
  return *this;
}

SymSeries& SymSeries::scale(const RatFunc& c) {
  if (c.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [l, v] : c_) v *= c;
  return *this;
}

SymSeries operator*(const SymSeries& a, const SymSeries& b) {
  int n = a.nvars_ < 0 ? b.nvars_ : (b.nvars_ < 0 ? a.nvars_ : std::min(a.nvars_, b.nvars_));
  SymSeries r(n);
  for (auto& [la, ca] : a.c_)
    for (auto& [lb, cb] : b.c_) {
      RatFunc c = ca * cb;
      for (auto& [lc, k] : monomial_product(la, lb))
        if (n < 0 || lc.length() <= n) r.add_term(lc, c * RatFunc(k));
    }
  return r;
}

bool operator==(const SymSeries& a, const SymSeries& b) {
  if (a.c_.size() != b.c_.size()) return false;
  auto it = b.c_.begin();
  for (auto& [l, v] : a.c_) {
    if (!(it->first == l) || !(it->second == v)) return false;
    ++it;
  }
  return true;
}

SymSeries SymSeries::monomial(const Partition& lambda, int nvars) {
  SymSeries r(nvars);
  r.add_term(lambda, RatFunc(1));
  return r;
}

// ---------------- combinatorics ----------------

std::vector<std::vector<int>> distinct_permutations(const std::vector<int>& v) {
  std::vector<int> w(v);
  std::sort(w.begin(), w.end());
  std::vector<std::vector<int>> out;
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

const std::map<Partition, long>& monomial_product(const Partition& a, const Partition& b) {
  static std::mutex mu;
  static std::map<std::pair<Partition, Partition>, std::map<Partition, long>> memo;
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  int L = a.length() + b.length();
  std::map<Partition, long> out;
  auto pa = distinct_permutations(a.padded(L)), pb = distinct_permutations(b.padded(L));
  std::vector<int> w(L);
  for (auto& u : pa)
    for (auto& v : pb) {
      bool ok = true;
      for (int i = 0; i < L; ++i) {
        w[i] = u[i] + v[i];
        if (i && w[i] > w[i - 1]) {
          ok = false;
          break;
        }
      }
      if (ok) ++out[Partition(w)];
    }
  return memo.emplace(key, std::move(out)).first->second;
}

const Transition& transition(int d) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Transition>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(d);
    if (it != memo.end()) return *it->second;
  }
  auto T = std::make_unique<Transition>();
  T->parts = partitions_of(d);
  int N = static_cast<int>(T->parts.size());
  for (int i = 0; i < N; ++i) T->index[T->parts[i]] = i;
  T->p_in_m.assign(N, std::vector<long>(N, 0));
  for (int r = 0; r < N; ++r) {
    std::map<Partition, long> cur{{Partition(), 1}};
    for (int part : T->parts[r].parts()) {
      std::map<Partition, long> nxt;
      for (auto& [l, c] : cur)
        for (auto& [l2, k] : monomial_product(l, Partition({part}))) nxt[l2] += c * k;
      cur = std::move(nxt);
    }
    for (auto& [l, c] : cur) T->p_in_m[r][T->index.at(l)] = c;
  }
  // invert A (p = A m) by Gauss-Jordan over Q
  std::vector<std::vector<mpq_class>> A(N, std::vector<mpq_class>(2 * N));
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) A[i][j] = T->p_in_m[i][j];
    A[i][N + i] = 1;
  }
  for (int col = 0; col < N; ++col) {
    int piv = col;
    while (A[piv][col] == 0) ++piv;
    std::swap(A[piv], A[col]);
    mpq_class inv = 1 / A[col][col];
    for (auto& x : A[col]) x *= inv;
    for (int i = 0; i < N; ++i) {
      if (i == col || A[i][col] == 0) continue;
      mpq_class f = A[i][col];
      for (int j = 0; j < 2 * N; ++j) A[i][j] -= f * A[col][j];
    }
  }
  // m = A^{-1} p, so m_lambda = sum_rho Ainv[lambda][rho] p_rho
  T->m_in_p.assign(N, std::vector<mpq_class>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) T->m_in_p[i][j] = A[i][N + j];
  std::lock_guard<std::mutex> lock(mu);
  auto [it, ins] = memo.emplace(d, std::move(T));
  return *it->second;
}

Coeffs to_power_basis(const SymSeries& f) {
  Coeffs out;
  for (auto& [l, c] : f.coeffs()) {
    const Transition& T = transition(l.size());
    const auto& row = T.m_in_p[T.index.at(l)];
    for (std::size_t r = 0; r < row.size(); ++r) {
      if (row[r] == 0) continue;
      auto [it, ins] = out.try_emplace(T.parts[r]);
      it->second += c * RatFunc(row[r]);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

SymSeries from_power_basis(const Coeffs& p) {
  SymSeries f;
  for (auto& [rho, c] : p) {
    const Transition& T = transition(rho.size());
    const auto& row = T.p_in_m[T.index.at(rho)];
    for (std::size_t l = 0; l < row.size(); ++l)
      if (row[l]) f.add_term(T.parts[l], c * RatFunc(row[l]));
  }
  return f;
}

RatFunc macdonald_weight(const Partition& rho) {
  RatFunc num(1), den(1);
  for (int r : rho.parts()) {
    num *= RatFunc(1) - rq(r);
    den *= RatFunc(1) - rt(r);
  }
  return RatFunc(static_cast<long>(z_factor(rho))) * num / den;
}

RatFunc jack_weight(const Partition& rho) {
  return RatFunc(static_cast<long>(z_factor(rho))) * RatFunc::var(kAlpha, rho.length());
}

RatFunc hall_weight(const Partition& rho) { return RatFunc(static_cast<long>(z_factor(rho))); }

RatFunc scalar_product(const SymSeries& f, const SymSeries& g, const WeightFn& w) {
  Coeffs fp = to_power_basis(f), gp = to_power_basis(g);
  RatFunc s;
  for (auto& [rho, c] : fp) {
    auto it = gp.find(rho);
    if (it != gp.end()) s += c * it->second * w(rho);
  }
  return s;
}

// ---------------- Gram-Schmidt bases ----------------

OrthoBasis::OrthoBasis(std::string family, WeightFn weight) : family_(std::move(family)), weight_(std::move(weight)) {}

void OrthoBasis::set_cache(std::shared_ptr<PolyCache> cache) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  cache_ = std::move(cache);
}

void OrthoBasis::clear_memory() {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  blocks_.clear();
}

std::size_t OrthoBasis::computed_weights() {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return blocks_.size();
}

void OrthoBasis::compute_weight(int d) {
  if (blocks_.count(d)) return;
  const Transition& T = transition(d);
  const int N = static_cast<int>(T.parts.size());
  std::map<Partition, std::unique_ptr<Entry>> block;

  if (cache_) {
    bool all = true;
    for (auto& l : T.parts) {
      auto rec = cache_->load(l, l.size());
      if (!rec) {
        all = false;
        break;
      }
      auto e = std::make_unique<Entry>();
      e->P = SymSeries(-1, rec->coeffs);
      e->Pp = to_power_basis(e->P);
      e->norm = rec->norm;
      block.emplace(l, std::move(e));
    }
    if (all) {
      blocks_[d] = std::move(block);
      return;
    }
    block.clear();
  }

  std::vector<RatFunc> w(N);
  for (int r = 0; r < N; ++r) w[r] = weight_(T.parts[r]);
  std::vector<std::vector<RatFunc>> Wp(N);  // p-coordinates of P_mu times weights
  for (int li = N - 1; li >= 0; --li) {
    const Partition& lam = T.parts[li];
    const auto& mrow = T.m_in_p[li];
    auto e = std::make_unique<Entry>();
    e->P = SymSeries::monomial(lam);
    std::vector<RatFunc> pp(N);
    for (int r = 0; r < N; ++r)
      if (mrow[r] != 0) pp[r] = RatFunc(mrow[r]);
    for (int mi = N - 1; mi > li; --mi) {
      const Partition& mu = T.parts[mi];
      if (!dominance_leq(mu, lam)) continue;
      RatFunc s;
      for (int r = 0; r < N; ++r)
        if (mrow[r] != 0 && !Wp[mi][r].is_zero()) s += RatFunc(mrow[r]) * Wp[mi][r];
      if (s.is_zero()) continue;
      const Entry& em = *block.at(mu);
      RatFunc coef = s / em.norm;
      e->P -= coef * em.P;
      for (auto& [rho, c] : em.Pp) pp[T.index.at(rho)] -= coef * c;
    }
    RatFunc nrm;
    for (int r = 0; r < N; ++r)
      if (mrow[r] != 0 && !pp[r].is_zero()) nrm += RatFunc(mrow[r]) * pp[r] * w[r];
    e->norm = nrm;
    Wp[li].resize(N);
    for (int r = 0; r < N; ++r) {
      if (pp[r].is_zero()) continue;
      e->Pp.emplace(T.parts[r], pp[r]);
      Wp[li][r] = pp[r] * w[r];
    }
    block.emplace(lam, std::move(e));
  }
  if (cache_)
    for (auto& [l, e] : block) cache_->store(l, l.size(), CachedPoly{e->P.coeffs(), e->norm});
  blocks_[d] = std::move(block);
}

const OrthoBasis::Entry& OrthoBasis::entry(const Partition& lambda) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  compute_weight(lambda.size());
  return *blocks_.at(lambda.size()).at(lambda);
}

const SymSeries& OrthoBasis::P(const Partition& lambda) { return entry(lambda).P; }
const Coeffs& OrthoBasis::P_power(const Partition& lambda) { return entry(lambda).Pp; }
RatFunc OrthoBasis::norm(const Partition& lambda) { return entry(lambda).norm; }

OrthoBasis& macdonald_basis() {
  static OrthoBasis b("macdonald", macdonald_weight);
  return b;
}

OrthoBasis& jack_basis() {
  static OrthoBasis b("jack", jack_weight);
  return b;
}

// ---------------- Macdonald P, Q and normalizations ----------------

SymSeries macdonald_P(const Partition& lambda, int n) { return macdonald_basis().P(lambda).restrict(n); }

SymSeries macdonald_Q(const Partition& lambda, int n) { return b_norm(lambda) * macdonald_P(lambda, n); }

RatFunc normalized_P_factor(const Partition& lambda) {
  return rt(static_cast<int>(lambda.n_stat())) / cprime_poly(lambda);
}

SymSeries normalized_P(const Partition& lambda, int n) { return normalized_P_factor(lambda) * macdonald_P(lambda, n); }

SymSeries normalized_Q(const Partition& lambda, int n) {
  return rt(-static_cast<int>(lambda.n_stat())) * c_poly(lambda) * macdonald_P(lambda, n);
}

const Coeffs& lr_expansion(const Partition& mu, const Partition& nu) {
  static std::mutex mu_lock;
  static std::map<std::pair<Partition, Partition>, Coeffs> memo;
  auto key = mu < nu ? std::make_pair(mu, nu) : std::make_pair(nu, mu);
  {
    std::lock_guard<std::mutex> lock(mu_lock);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  OrthoBasis& B = macdonald_basis();
  SymSeries prod = B.P(mu) * B.P(nu);
  Coeffs out;
  while (!prod.is_zero()) {
    auto [lam, c] = *prod.coeffs().begin();  // lex-largest term
    out.emplace(lam, c);
    prod -= c * B.P(lam);
  }
  std::lock_guard<std::mutex> lock(mu_lock);
  return memo.emplace(key, std::move(out)).first->second;
}

RatFunc lr_coeff(const Partition& lambda, const Partition& mu, const Partition& nu) {
  if (lambda.size() != mu.size() + nu.size() || !contains(lambda, mu) || !contains(lambda, nu)) return RatFunc();
  const Coeffs& e = lr_expansion(mu, nu);
  auto it = e.find(lambda);
  return it == e.end() ? RatFunc() : it->second;
}

RatFunc normalized_lr(const Partition& lambda, const Partition& mu, const Partition& nu) {
  RatFunc f = lr_coeff(lambda, mu, nu);
  if (f.is_zero()) return f;
  int e = static_cast<int>(mu.n_stat() + nu.n_stat() - lambda.n_stat());
  return rt(e) * cprime_poly(lambda) / (cprime_poly(mu) * cprime_poly(nu)) * f;
}

SymSeries skew_Q(const Partition& lambda, const Partition& mu, int n) {
  SymSeries r(n);
  if (!contains(lambda, mu)) return r;
  for (auto& nu : partitions_of(lambda.size() - mu.size(), n)) {
    RatFunc f = lr_coeff(lambda, mu, nu);
    if (!f.is_zero()) r += f * macdonald_Q(nu, n);
  }
  return r;
}

SymSeries skew_P(const Partition& lambda, const Partition& mu, int n) {
  if (!contains(lambda, mu)) return SymSeries(n);
  return b_norm(mu) / b_norm(lambda) * skew_Q(lambda, mu, n);
}

SymSeries normalized_skew_Q(const Partition& lambda, const Partition& mu, int n) {
  int e = static_cast<int>(mu.n_stat() - lambda.n_stat());
  return rt(e) * cprime_poly(lambda) / cprime_poly(mu) * skew_Q(lambda, mu, n);
}

SymSeries normalized_skew_P(const Partition& lambda, const Partition& mu, int n) {
  int e = static_cast<int>(lambda.n_stat() - mu.n_stat());
  return rt(e) * cprime_poly(mu) / cprime_poly(lambda) * skew_P(lambda, mu, n);
}

SymSeries jack_P(const Partition& lambda, int n) { return jack_basis().P(lambda).restrict(n); }

// ---------------- evaluation ----------------

RatFunc evaluate(const SymSeries& f, const std::vector<RatFunc>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<RatFunc>> pw(n, std::vector<RatFunc>{RatFunc(1)});
  auto power = [&](int i, int e) -> const RatFunc& {
    while (static_cast<int>(pw[i].size()) <= e) pw[i].push_back(pw[i].back() * x[i]);
    return pw[i][e];
  };
  RatFunc out;
  for (auto& [lam, c] : f.coeffs()) {
    if (lam.length() > n) continue;
    RatFunc m;
    for (auto& u : distinct_permutations(lam.padded(n))) {
      RatFunc term(1);
      for (int i = 0; i < n; ++i)
        if (u[i]) term *= power(i, u[i]);
      m += term;
    }
    out += c * m;
  }
  return out;
}

std::vector<RatFunc> principal_point(const Partition& mu, int n, const RatFunc& scale) {
  std::vector<RatFunc> x;
  for (int i = 1; i <= n; ++i) x.push_back(scale * rq(mu[i]) * rt(n - i));
  return x;
}

RatFunc principal_spec(const SymSeries& f, const Partition& mu, int n, const RatFunc& scale) {
  return evaluate(f, principal_point(mu, n, scale));
}

}  // namespace macsel
