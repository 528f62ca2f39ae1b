#include "macsel/series.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace macsel {

Series::Series(int nvars, int order, Exps lo) : nv_(nvars), order_(order), lo_(std::move(lo)) {
  if (lo_.empty()) lo_.assign(nv_, 0);
  if (static_cast<int>(lo_.size()) != nv_) throw std::invalid_argument("Series: lower bound size");
}

Series Series::constant(int nvars, int order, const RatFunc& c) {
  Series s(nvars, order);
  s.add_term(Exps(nvars, 0), c);
  return s;
}

RatFunc Series::coeff(const Exps& e) const {
  auto it = c_.find(e);
  return it == c_.end() ? RatFunc() : it->second;
}

bool Series::in_range(const Exps& e) const {
  int d = 0;
  for (int v = 0; v < nv_; ++v) {
    if (e[v] < lo_[v]) return false;
    d += e[v] - lo_[v];
  }
  return d <= order_;
}

void Series::add_term(const Exps& e, const RatFunc& c) {
  if (c.is_zero() || !in_range(e)) return;
  auto [it, fresh] = c_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

Series& Series::operator+=(const Series& o) {
  if (o.nv_ != nv_ || o.lo_ != lo_) throw std::invalid_argument("Series: incompatible sum");
  order_ = std::min(order_, o.order_);
  for (auto it = c_.begin(); it != c_.end();)
    it = in_range(it->first) ? std::next(it) : c_.erase(it);
  for (auto& [e, c] : o.c_) add_term(e, c);
  return *this;
}

Series& Series::scale(const RatFunc& c) {
  if (c.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [e, v] : c_) v *= c;
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  if (a.nv_ != b.nv_) throw std::invalid_argument("Series: variable count mismatch");
  Exps lo(a.nv_);
  for (int v = 0; v < a.nv_; ++v) lo[v] = a.lo_[v] + b.lo_[v];
  Series r(a.nv_, std::min(a.order_, b.order_), lo);
  std::map<Exps, RatFunc> acc;
  Exps e(a.nv_);
  for (auto& [ea, ca] : a.c_) {
    int da = 0;
    for (int v = 0; v < a.nv_; ++v) da += ea[v] - a.lo_[v];
    for (auto& [eb, cb] : b.c_) {
      int db = 0;
      for (int v = 0; v < a.nv_; ++v) db += eb[v] - b.lo_[v];
      if (da + db > r.order_) continue;
      for (int v = 0; v < a.nv_; ++v) e[v] = ea[v] + eb[v];
      acc[e] += ca * cb;
    }
  }
  for (auto& [k, c] : acc)
    if (!c.is_zero()) r.c_.emplace(k, std::move(c));
  return r;
}

namespace {

int shifted_step(const Exps& e) {
  int d = std::accumulate(e.begin(), e.end(), 0);
  return d;
}

Exps times(const Exps& e, int k) {
  Exps r(e);
  for (auto& x : r) x *= k;
  return r;
}

Exps lower_for(const Exps& e, int kmax) {
  Exps lo(e.size(), 0);
  for (std::size_t v = 0; v < e.size(); ++v)
    if (e[v] < 0) lo[v] = e[v] * kmax;
  return lo;
}

}  // namespace

Series qratio_series(int nvars, int order, const Exps& e, const RatFunc& alpha, const RatFunc& beta, const QT& qt) {
  int step = shifted_step(e);
  if (step <= 0) throw std::invalid_argument("qratio_series: needs positive degree monomial");
  Series s(nvars, order);
  RatFunc c(1);
  RatFunc qi(1);
  for (int k = 0; k * step <= order; ++k) {
    s.add_term(times(e, k), c);
    c *= (beta - alpha * qi) / (RatFunc(1) - qi * qt.q);
    qi *= qt.q;
  }
  return s;
}

Series qpoch_poly_series(int nvars, int order, const Exps& e, const RatFunc& c, int N, const QT& qt) {
  // (cz)_N = sum_k [N choose k]_q (-1)^k q^{k(k-1)/2} c^k z^k
  Series s(nvars, order, lower_for(e, N));
  RatFunc coef(1);
  for (int k = 0; k <= N; ++k) {
    s.add_term(times(e, k), coef);
    coef *= RatFunc(-1) * c * qt.q.pow(k) * (RatFunc(1) - qt.q.pow(N - k)) / (RatFunc(1) - qt.q.pow(k + 1));
  }
  return s;
}

Series linear_ratio_series(int nvars, int order, const Exps& e, const RatFunc& c, const RatFunc& d) {
  int step = shifted_step(e);
  if (step <= 0) throw std::invalid_argument("linear_ratio_series: needs positive degree monomial");
  Series s(nvars, order);
  s.add_term(times(e, 0), RatFunc(1));
  RatFunc dk(1);
  for (int k = 1; k * step <= order; ++k) {
    s.add_term(times(e, k), dk * (d - c));
    dk *= d;
  }
  return s;
}

Series embed_symmetric(const SymSeries& f, int nvars, int order, int off, int count, const RatFunc& scale) {
  Series s(nvars, order);
  Exps e(nvars, 0);
  for (auto& [lam, c] : f.coeffs()) {
    if (lam.length() > count || lam.size() > order) continue;
    RatFunc cc = c * scale.pow(lam.size());
    for (auto& u : distinct_permutations(lam.padded(count))) {
      std::fill(e.begin(), e.end(), 0);
      for (int i = 0; i < count; ++i) e[off + i] = u[i];
      s.add_term(e, cc);
    }
  }
  return s;
}

std::vector<Exps> dominant_exponents(const std::vector<int>& blocks, int order, const Exps& lo) {
  int nv = std::accumulate(blocks.begin(), blocks.end(), 0);
  std::vector<Exps> out;
  Exps e(nv);
  // exponents in each block weakly decreasing; the lower bound must be constant on a block
  std::vector<int> start;
  int pos = 0;
  for (int b : blocks) {
    start.push_back(pos);
    pos += b;
  }
  std::function<void(int, int)> rec = [&](int v, int budget) {
    if (v == nv) {
      out.push_back(e);
      return;
    }
    int blk = 0;
    while (blk + 1 < static_cast<int>(blocks.size()) && start[blk + 1] <= v) ++blk;
    int hi = lo[v] + budget;
    if (v > start[blk]) hi = std::min(hi, e[v - 1]);
    for (int x = hi; x >= lo[v]; --x) {
      e[v] = x;
      rec(v + 1, budget - (x - lo[v]));
    }
  };
  rec(0, order);
  return out;
}

}  // namespace macsel
