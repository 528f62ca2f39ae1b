#include "macsel/poly.hpp"

#include <algorithm>
#include <map>

namespace macsel {

Mono mono_min(Mono a, Mono b) {
  Mono r = 0;
  for (int v = 0; v < kNumVars; ++v) {
    Mono ma = a & mono_field_mask(v), mb = b & mono_field_mask(v);
    r |= std::min(ma, mb);
  }
  return r;
}

int mono_total_degree(Mono m) {
  int d = 0;
  for (int v = 0; v < kNumVars; ++v) d += mono_exp(m, v);
  return d;
}

std::array<int, kNumVars> mono_unpack(Mono m) {
  std::array<int, kNumVars> e{};
  for (int v = 0; v < kNumVars; ++v) e[v] = mono_exp(m, v);
  return e;
}

Mono mono_pack(const std::array<int, kNumVars>& e) {
  Mono m = 0;
  for (int v = 0; v < kNumVars; ++v) m |= mono_var(v, e[v]);
  return m;
}

MultiPoly::MultiPoly(long c) {
  if (c != 0) terms_.push_back({0, mpz_class(c)});
}

MultiPoly::MultiPoly(const mpz_class& c) {
  if (c != 0) terms_.push_back({0, c});
}

MultiPoly MultiPoly::var(int v, int e) { return monomial(1, mono_var(v, e)); }

MultiPoly MultiPoly::monomial(const mpz_class& c, Mono m) {
  MultiPoly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.m > y.m; });
  MultiPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
      if (p.terms_.back().c == 0) p.terms_.pop_back();
    } else if (t.c != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

mpz_class MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().m == 0) return terms_.back().c;
  return 0;
}

int MultiPoly::degree(int v) const {
  int d = -1;
  for (auto& t : terms_) d = std::max(d, mono_exp(t.m, v));
  return d;
}

int MultiPoly::min_degree(int v) const {
  if (terms_.empty()) return -1;
  int d = kMaxExp;
  for (auto& t : terms_) d = std::min(d, mono_exp(t.m, v));
  return d;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (auto& t : terms_) d = std::max(d, mono_total_degree(t.m));
  return d;
}

unsigned MultiPoly::used_vars() const {
  Mono acc = 0;
  for (auto& t : terms_) acc |= t.m;
  unsigned mask = 0;
  for (int v = 0; v < kNumVars; ++v)
    if (acc & mono_field_mask(v)) mask |= 1u << v;
  return mask;
}

Mono MultiPoly::min_mono() const {
  if (terms_.empty()) return 0;
  Mono m = terms_[0].m;
  for (auto& t : terms_) m = mono_min(m, t.m);
  return m;
}

mpz_class MultiPoly::content() const {
  mpz_class g = 0;
  for (auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

namespace {
void merge_add(const std::vector<MultiPoly::Term>& a, const std::vector<MultiPoly::Term>& b, bool subtract,
               std::vector<MultiPoly::Term>& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].m > b[j].m)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].m > a[i].m) {
      out.push_back({b[j].m, subtract ? mpz_class(-b[j].c) : b[j].c});
      ++j;
    } else {
      mpz_class c = subtract ? mpz_class(a[i].c - b[j].c) : mpz_class(a[i].c + b[j].c);
      if (c != 0) out.push_back({a[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
}
}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<Term> out;
  merge_add(terms_, o.terms_, false, out);
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  merge_add(terms_, o.terms_, true, out);
  terms_ = std::move(out);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1) {
    r = b;
    r.mul_mono(a.terms_[0].m);
    if (a.terms_[0].c != 1) r.mul_scalar(a.terms_[0].c);
    return r;
  }
  if (b.terms_.size() == 1) return b * a;
  struct Prod {
    Mono m;
    std::uint32_t i, j;
  };
  std::vector<Prod> prods;
  prods.reserve(a.terms_.size() * b.terms_.size());
  for (std::uint32_t i = 0; i < a.terms_.size(); ++i)
    for (std::uint32_t j = 0; j < b.terms_.size(); ++j) prods.push_back({mono_mul(a.terms_[i].m, b.terms_[j].m), i, j});
  std::sort(prods.begin(), prods.end(), [](const Prod& x, const Prod& y) { return x.m > y.m; });
  mpz_class acc;
  for (std::size_t k = 0; k < prods.size();) {
    Mono m = prods[k].m;
    acc = 0;
    for (; k < prods.size() && prods[k].m == m; ++k)
      mpz_addmul(acc.get_mpz_t(), a.terms_[prods[k].i].c.get_mpz_t(), b.terms_[prods[k].j].c.get_mpz_t());
    if (acc != 0) r.terms_.push_back({m, acc});
  }
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::mul_scalar(const mpz_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.c *= c;
  return *this;
}

MultiPoly& MultiPoly::mul_mono(Mono m) {
  for (auto& t : terms_) t.m = mono_mul(t.m, m);
  return *this;
}

MultiPoly& MultiPoly::div_scalar_exact(const mpz_class& c) {
  for (auto& t : terms_) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
  return *this;
}

MultiPoly& MultiPoly::div_mono_exact(Mono m) {
  for (auto& t : terms_) {
    if (!mono_divides(m, t.m)) throw NotDivisible("monomial does not divide term");
    t.m -= m;
  }
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

int MultiPoly::compare(const MultiPoly& o) const {
  std::size_t n = std::min(terms_.size(), o.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (terms_[i].m != o.terms_[i].m) return terms_[i].m < o.terms_[i].m ? -1 : 1;
    int c = cmp(terms_[i].c, o.terms_[i].c);
    if (c) return c < 0 ? -1 : 1;
  }
  if (terms_.size() == o.terms_.size()) return 0;
  return terms_.size() < o.terms_.size() ? -1 : 1;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r(1), b(*this);
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

std::size_t MultiPoly::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
  for (auto& t : terms_) {
    mix(t.m);
    mix(static_cast<std::size_t>(mpz_sgn(t.c.get_mpz_t()) + 1));
    mix(mpz_size(t.c.get_mpz_t()) ? mpz_getlimbn(t.c.get_mpz_t(), 0) : 0);
  }
  return h;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& t : terms_) {
    mpz_class c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? "-" : "+";
    }
    first = false;
    bool need_star = false;
    if (c != 1 || t.m == 0) {
      s += c.get_str();
      need_star = true;
    }
    for (int v = 0; v < kNumVars; ++v) {
      int e = mono_exp(t.m, v);
      if (!e) continue;
      if (need_star) s += "*";
      s += kVarNames[v];
      if (e > 1) s += "^" + std::to_string(e);
      need_star = true;
    }
  }
  return s;
}

bool try_divide(const MultiPoly& a, const MultiPoly& b, MultiPoly* quot) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) {
    if (quot) *quot = MultiPoly();
    return true;
  }
  const auto& bt = b.terms();
  if (bt.size() == 1) {
    MultiPoly q;
    std::vector<MultiPoly::Term> qt;
    qt.reserve(a.size());
    for (auto& t : a.terms()) {
      if (!mono_divides(bt[0].m, t.m) || !mpz_divisible_p(t.c.get_mpz_t(), bt[0].c.get_mpz_t())) return false;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), t.c.get_mpz_t(), bt[0].c.get_mpz_t());
      qt.push_back({t.m - bt[0].m, std::move(c)});
    }
    if (quot) *quot = MultiPoly::from_terms(std::move(qt));
    return true;
  }
  // quick degree checks
  for (int v = 0; v < kNumVars; ++v)
    if (b.degree(v) > a.degree(v)) return false;
  std::map<Mono, mpz_class, std::greater<Mono>> rem;
  for (auto& t : a.terms()) rem.emplace(t.m, t.c);
  std::vector<MultiPoly::Term> qt;
  const Mono lm = bt[0].m;
  const mpz_class& lc = bt[0].c;
  mpz_class c;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!mono_divides(lm, it->first) || !mpz_divisible_p(it->second.get_mpz_t(), lc.get_mpz_t())) return false;
    mpz_divexact(c.get_mpz_t(), it->second.get_mpz_t(), lc.get_mpz_t());
    Mono qm = it->first - lm;
    rem.erase(it);
    for (std::size_t k = 1; k < bt.size(); ++k) {
      Mono m = qm + bt[k].m;
      if (m & kGuardMask) return false;  // exact quotients never exceed the degrees of a
      auto [jt, inserted] = rem.try_emplace(m);
      mpz_submul(jt->second.get_mpz_t(), c.get_mpz_t(), bt[k].c.get_mpz_t());
      if (jt->second == 0) rem.erase(jt);
    }
    qt.push_back({qm, c});
  }
  if (quot) *quot = MultiPoly::from_terms(std::move(qt));
  return true;
}

MultiPoly divexact(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly q;
  if (!try_divide(a, b, &q)) throw NotDivisible("polynomial division not exact");
  return q;
}

}  // namespace macsel
