#include "macsel/ratfunc.hpp"

#include <cctype>
#include <map>

namespace macsel {

GcdPolicy& gcd_policy() {
  static GcdPolicy p = GcdPolicy::kAlways;
  return p;
}

RatFunc::RatFunc(const mpq_class& c) : num_(c.get_num()), den_(c.get_den()) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalized_ = false;
  normalize();
}

RatFunc RatFunc::var(int v, int e) {
  RatFunc r;
  if (e >= 0) {
    r.num_ = MultiPoly::var(v, e);
  } else {
    r.num_ = MultiPoly(1);
    r.den_ = MultiPoly::var(v, -e);
  }
  return r;
}

RatFunc RatFunc::monomial(const mpz_class& c, const std::array<int, kNumVars>& e) {
  std::array<int, kNumVars> pos{}, neg{};
  for (int v = 0; v < kNumVars; ++v) (e[v] >= 0 ? pos[v] : neg[v]) = std::abs(e[v]);
  RatFunc r;
  r.num_ = MultiPoly::monomial(c, mono_pack(pos));
  r.den_ = MultiPoly::monomial(1, mono_pack(neg));
  if (c == 0) r.den_ = MultiPoly(1);
  return r;
}

RatFunc& RatFunc::normalize() {
  if (normalized_) return *this;
  normalized_ = true;
  if (num_.is_zero()) {
    den_ = MultiPoly(1);
    return *this;
  }
  if (!den_.is_one()) {
    MultiPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = divexact(num_, g);
      den_ = divexact(den_, g);
    }
  }
  if (den_.lead().c < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

RatFunc RatFunc::operator-() const {
  RatFunc r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const bool lazy = gcd_policy() == GcdPolicy::kLazy;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (num_.is_zero()) {
      den_ = MultiPoly(1);
      normalized_ = true;
    } else if (!den_.is_one()) {
      normalized_ = false;
      if (!lazy) normalize();
    }
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    normalized_ = normalized_ && o.normalized_;
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    normalized_ = normalized_ && o.normalized_;
    return *this;
  }
  if (lazy) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalized_ = false;
    return *this;
  }
  MultiPoly g = gcd(den_, o.den_);
  if (g.is_one()) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalized_ = normalized_ && o.normalized_;
    return *this;
  }
  MultiPoly d1 = divexact(den_, g), d2 = divexact(o.den_, g);
  num_ = num_ * d2 + o.num_ * d1;
  den_ = den_ * d2;
  if (num_.is_zero()) {
    den_ = MultiPoly(1);
    normalized_ = true;
    return *this;
  }
  MultiPoly g2 = gcd(num_, g);
  if (!g2.is_one()) {
    num_ = divexact(num_, g2);
    den_ = divexact(den_, g2);
  }
  if (!(normalized_ && o.normalized_)) {
    normalized_ = false;
    normalize();
  }
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RatFunc();
  if (gcd_policy() == GcdPolicy::kLazy) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalized_ = false;
    return *this;
  }
  bool both = normalized_ && o.normalized_;
  if (!both) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalized_ = false;
    return normalize();
  }
  MultiPoly g1 = o.den_.is_one() ? MultiPoly(1) : gcd(num_, o.den_);
  MultiPoly g2 = den_.is_one() ? MultiPoly(1) : gcd(o.num_, den_);
  MultiPoly n1 = g1.is_one() ? num_ : divexact(num_, g1);
  MultiPoly d2 = g1.is_one() ? o.den_ : divexact(o.den_, g1);
  MultiPoly n2 = g2.is_one() ? o.num_ : divexact(o.num_, g2);
  MultiPoly d1 = g2.is_one() ? den_ : divexact(den_, g2);
  num_ = n1 * n2;
  den_ = d1 * d2;
  if (den_.lead().c < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  RatFunc r;
  r.num_ = den_;
  r.den_ = num_;
  r.normalized_ = normalized_;
  if (r.den_.lead().c < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

bool operator==(const RatFunc& a, const RatFunc& b) {
  if (a.normalized_ && b.normalized_) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  r.normalized_ = normalized_;
  return r;
}

MultiPoly substitute_poly(const MultiPoly& p, int v, const MultiPoly& val) {
  std::vector<MultiPoly> pw{MultiPoly(1)};
  MultiPoly out;
  Mono mask = mono_field_mask(v);
  for (auto& t : p.terms()) {
    int e = mono_exp(t.m, v);
    while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * val);
    MultiPoly term = pw[e];
    term.mul_mono(t.m & ~mask).mul_scalar(t.c);
    out += term;
  }
  return out;
}

RatFunc substitute_poly(const MultiPoly& p, const std::array<std::optional<RatFunc>, kNumVars>& vals) {
  std::array<std::vector<RatFunc>, kNumVars> pw;
  // Group terms by the substituted part to keep the number of rational additions small.
  RatFunc out;
  Mono keep_mask = 0;
  for (int v = 0; v < kNumVars; ++v)
    if (!vals[v]) keep_mask |= mono_field_mask(v);
  std::map<Mono, MultiPoly> groups;  // substituted monomial -> kept polynomial
  for (auto& t : p.terms()) groups[t.m & ~keep_mask] += MultiPoly::monomial(t.c, t.m & keep_mask);
  for (auto& [m, kept] : groups) {
    RatFunc factor(kept);
    for (int v = 0; v < kNumVars; ++v) {
      if (!vals[v]) continue;
      int e = mono_exp(m, v);
      if (!e) continue;
      auto& tab = pw[v];
      if (tab.empty()) tab.push_back(RatFunc(1));
      while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * *vals[v]);
      factor *= tab[e];
    }
    out += factor;
  }
  return out;
}

RatFunc RatFunc::substitute(const std::array<std::optional<RatFunc>, kNumVars>& vals) const {
  return substitute_poly(num_, vals) / substitute_poly(den_, vals);
}

std::string RatFunc::to_string() const {
  RatFunc r = normalized();
  if (r.den_.is_one()) return r.num_.to_string();
  return "(" + r.num_.to_string() + ")/(" + r.den_.to_string() + ")";
}

namespace {
struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("parse error at offset " + std::to_string(pos) + ": " + what);
  }
  RatFunc expr() {
    skip();
    RatFunc r;
    bool first = true;
    for (;;) {
      skip();
      if (!first && pos >= s.size()) break;
      int sign = 1;
      if (eat('+')) {
      } else if (eat('-')) {
        sign = -1;
      } else if (!first) {
        break;
      }
      RatFunc t = term();
      if (sign < 0) t = -t;
      r += t;
      first = false;
    }
    return r;
  }
  RatFunc term() {
    RatFunc r = power();
    for (;;) {
      if (eat('*'))
        r *= power();
      else if (eat('/'))
        r /= power();
      else
        break;
    }
    return r;
  }
  RatFunc power() {
    RatFunc base = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected exponent");
      int e = std::stoi(s.substr(start, pos - start));
      base = base.pow(neg ? -e : e);
    }
    return base;
  }
  RatFunc atom() {
    skip();
    if (eat('(')) {
      RatFunc r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (eat('-')) return -atom();
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return RatFunc(MultiPoly(mpz_class(s.substr(start, pos - start))));
    }
    if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
      std::string name = s.substr(start, pos - start);
      for (int v = 0; v < kNumVars; ++v)
        if (name == kVarNames[v]) return RatFunc::var(v);
      fail("unknown indeterminate '" + name + "'");
    }
    fail("unexpected character");
  }
};
}  // namespace

RatFunc RatFunc::parse(const std::string& s) {
  Parser p{s};
  RatFunc r = p.expr();
  p.skip();
  if (p.pos != s.size()) p.fail("trailing input");
  return r.normalized();
}

}  // namespace macsel
