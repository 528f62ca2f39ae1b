#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>

#include "macsel/poly.hpp"

namespace macsel {

enum class GcdPolicy { kAlways, kLazy };
// Process-wide policy (set once at startup; not synchronized).
GcdPolicy& gcd_policy();

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Element of Q(q,t,a,b,z,alpha): numerator / denominator over Z. In canonical
// form the two are coprime and the denominator has positive leading coefficient.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(long c) : num_(c) {}  // NOLINT implicit constant
  explicit RatFunc(const mpq_class& c);
  explicit RatFunc(MultiPoly num) : num_(std::move(num)) {}
  RatFunc(MultiPoly num, MultiPoly den);  // normalizes; throws on zero denominator

  // var^e with e possibly negative.
  static RatFunc var(int v, int e = 1);
  // Laurent monomial c * prod var^e.
  static RatFunc monomial(const mpz_class& c, const std::array<int, kNumVars>& e);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_normalized() const { return normalized_; }

  RatFunc& normalize();
  RatFunc normalized() const {
    RatFunc r(*this);
    r.normalize();
    return r;
  }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  // Mathematical equality via cross multiplication.
  friend bool operator==(const RatFunc& a, const RatFunc& b);

  RatFunc inverse() const;
  RatFunc pow(int e) const;

  // Substitute variables; unset entries are left alone.
  RatFunc substitute(const std::array<std::optional<RatFunc>, kNumVars>& vals) const;

  std::string to_string() const;  // canonical string (normalizes a copy)
  static RatFunc parse(const std::string& s);

 private:
  MultiPoly num_;
  MultiPoly den_{1};
  bool normalized_ = true;
};

inline std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.to_string(); }

// Convenience: commonly used indeterminates.
inline RatFunc rq(int e = 1) { return RatFunc::var(kQ, e); }
inline RatFunc rt(int e = 1) { return RatFunc::var(kT, e); }
inline RatFunc ra(int e = 1) { return RatFunc::var(kA, e); }
inline RatFunc rb(int e = 1) { return RatFunc::var(kB, e); }

MultiPoly substitute_poly(const MultiPoly& p, int v, const MultiPoly& val);
RatFunc substitute_poly(const MultiPoly& p, const std::array<std::optional<RatFunc>, kNumVars>& vals);

// Numeric evaluation at a point; conv maps an mpz coefficient to T.
template <class T, class Conv>
T eval_poly(const MultiPoly& p, const std::array<T, kNumVars>& x, Conv conv) {
  std::array<std::vector<T>, kNumVars> pw;
  T acc = conv(mpz_class(0));
  for (auto& term : p.terms()) {
    T v = conv(term.c);
    for (int k = 0; k < kNumVars; ++k) {
      int e = mono_exp(term.m, k);
      if (!e) continue;
      auto& tab = pw[k];
      if (tab.empty()) tab.push_back(conv(mpz_class(1)));
      while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * x[k]);
      v = v * tab[e];
    }
    acc = acc + v;
  }
  return acc;
}

template <class T, class Conv>
T eval_ratfunc(const RatFunc& r, const std::array<T, kNumVars>& x, Conv conv) {
  return eval_poly(r.num(), x, conv) / eval_poly(r.den(), x, conv);
}

}  // namespace macsel
