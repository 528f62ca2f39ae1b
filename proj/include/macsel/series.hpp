#pragma once

#include <map>
#include <vector>

#include "macsel/qfactorial.hpp"
#include "macsel/symfunc.hpp"

namespace macsel {

using Exps = std::vector<int>;

// Truncated Laurent series in nvars variables with RatFunc coefficients.
// Exponents are bounded below by lo; a term is kept iff sum_v (e_v - lo_v) <= order.
// Products add the lower bounds and take the smaller order, so every stored
// coefficient is exact.
class Series {
 public:
  Series() = default;
  Series(int nvars, int order, Exps lo = {});
  static Series constant(int nvars, int order, const RatFunc& c);

  int nvars() const { return nv_; }
  int order() const { return order_; }
  const Exps& lo() const { return lo_; }
  const std::map<Exps, RatFunc>& terms() const { return c_; }
  RatFunc coeff(const Exps& e) const;
  bool in_range(const Exps& e) const;
  void add_term(const Exps& e, const RatFunc& c);

  Series& operator+=(const Series& o);
  Series& scale(const RatFunc& c);
  friend Series operator*(const Series& a, const Series& b);

 private:
  int nv_ = 0;
  int order_ = 0;
  Exps lo_;
  std::map<Exps, RatFunc> c_;
};

// (alpha z)_inf / (beta z)_inf with z = x^e, expanded as
// sum_k prod_{i<k} (beta - alpha q^i)/(1 - q^{i+1}) z^k.
Series qratio_series(int nvars, int order, const Exps& e, const RatFunc& alpha, const RatFunc& beta,
                     const QT& qt = {});
// (c z; q)_N as a finite sum, z = x^e (e may be negative).
Series qpoch_poly_series(int nvars, int order, const Exps& e, const RatFunc& c, int N, const QT& qt = {});
// (1 - c z)/(1 - d z) expanded in z = x^e.
Series linear_ratio_series(int nvars, int order, const Exps& e, const RatFunc& c, const RatFunc& d);

// f(s x_off, ..., s x_{off+count-1}) for f in count variables, scale s applied per degree.
Series embed_symmetric(const SymSeries& f, int nvars, int order, int off, int count,
                       const RatFunc& scale = RatFunc(1));

// Exponent vectors weakly decreasing inside each block (block sizes given), with
// lo <= e and shifted total degree <= order.
std::vector<Exps> dominant_exponents(const std::vector<int>& blocks, int order, const Exps& lo);

}  // namespace macsel
