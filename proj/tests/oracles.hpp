#pragma once

// Reference computations written directly from the definitions, shared by the
// unit tests and the acceptance binary.

#include <map>
#include <vector>

#include "macsel/bigreal.hpp"
#include "macsel/symfunc.hpp"

namespace oracle {

using macsel::Partition;
using macsel::RatFunc;

using PowerVec = std::map<Partition, RatFunc>;

// <p_rho, p_sigma> = delta z_rho prod (1-q^{rho_i})/(1-t^{rho_i}), with z_rho by hand.
inline RatFunc qt_pairing(const Partition& rho) {
  static const std::map<Partition, long> z = {{Partition{1}, 1},       {Partition{2}, 2},    {Partition{1, 1}, 2},
                                              {Partition{3}, 3},       {Partition{2, 1}, 2}, {Partition{1, 1, 1}, 6}};
  RatFunc w(z.at(rho));
  for (int r : rho.parts()) w *= (RatFunc(1) - macsel::rq(r)) / (RatFunc(1) - macsel::rt(r));
  return w;
}

inline RatFunc dot(const PowerVec& f, const PowerVec& g) {
  RatFunc s(0);
  for (const auto& [rho, c] : f) {
    auto it = g.find(rho);
    if (it != g.end()) s += c * it->second * qt_pairing(rho);
  }
  return s;
}

// Monomial symmetric functions in power sums (weights 2 and 3), inverted by hand
// from p_2 = m_2, p_11 = m_2 + 2m_11, p_3 = m_3, p_21 = m_3 + m_21,
// p_111 = m_3 + 3m_21 + 6m_111.
inline PowerVec m_in_p(const Partition& l) {
  RatFunc half = RatFunc(mpq_class(1, 2)), sixth = RatFunc(mpq_class(1, 6));
  if (l == Partition{2}) return {{Partition{2}, 1}};
  if (l == Partition{1, 1}) return {{Partition{1, 1}, half}, {Partition{2}, -half}};
  if (l == Partition{3}) return {{Partition{3}, 1}};
  if (l == Partition{2, 1}) return {{Partition{2, 1}, 1}, {Partition{3}, -1}};
  if (l == Partition{1, 1, 1})
    return {{Partition{1, 1, 1}, sixth}, {Partition{2, 1}, RatFunc(mpq_class(-1, 2))}, {Partition{3}, RatFunc(mpq_class(1, 3))}};
  throw std::invalid_argument("no hand table for this partition");
}

// Coefficient c in P_top = m_top + c m_bottom when bottom is the only partition
// below top in dominance order, as for P_(2) and P_(2,1).
inline RatFunc gram_schmidt_coeff(const Partition& top, const Partition& bottom) {
  PowerVec mt = m_in_p(top), mb = m_in_p(bottom);
  return -dot(mt, mb) / dot(mb, mb);
}

// s_lambda(x) as a ratio of alternants, exactly.
inline mpq_class det(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  mpq_class d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

inline mpq_class power(const mpq_class& x, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

inline mpq_class schur_alternant(const Partition& lambda, const std::vector<mpq_class>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<mpq_class>> num(n, std::vector<mpq_class>(n)), den = num;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      num[i][j] = power(x[i], lambda[j + 1] + n - j - 1);
      den[i][j] = power(x[i], n - j - 1);
    }
  return det(num) / det(den);
}

// Value of a monomial-basis series with coefficients in Q(alpha) at alpha = a.
inline mpq_class eval_at_alpha(const macsel::SymSeries& f, const mpq_class& a, const std::vector<mpq_class>& x) {
  std::array<mpq_class, macsel::kNumVars> pt;
  for (auto& v : pt) v = 1;
  pt[macsel::kAlpha] = a;
  auto conv = [](const mpz_class& z) { return mpq_class(z); };
  mpq_class acc = 0;
  const int n = static_cast<int>(x.size());
  for (const auto& [nu, c] : f.coeffs()) {
    if (nu.length() > n) continue;
    mpq_class cv = macsel::eval_ratfunc(c, pt, conv);
    for (const auto& perm : macsel::distinct_permutations(nu.padded(n))) {
      mpq_class m = cv;
      for (int i = 0; i < n; ++i) m *= power(x[i], perm[i]);
      acc += m;
    }
  }
  return acc;
}

// Largest |c_Macdonald(q, t = q^{1/alpha}) - c_Jack(alpha)| over the monomial
// coefficients of P_lambda, at q = 1 - eps.
inline double macdonald_jack_gap(const Partition& lambda, const std::string& alpha, const std::string& eps,
                                 mpfr_prec_t bits = 512) {
  using macsel::BigReal;
  macsel::PrecisionScope ps(bits);
  BigReal a = BigReal::parse(alpha);
  BigReal q = BigReal(1L) - BigReal::parse(eps);
  BigReal t = macsel::pow(q, BigReal(1L) / a);
  std::array<BigReal, macsel::kNumVars> mac, jack;
  for (auto& v : mac) v = BigReal(1L);
  for (auto& v : jack) v = BigReal(1L);
  mac[macsel::kQ] = q;
  mac[macsel::kT] = t;
  jack[macsel::kAlpha] = a;
  auto conv = [](const mpz_class& z) { return BigReal(z); };
  const auto& M = macsel::macdonald_basis().P(lambda);
  const auto& J = macsel::jack_basis().P(lambda);
  double worst = 0;
  for (const auto& [nu, c] : J.coeffs()) {
    BigReal cj = macsel::eval_ratfunc(c, jack, conv);
    BigReal cm = macsel::eval_ratfunc(M.coeff(nu), mac, conv);
    worst = std::max(worst, macsel::abs(cm - cj).to_double());
  }
  for (const auto& [nu, c] : M.coeffs())
    if (!J.coeffs().count(nu)) worst = std::max(worst, macsel::abs(macsel::eval_ratfunc(c, mac, conv)).to_double());
  return worst;
}

}  // namespace oracle
