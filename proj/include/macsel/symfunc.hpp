#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "macsel/partition.hpp"
#include "macsel/qfactorial.hpp"
#include "macsel/ratfunc.hpp"

namespace macsel {

using Coeffs = std::map<Partition, RatFunc>;

// Symmetric function in the monomial basis m_lambda. nvars < 0 means the
// stable ring (no bound on lengths); otherwise terms with l(lambda) > nvars
// are dropped.
class SymSeries {
 public:
  SymSeries() = default;
  explicit SymSeries(int nvars) : nvars_(nvars) {}
  SymSeries(int nvars, Coeffs c);

  int nvars() const { return nvars_; }
  const Coeffs& coeffs() const { return c_; }
  RatFunc coeff(const Partition& lambda) const;
  void add_term(const Partition& lambda, const RatFunc& c);
  bool is_zero() const;
  int max_degree() const;

  SymSeries restrict(int n) const;
  SymSeries truncate(int max_degree) const;
  SymSeries& operator+=(const SymSeries& o);
  SymSeries& operator-=(const SymSeries& o);
  SymSeries& scale(const RatFunc& c);
  friend SymSeries operator+(SymSeries a, const SymSeries& b) { return a += b; }
  friend SymSeries operator-(SymSeries a, const SymSeries& b) { return a -= b; }
  friend SymSeries operator*(const RatFunc& c, SymSeries a) { return a.scale(c); }
  friend SymSeries operator*(const SymSeries& a, const SymSeries& b);
  friend bool operator==(const SymSeries& a, const SymSeries& b);

  static SymSeries monomial(const Partition& lambda, int nvars = -1);

 private:
  int nvars_ = -1;
  Coeffs c_;
};

// m_a m_b = sum_c N^c_{ab} m_c (stable structure constants).
const std::map<Partition, long>& monomial_product(const Partition& a, const Partition& b);

// Transition data between m and p bases in weight d.
struct Transition {
  std::vector<Partition> parts;  // partitions of d, reverse lex
  std::map<Partition, int> index;
  std::vector<std::vector<long>> p_in_m;       // p_rho = sum_lambda p_in_m[rho][lambda] m_lambda
  std::vector<std::vector<mpq_class>> m_in_p;  // m_lambda = sum_rho m_in_p[lambda][rho] p_rho
};
const Transition& transition(int d);

// Power-sum coordinates of a stable symmetric function.
Coeffs to_power_basis(const SymSeries& f);
SymSeries from_power_basis(const Coeffs& p);

using WeightFn = std::function<RatFunc(const Partition&)>;
RatFunc macdonald_weight(const Partition& rho);  // z_rho prod (1-q^r)/(1-t^r)
RatFunc jack_weight(const Partition& rho);       // z_rho alpha^{l(rho)}
RatFunc hall_weight(const Partition& rho);       // z_rho
RatFunc scalar_product(const SymSeries& f, const SymSeries& g, const WeightFn& w);

class PolyCache;

// Monic orthogonal basis P_lambda = m_lambda + sum_{mu < lambda} u m_mu obtained by
// Gram-Schmidt over the dominance order for a diagonal power-sum scalar product.
class OrthoBasis {
 public:
  OrthoBasis(std::string family, WeightFn weight);

  const std::string& family() const { return family_; }
  const SymSeries& P(const Partition& lambda);
  const Coeffs& P_power(const Partition& lambda);
  RatFunc norm(const Partition& lambda);  // <P_lambda, P_lambda>
  const WeightFn& weight() const { return weight_; }

  void set_cache(std::shared_ptr<PolyCache> cache);
  void clear_memory();
  std::size_t computed_weights();

 private:
  struct Entry {
    SymSeries P;
    Coeffs Pp;
    RatFunc norm;
  };
  const Entry& entry(const Partition& lambda);
  void compute_weight(int d);

  std::string family_;
  WeightFn weight_;
  std::recursive_mutex mu_;
  std::map<int, std::map<Partition, std::unique_ptr<Entry>>> blocks_;
  std::shared_ptr<PolyCache> cache_;
};

OrthoBasis& macdonald_basis();
OrthoBasis& jack_basis();

// Macdonald P and Q in n variables (n < 0: stable).
SymSeries macdonald_P(const Partition& lambda, int n = -1);
SymSeries macdonald_Q(const Partition& lambda, int n = -1);
// Normalized forms: t^{n(l)}/c'_l P_l and t^{-n(l)} c'_l Q_l.
SymSeries normalized_P(const Partition& lambda, int n = -1);
SymSeries normalized_Q(const Partition& lambda, int n = -1);
RatFunc normalized_P_factor(const Partition& lambda);  // t^{n(l)}/c'_l

// P_mu P_nu = sum_lambda f^lambda_{mu nu} P_lambda.
const Coeffs& lr_expansion(const Partition& mu, const Partition& nu);
RatFunc lr_coeff(const Partition& lambda, const Partition& mu, const Partition& nu);
RatFunc normalized_lr(const Partition& lambda, const Partition& mu, const Partition& nu);

SymSeries skew_Q(const Partition& lambda, const Partition& mu, int n = -1);
SymSeries skew_P(const Partition& lambda, const Partition& mu, int n = -1);
SymSeries normalized_skew_Q(const Partition& lambda, const Partition& mu, int n = -1);
SymSeries normalized_skew_P(const Partition& lambda, const Partition& mu, int n = -1);

SymSeries jack_P(const Partition& lambda, int n = -1);  // coefficients in Q(alpha)

// Direct evaluation at a point x_1..x_n (n = x.size()) by summing monomials.
RatFunc evaluate(const SymSeries& f, const std::vector<RatFunc>& x);
// <mu>_n scaled: x_i = scale q^{mu_i} t^{n-i}.
std::vector<RatFunc> principal_point(const Partition& mu, int n, const RatFunc& scale = RatFunc(1));
RatFunc principal_spec(const SymSeries& f, const Partition& mu, int n, const RatFunc& scale = RatFunc(1));

// Distinct permutations of lambda padded to n parts.
std::vector<std::vector<int>> distinct_permutations(const std::vector<int>& v);

}  // namespace macsel
