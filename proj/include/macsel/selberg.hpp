#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "macsel/bigreal.hpp"
#include "macsel/partition.hpp"
#include "macsel/quadrature.hpp"
#include "macsel/report.hpp"

namespace macsel {

struct ChainError : std::domain_error {
  using std::domain_error::domain_error;
};

// One ordered cell of a chain. seq is the indexing sequence of the particular
// description (a, b or M); order lists the variable families bottom to top,
// e.g. "yxy" is y_1 < x_1 < y_2.
struct WeightedDomain {
  std::vector<int> seq;
  std::string order;
  BigReal weight;
};

// Weakly increasing sequences of the given length with entries in [lo, hi].
std::vector<std::vector<int>> weak_sequences(int length, int lo, int hi);
std::string order_from_a(const std::vector<int>& a, int k2);
std::string order_from_b(const std::vector<int>& b, int k1);

std::vector<WeightedDomain> enumerate_chain(int k1, int k2, const BigReal& beta, const BigReal& gamma);
std::vector<WeightedDomain> chain_b_form(int k1, int k2, const BigReal& beta, const BigReal& gamma);
std::vector<WeightedDomain> chain_tv(int k1, int k2, const BigReal& gamma);

// Normalized Jack polynomial P^{(alpha)}_lambda(X) / P^{(alpha)}_lambda(1^n) with
// coefficients from the exact basis evaluated at alpha.
class JackNum {
 public:
  JackNum(const Partition& lambda, int n, const BigReal& alpha);
  double operator()(const double* x) const;
  BigReal eval(const std::vector<BigReal>& x) const;
  bool is_constant() const { return weight_ == 0; }

 private:
  struct Term {
    std::vector<int> e;
    BigReal c;
    double cd;
  };
  std::vector<Term> terms_;
  int n_ = 0;
  int weight_ = 0;
};

struct SelbergParams {
  int k1 = 0, k2 = 0;
  std::string alpha1 = "2", alpha2 = "2", beta1 = "1/2", gamma = "1/4";
  std::string beta2;  // empty: gamma + 1 - beta1; otherwise beta1 is derived from it
  Partition lambda, mu;
};

// Right side of the sl3 Selberg integral with Jack polynomial insertions.
// beta2 = gamma + 1 - beta1. Throws std::domain_error on a nonpositive Gamma
// argument.
BigReal selberg_rhs(int k1, int k2, const BigReal& alpha1, const BigReal& alpha2, const BigReal& beta1,
                    const BigReal& beta2, const BigReal& gamma, const Partition& lambda, const Partition& mu);
// The same integral over the Tarasov-Varchenko chain, lambda = mu = 0.
BigReal tv_rhs(int k1, int k2, const BigReal& alpha1, const BigReal& alpha2, const BigReal& beta2,
               const BigReal& gamma);

struct SelbergOptions {
  std::string method = "mc";  // mc | quad
  long samples = 10'000'000;  // total over all domains
  std::uint64_t seed = 1;
  int workers = 1;
  int quad_order = 24;  // the error compares this order with its double
  double safety = 3;
  mpfr_prec_t precision = 256;
};

// Integrand of the theorem on one ordered cell, as a function on the unit cube
// under z_i = u_i u_{i+1} ... u_K.
struct CellIntegrand {
  CubeFn f;
  CubeShape shape;
};
CellIntegrand cell_integrand(const std::string& order, const SelbergParams& p);

Report check_thm31(const SelbergParams& p, const SelbergOptions& opt);
Report check_chain_forms(int k1, int k2, const std::string& beta, const std::string& gamma);
Report check_chainid(int k1, int k2, const std::string& gamma);
Report check_cc_symmetry(int k1, int k2, const std::string& beta1, const std::string& gamma);
Report check_sin_limit(const std::string& beta1, const std::string& gamma, int k1, int k2, int i, int j,
                       const std::string& x, const std::string& y);

// Per-domain breakdown of a check_thm31 report.
std::string domains_csv(const Report& r);

// The fixed acceptance matrix (integrals first, then chain checks).
std::vector<Job> selberg_jobs(const SelbergOptions& opt);

}  // namespace macsel
