#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "macsel/bigreal.hpp"
#include "macsel/partition.hpp"
#include "macsel/report.hpp"

namespace macsel {

struct QPole : std::domain_error {
  using std::domain_error::domain_error;
};

struct QContext {
  std::string q_text = "1/2";
  BigReal q;
  mpfr_prec_t precision = 256;
  double tail_tol = 1e-30;   // target relative tail of every truncated sum/product
  double check_tol = 1e-20;  // relative tolerance for identity checks
  int max_shells = 2000;
  int workers = 1;

  static QContext make(const std::string& q = "1/2", mpfr_prec_t precision = 256);
};

struct QValue {
  BigReal value;
  BigReal tail;  // relative bound
  int K = 0;     // number of factors or lattice shells used
};

// (b)_N for integer N (negative N allowed: (b)_{-N} = 1/(bq^{-N})_N).
BigReal qpoch_num(const BigReal& b, const QContext& ctx, long N);
// (b)_infinity, truncated once the multiplicative tail bound drops below tail_tol.
QValue qpoch_inf(const BigReal& b, const QContext& ctx);
// (b)_z = (b)_inf / (b q^z)_inf for real z.
BigReal qpoch_real(const BigReal& b, const BigReal& z, const QContext& ctx);
BigReal qgamma(const BigReal& x, const QContext& ctx);
// Distance from x to the nearest nonpositive integer (infinity-like 1e9 if x > 0.5).
double pole_distance(const BigReal& x);

// Integrand on the lattice x_i = q^{k_i}. prepare(s) runs single-threaded before
// any point with max k_i = s is evaluated, so lazily grown tables stay valid.
struct LatticeFn {
  std::function<void(int)> prepare;
  std::function<BigReal(const int*)> eval;
};

struct QIntResult {
  BigReal value;
  BigReal tail;       // estimated absolute tail beyond the last shell
  BigReal rate;       // observed shell decay ratio
  int K = 0;          // shells 0..K-1 summed
  long points = 0;
  bool converged = false;
};

// (1-q)^n sum_{k_i >= 0} f(q^k) q^{|k|}, summed shell by shell (shell s holds the
// points with max k_i = s) until the geometric tail estimate drops below
// tail_tol relative to the partial sum. Summation order is fixed, so the value
// does not depend on ctx.workers.
QIntResult qint_multi(const LatticeFn& f, int n, const QContext& ctx);

// Normalized Macdonald polynomial P_lambda(X)/P_lambda(<0>) at t = q^k, with
// coefficients taken from the exact basis.
class MacdonaldNum {
 public:
  MacdonaldNum(const Partition& lambda, int n, int k, const QContext& ctx);
  BigReal operator()(const std::vector<BigReal>& x) const;
  // Value at x_i = q^{a_i}; needs powers of q up to |lambda| max a_i.
  BigReal at_lattice(const int* a, const std::vector<BigReal>& qpow) const;
  bool is_constant() const { return terms_.size() == 1 && total_ == 0; }
  int weight() const { return total_; }

 private:
  struct Term {
    std::vector<int> e;
    BigReal c;
  };
  std::vector<Term> terms_;
  int n_ = 0;
  int total_ = 0;
};
BigReal eval_macdonald_num(const Partition& lambda, int n, int k, const std::vector<BigReal>& x, const QContext& ctx);

// Real parameters are passed as text ("3/2", "0.75") and parsed at ctx precision.
Report check_qbeta(const std::string& alpha, const std::string& beta, const QContext& ctx);
Report check_ahk(int n, int k, const std::string& alpha, const std::string& beta, const QContext& ctx);
Report check_qkm(int n, int k, const std::string& alpha, const std::string& beta, const Partition& lambda,
                 const QContext& ctx);
Report check_thm41(int n, int m, int k, const std::string& alpha1, const std::string& alpha2,
                   const std::string& beta, const Partition& lambda, const Partition& mu, const QContext& ctx);

struct Thm42Options {
  // Also integrate the printed x^{alpha} y^{alpha} integrand (one more (n+m)-fold sum).
  int printed_integrand_max_dim = 3;
  // Offset used when beta1 sits on a pole of the cross factor.
  long pole_offset_bits = 64;
};
Report check_thm42(int n, int m, int k, const std::string& alpha1, const std::string& alpha2,
                   const std::string& beta1, const Partition& lambda, const Partition& mu, const QContext& ctx,
                   const Thm42Options& opt = {});

// The fixed numeric acceptance matrix at the given context.
std::vector<Job> qnum_jobs(const QContext& ctx);

}  // namespace macsel
