#pragma once

#include <vector>

#include "macsel/partition.hpp"
#include "macsel/ratfunc.hpp"

namespace macsel {

struct PochPole : std::domain_error {
  using std::domain_error::domain_error;
};

// The pair of parameters (q, t) used by Pochhammer symbols; a specialization
// such as (q^2, q^2) is expressed by passing other values.
struct QT {
  RatFunc q = rq();
  RatFunc t = rt();
};

// (b; q)_k for integer k. Negative k gives 1 / prod_{i=1}^{-k} (1 - b q^{-i});
// a vanishing factor there raises PochPole.
RatFunc poch(const RatFunc& b, int k, const QT& qt = {});
// 1/(b; q)_k with the convention that it is 0 where (b)_k has a pole.
RatFunc poch_reciprocal(const RatFunc& b, int k, const QT& qt = {});
// (b)_k/(c)_k as one quotient; factor pairs are cancelled before testing for poles.
RatFunc poch_ratio(const RatFunc& b, const RatFunc& c, int k, const QT& qt = {});

// (b; q, t)_lambda = prod_i (b t^{1-i})_{lambda_i}; lambda may have negative parts.
RatFunc poch_partition(const RatFunc& b, const std::vector<int>& lambda, const QT& qt = {});
inline RatFunc poch_partition(const RatFunc& b, const Partition& lambda, const QT& qt = {}) {
  return poch_partition(b, lambda.parts(), qt);
}
// Product over boxes: prod_s (1 - b q^{a'(s)} t^{-l'(s)}).
RatFunc poch_partition_cells(const RatFunc& b, const Partition& lambda, const QT& qt = {});

RatFunc c_poly(const Partition& lambda, const QT& qt = {});       // prod (1 - q^a t^{l+1})
RatFunc cprime_poly(const Partition& lambda, const QT& qt = {});  // prod (1 - q^{a+1} t^l)
RatFunc b_norm(const Partition& lambda, const QT& qt = {});       // c / c'
RatFunc tau(const Partition& lambda, const QT& qt = {});          // (-1)^|l| q^{n(l')} t^{-n(l)}

long n_stat(const std::vector<int>& lambda);  // sum (i-1) lambda_i, any integer parts

}  // namespace macsel
