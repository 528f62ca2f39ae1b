#include "macsel/qfactorial.hpp"

namespace macsel {

RatFunc poch(const RatFunc& b, int k, const QT& qt) {
  RatFunc r(1);
  if (k >= 0) {
    RatFunc x = b;
    for (int i = 0; i < k; ++i) {
      r *= RatFunc(1) - x;
      x *= qt.q;
    }
    return r;
  }
  RatFunc qi = qt.q.inverse(), x = b * qi;
  for (int i = 1; i <= -k; ++i) {
    RatFunc f = RatFunc(1) - x;
    if (f.is_zero()) throw PochPole("pole of (b;q)_k at negative k");
    r *= f;
    x *= qi;
  }
  return r.inverse();
}

RatFunc poch_reciprocal(const RatFunc& b, int k, const QT& qt) {
  if (k >= 0) {
    RatFunc p = poch(b, k, qt);
    if (p.is_zero()) throw PochPole("reciprocal of vanishing Pochhammer symbol");
    return p.inverse();
  }
  RatFunc r(1), qi = qt.q.inverse(), x = b * qi;
  for (int i = 1; i <= -k; ++i) {
    r *= RatFunc(1) - x;
    x *= qi;
  }
  return r;
}

RatFunc poch_ratio(const RatFunc& b, const RatFunc& c, int k, const QT& qt) {
  RatFunc num(1), den(1);
  bool neg = k < 0;
  RatFunc step = neg ? qt.q.inverse() : qt.q;
  RatFunc xb = neg ? b * step : b, xc = neg ? c * step : c;
  for (int i = 0; i < std::abs(k); ++i) {
    RatFunc fb = RatFunc(1) - xb, fc = RatFunc(1) - xc;
    if (!(fb == fc)) {
      num *= fb;
      den *= fc;
    }
    xb *= step;
    xc *= step;
  }
  if (neg) std::swap(num, den);
  if (den.is_zero()) throw PochPole("pole in Pochhammer ratio");
  return num / den;
}

RatFunc poch_partition(const RatFunc& b, const std::vector<int>& lambda, const QT& qt) {
  RatFunc r(1), x = b, tinv = qt.t.inverse();
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    r *= poch(x, lambda[i], qt);
    x *= tinv;
  }
  return r;
}

RatFunc poch_partition_cells(const RatFunc& b, const Partition& lambda, const QT& qt) {
  RatFunc r(1);
  for (const Cell& s : lambda.cells())
    r *= RatFunc(1) - b * qt.q.pow(Partition::coarm(s)) * qt.t.pow(-Partition::coleg(s));
  return r;
}

RatFunc c_poly(const Partition& lambda, const QT& qt) {
  RatFunc r(1);
  for (const Cell& s : lambda.cells()) r *= RatFunc(1) - qt.q.pow(lambda.arm(s)) * qt.t.pow(lambda.leg(s) + 1);
  return r;
}

RatFunc cprime_poly(const Partition& lambda, const QT& qt) {
  RatFunc r(1);
  for (const Cell& s : lambda.cells()) r *= RatFunc(1) - qt.q.pow(lambda.arm(s) + 1) * qt.t.pow(lambda.leg(s));
  return r;
}

RatFunc b_norm(const Partition& lambda, const QT& qt) { return c_poly(lambda, qt) / cprime_poly(lambda, qt); }

long n_stat(const std::vector<int>& lambda) {
  long n = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) n += static_cast<long>(i) * lambda[i];
  return n;
}

RatFunc tau(const Partition& lambda, const QT& qt) {
  RatFunc r = qt.q.pow(static_cast<int>(lambda.conjugate().n_stat())) * qt.t.pow(-static_cast<int>(lambda.n_stat()));
  return lambda.size() % 2 ? -r : r;
}

}  // namespace macsel
