#pragma once

#include <vector>

#include "macsel/symfunc.hpp"

namespace macsel {

// Formal alphabet: a finite set of letters plus fractions (u - v)/(1 - t).
// p_r of a letter x is x^r; p_r[(u - v)/(1 - t)] = (u^r - v^r)/(1 - t^r).
class Alphabet {
 public:
  Alphabet() = default;
  static Alphabet letters(std::vector<RatFunc> xs);
  static Alphabet fraction(const RatFunc& u, const RatFunc& v, const RatFunc& t = rt());
  // a<lambda>_n + (1 - a)/(1 - t)
  static Alphabet mixed(const Partition& lambda, int n, const RatFunc& a, const RatFunc& t = rt());

  Alphabet& operator+=(const Alphabet& o);
  friend Alphabet operator+(Alphabet x, const Alphabet& y) { return x += y; }

  RatFunc power_sum(int r) const;
  const std::vector<RatFunc>& letter_list() const { return letters_; }
  bool finite() const { return fracs_.empty(); }

 private:
  struct Frac {
    RatFunc u, v, t;
  };
  std::vector<RatFunc> letters_;
  std::vector<Frac> fracs_;
};

// f[A] for a stable symmetric function f, computed through the power-sum basis.
RatFunc pleth_eval(const SymSeries& f, const Alphabet& A);

}  // namespace macsel
