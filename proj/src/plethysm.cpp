#include "macsel/plethysm.hpp"

namespace macsel {

Alphabet Alphabet::letters(std::vector<RatFunc> xs) {
  Alphabet a;
  a.letters_ = std::move(xs);
  return a;
}

Alphabet Alphabet::fraction(const RatFunc& u, const RatFunc& v, const RatFunc& t) {
  Alphabet a;
  a.fracs_.push_back({u, v, t});
  return a;
}

Alphabet Alphabet::mixed(const Partition& lambda, int n, const RatFunc& a, const RatFunc& t) {
  std::vector<RatFunc> xs;
  for (int i = 1; i <= n; ++i) xs.push_back(a * rq(lambda[i]) * t.pow(n - i));
  return letters(std::move(xs)) + fraction(RatFunc(1), a, t);
}

Alphabet& Alphabet::operator+=(const Alphabet& o) {
  letters_.insert(letters_.end(), o.letters_.begin(), o.letters_.end());
  fracs_.insert(fracs_.end(), o.fracs_.begin(), o.fracs_.end());
  return *this;
}

RatFunc Alphabet::power_sum(int r) const {
  RatFunc s;
  for (auto& x : letters_) s += x.pow(r);
  for (auto& f : fracs_) s += (f.u.pow(r) - f.v.pow(r)) / (RatFunc(1) - f.t.pow(r));
  return s;
}

RatFunc pleth_eval(const SymSeries& f, const Alphabet& A) {
  std::map<int, RatFunc> pr;
  auto p = [&](int r) -> const RatFunc& {
    auto it = pr.find(r);
    if (it == pr.end()) it = pr.emplace(r, A.power_sum(r)).first;
    return it->second;
  };
  RatFunc out;
  for (auto& [rho, c] : to_power_basis(f)) {
    RatFunc term = c;
    for (int r : rho.parts()) term *= p(r);
    out += term;
  }
  return out;
}

}  // namespace macsel
