#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace macsel {

// Indeterminates of the coefficient field. Exponents are packed into one 64-bit
// word, 10 bits per variable with the top bit of each field kept as a guard.
inline constexpr int kNumVars = 6;
enum Var : int { kQ = 0, kT = 1, kA = 2, kB = 3, kZ = 4, kAlpha = 5 };
inline constexpr std::array<const char*, kNumVars> kVarNames = {"q", "t", "a", "b", "z", "alpha"};
inline constexpr int kFieldBits = 10;
inline constexpr int kMaxExp = 511;

using Mono = std::uint64_t;

struct ExponentOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};
struct NotDivisible : std::domain_error {
  using std::domain_error::domain_error;
};

constexpr int field_shift(int v) { return (kNumVars - 1 - v) * kFieldBits; }

constexpr Mono make_guard_mask() {
  Mono g = 0;
  for (int v = 0; v < kNumVars; ++v) g |= Mono{1} << (field_shift(v) + kFieldBits - 1);
  return g;
}
inline constexpr Mono kGuardMask = make_guard_mask();

inline int mono_exp(Mono m, int v) { return static_cast<int>((m >> field_shift(v)) & 0x3ff); }
inline Mono mono_var(int v, int e) {
  if (e < 0 || e > kMaxExp) throw ExponentOverflow("exponent out of range");
  return Mono(e) << field_shift(v);
}
inline Mono mono_mul(Mono a, Mono b) {
  Mono s = a + b;
  if (s & kGuardMask) throw ExponentOverflow("exponent overflow in monomial product");
  return s;
}
inline bool mono_divides(Mono d, Mono m) { return (((m | kGuardMask) - d) & kGuardMask) == kGuardMask; }
inline Mono mono_field_mask(int v) { return Mono(0x3ff) << field_shift(v); }
Mono mono_min(Mono a, Mono b);
int mono_total_degree(Mono m);
std::array<int, kNumVars> mono_unpack(Mono m);
Mono mono_pack(const std::array<int, kNumVars>& e);

// Sparse multivariate polynomial over Z, terms sorted by decreasing monomial
// (lex order q > t > a > b > z > alpha).
class MultiPoly {
 public:
  struct Term {
    Mono m;
    mpz_class c;
  };

  MultiPoly() = default;
  MultiPoly(long c);  // NOLINT implicit constant
  explicit MultiPoly(const mpz_class& c);
  static MultiPoly var(int v, int e = 1);
  static MultiPoly monomial(const mpz_class& c, Mono m);
  static MultiPoly from_terms(std::vector<Term> terms);  // any order, combines

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m == 0); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const { return terms_.size() == 1 && terms_[0].m == 0 && terms_[0].c == 1; }
  const Term& lead() const { return terms_.front(); }
  mpz_class constant_term() const;

  int degree(int v) const;
  int min_degree(int v) const;
  int total_degree() const;
  unsigned used_vars() const;  // bitmask
  Mono min_mono() const;       // componentwise minimum exponent
  mpz_class content() const;   // positive gcd of coefficients

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& mul_scalar(const mpz_class& c);
  MultiPoly& mul_mono(Mono m);
  MultiPoly& div_scalar_exact(const mpz_class& c);
  MultiPoly& div_mono_exact(Mono m);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned e) const;

  // Lowest-order signed hash of the coefficient data, used for memo keys.
  std::size_t hash() const;
  std::string to_string() const;
  int compare(const MultiPoly& o) const;  // total order, used for canonical tie breaking

 private:
  std::vector<Term> terms_;
  friend class PolyBuilder;
};

// Exact division; throws NotDivisible.
MultiPoly divexact(const MultiPoly& a, const MultiPoly& b);
// Returns true and sets *quot if b divides a.
bool try_divide(const MultiPoly& a, const MultiPoly& b, MultiPoly* quot);

// gcd over Z[q,t,...], normalized with positive leading coefficient.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

// Statistics of gcd calls, for benchmarking.
struct GcdStats {
  unsigned long calls = 0;
  unsigned long trivial = 0;
  unsigned long primes = 0;
};
GcdStats& gcd_stats();

}  // namespace macsel
