#include "macsel/bigreal.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace macsel {

namespace {
thread_local mpfr_prec_t g_prec = 256;
}  // namespace

mpfr_prec_t BigReal::working_precision() { return g_prec; }
void BigReal::set_working_precision(mpfr_prec_t bits) {
  if (bits < MPFR_PREC_MIN || bits > 1 << 20) throw std::invalid_argument("precision out of range");
  g_prec = bits;
}

BigReal::BigReal(mpfr_prec_t p, int) { mpfr_init2(v_, p); }
BigReal::BigReal() : BigReal(g_prec, 0) { mpfr_set_zero(v_, 1); }
BigReal::BigReal(double d) : BigReal(g_prec, 0) { mpfr_set_d(v_, d, MPFR_RNDN); }
BigReal::BigReal(long n) : BigReal(g_prec, 0) { mpfr_set_si(v_, n, MPFR_RNDN); }
BigReal::BigReal(const mpz_class& z) : BigReal(g_prec, 0) { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
BigReal::BigReal(const mpq_class& r) : BigReal(g_prec, 0) { mpfr_set_q(v_, r.get_mpq_t(), MPFR_RNDN); }

BigReal BigReal::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpq_class r(s);
    r.canonicalize();
    return BigReal(r);
  }
  BigReal out;
  char* end = nullptr;
  mpfr_strtofr(out.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("not a number: " + s);
  return out;
}

BigReal::BigReal(const BigReal& o) : BigReal(o.precision(), 0) { mpfr_set(v_, o.v_, MPFR_RNDN); }
BigReal::BigReal(BigReal&& o) noexcept : BigReal(o.precision(), 0) { mpfr_swap(v_, o.v_); }
BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
BigReal& BigReal::operator=(BigReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
BigReal::~BigReal() { mpfr_clear(v_); }

#define MACSEL_BINOP(OP, FN)                                    \
  BigReal& BigReal::operator OP(const BigReal& o) {             \
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN); \
    FN(v_, v_, o.v_, MPFR_RNDN);                                \
    return *this;                                               \
  }
MACSEL_BINOP(+=, mpfr_add)
MACSEL_BINOP(-=, mpfr_sub)
MACSEL_BINOP(*=, mpfr_mul)
MACSEL_BINOP(/=, mpfr_div)
#undef MACSEL_BINOP

BigReal BigReal::operator-() const {
  BigReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

long BigReal::round_to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

std::string BigReal::str(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  if (!mpfr_number_p(v_)) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  std::vector<char> buf(digits + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return buf.data();
}

#define MACSEL_UNARY(NAME, FN)                 \
  BigReal NAME(const BigReal& x) {             \
    BigReal r(x);                              \
    FN(r.get(), x.get(), MPFR_RNDN);           \
    return r;                                  \
  }
MACSEL_UNARY(abs, mpfr_abs)
MACSEL_UNARY(sqrt, mpfr_sqrt)
MACSEL_UNARY(exp, mpfr_exp)
MACSEL_UNARY(log, mpfr_log)
MACSEL_UNARY(gamma, mpfr_gamma)
#undef MACSEL_UNARY

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal r = x.precision() >= y.precision() ? x : y;
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, long n) {
  BigReal r(x);
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

BigReal sin_pi(const BigReal& x) {
  // Reduce to [-1, 1] first so integers give an exact zero.
  BigReal r(x), two(2L);
  mpfr_fmod(r.get(), x.get(), two.get(), MPFR_RNDN);
  if (r.is_zero()) return BigReal(0L);
  if (mpfr_cmp_si(r.get(), 1) == 0 || mpfr_cmp_si(r.get(), -1) == 0) return BigReal(0L);
  BigReal p = pi();
  mpfr_mul(r.get(), r.get(), p.get(), MPFR_RNDN);
  mpfr_sin(r.get(), r.get(), MPFR_RNDN);
  return r;
}

BigReal pi() {
  BigReal r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

BigReal rel_diff(const BigReal& a, const BigReal& b) {
  BigReal scale = max(abs(a), abs(b));
  if (scale.is_zero()) return BigReal(0L);
  BigReal d = abs(a - b);
  return d / scale;
}

}  // namespace macsel
