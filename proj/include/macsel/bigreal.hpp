#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace macsel {

// MPFR value with its own precision. New values take the thread's working
// precision; binary operations round to the larger operand precision.
class BigReal {
 public:
  static mpfr_prec_t working_precision();
  static void set_working_precision(mpfr_prec_t bits);

  BigReal();
  BigReal(double d);  // NOLINT: implicit for literals
  BigReal(long n);    // NOLINT
  BigReal(int n) : BigReal(static_cast<long>(n)) {}  // NOLINT
  explicit BigReal(const mpz_class& z);
  explicit BigReal(const mpq_class& r);
  // Accepts "p/q" or a decimal literal; parsed exactly then rounded.
  static BigReal parse(const std::string& s);

  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal operator-() const;

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }

  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_); }

  bool is_zero() const { return mpfr_zero_p(v_); }
  bool is_finite() const { return mpfr_number_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long round_to_long() const;
  // Scientific notation with the given number of significant digits.
  std::string str(int digits = 30) const;

 private:
  explicit BigReal(mpfr_prec_t p, int);
  mpfr_t v_;
};

// Sets the working precision for the enclosing scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t bits) : saved_(BigReal::working_precision()) {
    BigReal::set_working_precision(bits);
  }
  ~PrecisionScope() { BigReal::set_working_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, long n);
BigReal sin_pi(const BigReal& x);  // sin(pi x)
BigReal gamma(const BigReal& x);
BigReal pi();
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);

// |a-b| / max(|a|,|b|), zero when both vanish.
BigReal rel_diff(const BigReal& a, const BigReal& b);

}  // namespace macsel
