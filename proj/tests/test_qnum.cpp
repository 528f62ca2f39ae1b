#include <gtest/gtest.h>

#include <random>

#include "macsel/qnum.hpp"

using namespace macsel;

namespace {

QContext half() { return QContext::make("1/2", 256); }

BigReal B(const std::string& s) { return BigReal::parse(s); }

void expect_close(const BigReal& a, const BigReal& b, double tol) {
  EXPECT_LE(rel_diff(a, b).to_double(), tol) << a.str() << " vs " << b.str();
}

LatticeFn constant_fn(const BigReal& c) {
  LatticeFn f;
  f.eval = [c](const int*) { return c; };
  return f;
}

}  // namespace

TEST(QPoch, Basics) {
  auto ctx = half();
  PrecisionScope ps(ctx.precision);
  EXPECT_EQ(qpoch_inf(BigReal(0L), ctx).value, BigReal(1L));
  expect_close(qpoch_num(ctx.q, ctx, 1) / (BigReal(1L) - ctx.q), BigReal(1L), 1e-70);
  // (b)_{-1} = 1/(1 - b/q)
  expect_close(qpoch_num(B("1/3"), ctx, -1), BigReal(1L) / (BigReal(1L) - B("2/3")), 1e-70);
}

TEST(QPoch, InfiniteProductAgainstLongDirectProduct) {
  auto ctx = half();
  PrecisionScope ps(ctx.precision);
  QValue v = qpoch_inf(ctx.q, ctx);
  BigReal direct(1L), qi = ctx.q;
  for (int i = 0; i < 600; ++i, qi *= ctx.q) direct *= BigReal(1L) - qi;
  expect_close(v.value, direct, 1e-70);
  EXPECT_LT(v.tail.to_double(), 1e-70);
  EXPECT_GE(v.K, 120);
}

TEST(QGamma, SmallIntegersAndPoles) {
  auto ctx = half();
  PrecisionScope ps(ctx.precision);
  EXPECT_EQ(qgamma(BigReal(1L), ctx), BigReal(1L));
  EXPECT_EQ(qgamma(BigReal(2L), ctx), BigReal(1L));
  EXPECT_THROW(qgamma(BigReal(0L), ctx), QPole);
  EXPECT_THROW(qgamma(BigReal(-3L), ctx), QPole);
  EXPECT_NO_THROW(qgamma(B("-5/2"), ctx));
}

TEST(QGamma, FunctionalEquation) {
  auto ctx = half();
  PrecisionScope ps(ctx.precision);
  BigReal x = B("1/3");
  expect_close(qgamma(x + BigReal(1L), ctx) / qgamma(x, ctx),
               (BigReal(1L) - pow(ctx.q, x)) / (BigReal(1L) - ctx.q), 1e-70);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    BigReal y(u(rng));
    expect_close(qgamma(y + BigReal(1L), ctx), (BigReal(1L) - pow(ctx.q, y)) / (BigReal(1L) - ctx.q) * qgamma(y, ctx),
                 1e-70);
  }
}

TEST(QGamma, ApproachesGammaAsQTendsToOne) {
  // Error of the q-Beta closed form against B(2, 3/2) shrinks as q -> 1.
  double prev = 1e9;
  for (const char* q : {"0.9", "0.99", "0.999"}) {
    auto ctx = QContext::make(q, 128);
    PrecisionScope ps(ctx.precision);
    BigReal a(2L), b = B("3/2");
    BigReal qb = qgamma(a, ctx) * qgamma(b, ctx) / qgamma(a + b, ctx);
    BigReal classical = gamma(a) * gamma(b) / gamma(a + b);
    double err = abs(qb - classical).to_double();
    EXPECT_LT(err, prev) << q;
    prev = err;
  }
}

TEST(QInt, GeometricSums) {
  auto ctx = half();
  PrecisionScope ps(ctx.precision);
  QIntResult one = qint_multi(constant_fn(BigReal(1L)), 1, ctx);
  EXPECT_TRUE(one.converged);
  expect_close(one.value, BigReal(1L), 1e-29);

  LatticeFn f;
  f.eval = [&](const int* k) { return pow(ctx.q, static_cast<long>(k[0])); };  // x^{alpha-1}, alpha = 2
  QIntResult r = qint_multi(f, 1, ctx);
  expect_close(r.value, B("2/3"), 1e-29);
}

TEST(QInt, SeparableIntegrandFactorizes) {
  auto ctx = half();
  PrecisionScope ps(ctx.precision);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  for (int c = 0; c < 5; ++c) {
    BigReal e1(u(rng)), e2(u(rng));
    auto pw = [&](const BigReal& e) {
      LatticeFn f;
      f.eval = [&ctx, e](const int* k) { return pow(ctx.q, e * BigReal(static_cast<long>(k[0]))); };
      return f;
    };
    LatticeFn both;
    both.eval = [&](const int* k) {
      return pow(ctx.q, e1 * BigReal(static_cast<long>(k[0])) + e2 * BigReal(static_cast<long>(k[1])));
    };
    BigReal prod = qint_multi(pw(e1), 1, ctx).value * qint_multi(pw(e2), 1, ctx).value;
    expect_close(qint_multi(both, 2, ctx).value, prod, 1e-28);
  }
}

TEST(QInt, WorkerCountDoesNotChangeTheValue) {
  auto ctx = half();
  PrecisionScope ps(ctx.precision);
  LatticeFn f;
  f.eval = [&](const int* k) {
    return BigReal(1L) / (BigReal(1L) + pow(ctx.q, static_cast<long>(k[0] + 2 * k[1] + 3 * k[2])));
  };
  QIntResult a = qint_multi(f, 3, ctx);
  ctx.workers = 4;
  QIntResult b = qint_multi(f, 3, ctx);
  EXPECT_EQ(a.value.str(70), b.value.str(70));
}

TEST(QInt, NonDecayingTailIsReported) {
  auto ctx = half();
  ctx.max_shells = 60;
  PrecisionScope ps(ctx.precision);
  LatticeFn f;
  f.eval = [&](const int* k) { return pow(B("2"), static_cast<long>(k[0])); };  // cancels the measure
  QIntResult r = qint_multi(f, 1, ctx);
  EXPECT_FALSE(r.converged);
}

TEST(MacdonaldNum, NormalizationAndSimpleValues) {
  auto ctx = half();
  PrecisionScope ps(ctx.precision);
  // t = q: P_(1) = x1 + x2, value at <0> = t + 1.
  expect_close(eval_macdonald_num(Partition{1}, 2, 1, {BigReal(1L), BigReal(1L)}, ctx), B("4/3"), 1e-70);
  for (const Partition& l : {Partition{2}, Partition{2, 1}, Partition{1, 1, 1}}) {
    std::vector<BigReal> base;
    for (int i = 1; i <= 3; ++i) base.push_back(pow(ctx.q, static_cast<long>(2 * (3 - i))));
    expect_close(eval_macdonald_num(l, 3, 2, base, ctx), BigReal(1L), 1e-70);
  }
}

TEST(MacdonaldNum, MatchesNumericGramSchmidtOracle) {
  // Weight 2 in power sums: m2 = p2, m11 = (p1^2 - p2)/2, with
  // <p_rho, p_rho> = z_rho prod (1-q^r)/(1-t^r). P_(2) = m2 + c m11, c = -<m2,m11>/<m11,m11>.
  auto ctx = half();
  PrecisionScope ps(ctx.precision);
  const int k = 2;
  BigReal q = ctx.q, t = pow(q, static_cast<long>(k)), one(1L);
  BigReal w11 = BigReal(2L) * (one - q) * (one - q) / ((one - t) * (one - t));
  BigReal w2 = BigReal(2L) * (one - q * q) / (one - t * t);
  BigReal m2m11 = -w2 / BigReal(2L);
  BigReal m11m11 = (w11 + w2) / BigReal(4L);
  BigReal c = -m2m11 / m11m11;
  auto P2 = [&](const BigReal& x, const BigReal& y) { return x * x + y * y + c * x * y; };
  BigReal x = B("0.3141"), y = B("-1.275");
  BigReal oracle = P2(x, y) / P2(t, one);
  expect_close(eval_macdonald_num(Partition{2}, 2, k, {x, y}, ctx), oracle, 1e-25);
}

TEST(QChecks, QBetaAndAhk) {
  auto ctx = half();
  EXPECT_TRUE(check_qbeta("2", "2", ctx).passed());
  Report r = check_ahk(2, 1, "2", "2", ctx);
  EXPECT_TRUE(r.passed()) << to_json(r).dump(1);
  EXPECT_TRUE(check_ahk(1, 3, "2", "2", ctx).passed());  // k drops out at n = 1
}

TEST(QChecks, KanekoMacdonald) {
  auto ctx = half();
  Report r = check_qkm(2, 1, "2", "2", Partition{1}, ctx);
  EXPECT_TRUE(r.passed()) << to_json(r).dump(1);
}

TEST(QChecks, Thm41SmallCasesAndSwap) {
  auto ctx = half();
  Report r = check_thm41(1, 1, 1, "3/2", "2", "5/2", {}, {}, ctx);
  EXPECT_TRUE(r.passed()) << to_json(r).dump(1);
  EXPECT_LT(std::stod(r.info["swap_rel_diff"].get<std::string>()), 1e-60);
  Report m0 = check_thm41(2, 0, 1, "3/2", "2", "5/2", Partition{1}, {}, ctx);
  EXPECT_TRUE(m0.passed()) << to_json(m0).dump(1);
  EXPECT_TRUE(m0.info.contains("qkm_rel_diff"));
}

TEST(QChecks, Thm41PoleIsSkipped) {
  auto ctx = half();
  Report r = check_thm41(2, 1, 1, "3/2", "2", "1", {}, {}, ctx);  // beta-(n-1)k = 0
  EXPECT_EQ(r.status, "skipped");
}

TEST(QChecks, Thm42SmallCase) {
  auto ctx = half();
  Report r = check_thm42(1, 1, 1, "2", "2", "3/4", {}, {}, ctx);
  EXPECT_TRUE(r.passed()) << to_json(r).dump(1);
  EXPECT_EQ(r.info["prefactor_verdict"].get<std::string>().rfind("indistinguishable", 0), 0u);
  Report pole = check_thm42(1, 1, 1, "2", "2", "1", {}, {}, ctx);
  EXPECT_TRUE(pole.passed()) << to_json(pole).dump(1);
  EXPECT_TRUE(pole.info.contains("pole_limit"));
}

TEST(QChecks, Thm42DisplayedNormalizationIsDetected) {
  auto ctx = half();
  Report r = check_thm42(1, 1, 2, "2", "2", "3/4", {}, {}, ctx);
  ASSERT_TRUE(r.passed());
  // Gamma_q(k) in place of Gamma_q(k+1) is off by [2]_q^{-2} = 4/9.
  BigReal ratio = B(r.info["gamma_k_denominator"]["lhs_over_rhs"].get<std::string>());
  expect_close(ratio, B("4/9"), 1e-20);
  EXPECT_GT(std::stod(r.info["displayed_exponent"]["rel_diff"].get<std::string>()), 1e-3);
}

TEST(QChecks, Thm42WithEmptyXReducesToKanekoMacdonald) {
  auto ctx = half();
  // n = 0: beta2 = k + 1 - beta1 = 5/4 plays the role of beta.
  Report a = check_thm42(0, 2, 1, "1", "2", "3/4", {}, Partition{1}, ctx);
  Report b = check_qkm(2, 1, "2", "5/4", Partition{1}, ctx);
  ASSERT_TRUE(a.passed()) << to_json(a).dump(1);
  ASSERT_TRUE(b.passed());
  expect_close(B(a.info["lhs"].get<std::string>()), B(b.info["lhs"].get<std::string>()), 1e-20);
}

TEST(QChecks, PrecisionDoublingIsStable) {
  auto lo = half();
  auto hi = QContext::make("1/2", 512);
  hi.tail_tol = 1e-60;
  Report a = check_ahk(2, 1, "3/2", "2", lo);
  Report b = check_ahk(2, 1, "3/2", "2", hi);
  PrecisionScope ps(512);
  BigReal va = B(a.info["lhs"].get<std::string>()), vb = B(b.info["lhs"].get<std::string>());
  BigReal tail = B(a.info["integral"]["tail"].get<std::string>());
  // Printed values carry 25 digits; allow that rounding on top of the tail.
  EXPECT_LE(abs(va - vb).to_double(), tail.to_double() + 1e-24 * abs(va).to_double());
}
