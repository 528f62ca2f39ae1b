#include <gtest/gtest.h>

#include <random>

#include "macsel/ratfunc.hpp"

using namespace macsel;

namespace {
MultiPoly P(const std::string& s) {
  RatFunc r = RatFunc::parse(s);
  EXPECT_TRUE(r.den().is_one());
  return r.num();
}

MultiPoly random_poly(std::mt19937& rng, unsigned vars, int deg, int terms) {
  std::vector<MultiPoly::Term> tt;
  std::uniform_int_distribution<int> e(0, deg), c(-9, 9);
  for (int k = 0; k < terms; ++k) {
    std::array<int, kNumVars> ex{};
    for (int v = 0; v < kNumVars; ++v)
      if (vars & (1u << v)) ex[v] = e(rng);
    tt.push_back({mono_pack(ex), c(rng)});
  }
  return MultiPoly::from_terms(tt);
}
}  // namespace

TEST(Mono, PackingAndDivisibility) {
  Mono a = mono_pack({3, 1, 0, 0, 0, 2});
  Mono b = mono_pack({1, 1, 0, 0, 0, 0});
  EXPECT_TRUE(mono_divides(b, a));
  EXPECT_FALSE(mono_divides(a, b));
  EXPECT_EQ(mono_unpack(a - b), (std::array<int, kNumVars>{2, 0, 0, 0, 0, 2}));
  EXPECT_THROW(mono_mul(mono_var(kQ, 300), mono_var(kQ, 300)), ExponentOverflow);
  EXPECT_GT(mono_var(kQ, 1), mono_var(kT, 100));  // lex with q first
}

TEST(MultiPoly, Arithmetic) {
  MultiPoly a = P("1-q"), b = P("1+q");
  EXPECT_EQ(a * b, P("1-q^2"));
  EXPECT_EQ((a * b).to_string(), "-q^2+1");
  EXPECT_EQ(a + b, MultiPoly(2));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(P("(q+t)^3"), P("q^3+3*q^2*t+3*q*t^2+t^3"));
  EXPECT_EQ(P("2*alpha^2*b-z").degree(kAlpha), 2);
}

TEST(MultiPoly, ExactDivision) {
  MultiPoly a = P("(1-q*t)*(1-q^2)*(a-t)");
  EXPECT_EQ(divexact(a, P("1-q*t")), P("(1-q^2)*(a-t)"));
  EXPECT_FALSE(try_divide(a, P("1-q^3"), nullptr));
  EXPECT_THROW(divexact(P("q+1"), P("q-1")), NotDivisible);
}

TEST(MultiPoly, GcdKnownFactors) {
  EXPECT_EQ(gcd(P("1-q^2"), P("1-q^3")), P("q-1"));
  EXPECT_EQ(gcd(P("(1-q*t)*(1+a)"), P("(1-q*t)^2*(a-t)")), P("q*t-1"));
  EXPECT_EQ(gcd(P("6*q^2*t"), P("4*q*t^3")), P("2*q*t"));
  EXPECT_EQ(gcd(P("q^2-t^2"), P("q^3-t^3")), P("q-t"));
  EXPECT_EQ(gcd(P("0"), P("-3*q")), P("3*q"));
  EXPECT_EQ(gcd(P("2*q+2"), P("4*q+4")), P("2*q+2"));
  EXPECT_TRUE(gcd(P("1-q*t"), P("1-q^2*t")).is_one());
}

TEST(MultiPoly, GcdRandomCofactors) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    unsigned vars = 1 + rng() % 15;
    MultiPoly g = random_poly(rng, vars, 3, 4), u = random_poly(rng, vars, 3, 4), w = random_poly(rng, vars, 3, 4);
    if (g.is_zero() || u.is_zero() || w.is_zero()) continue;
    MultiPoly h = gcd(g * u, g * w);
    // g divides the gcd, and the gcd divides both products
    EXPECT_TRUE(try_divide(h, g, nullptr)) << g.to_string();
    EXPECT_TRUE(try_divide(g * u, h, nullptr));
    EXPECT_TRUE(try_divide(g * w, h, nullptr));
    MultiPoly cu = divexact(g * u, h), cw = divexact(g * w, h);
    EXPECT_TRUE(gcd(cu, cw).is_one());
  }
}
