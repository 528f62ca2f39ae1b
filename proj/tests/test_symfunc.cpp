#include <gtest/gtest.h>

#include <chrono>

#include "macsel/symfunc.hpp"

using namespace macsel;

namespace {
RatFunc R(const std::string& s) { return RatFunc::parse(s); }
}  // namespace

TEST(SymFunc, MonomialProduct) {
  // m_1 m_1 = m_2 + 2 m_11
  auto& p = monomial_product(Partition({1}), Partition({1}));
  EXPECT_EQ(p.at(Partition({2})), 1);
  EXPECT_EQ(p.at(Partition({1, 1})), 2);
  auto& p2 = monomial_product(Partition({2, 1}), Partition({1}));
  EXPECT_EQ(p2.at(Partition({3, 1})), 1);
  EXPECT_EQ(p2.at(Partition({2, 2})), 2);
  EXPECT_EQ(p2.at(Partition({2, 1, 1})), 2);
}

TEST(SymFunc, PowerSumRoundTrip) {
  for (int d = 1; d <= 6; ++d)
    for (auto& l : partitions_of(d)) {
      SymSeries m = SymSeries::monomial(l);
      EXPECT_EQ(from_power_basis(to_power_basis(m)), m);
    }
}

TEST(SymFunc, ExampleTwoRow) {
  SymSeries P2 = macdonald_P(Partition({2}), 2);
  EXPECT_EQ(P2.coeff(Partition({2})), RatFunc(1));
  EXPECT_EQ(P2.coeff(Partition({1, 1})), R("(1+q)*(1-t)/(1-q*t)"));
}

TEST(SymFunc, OneRowAgainstGeneratingFunction) {
  // P_(k) = (q)_k/(t)_k * sum_alpha prod (t)_{a_i}/(q)_{a_i} x^alpha
  for (int k = 1; k <= 5; ++k) {
    SymSeries P = macdonald_P(Partition({k}));
    RatFunc pre = poch(rq(), k) / poch(rt(), k);
    for (auto& mu : partitions_of(k)) {
      RatFunc c = pre;
      for (int part : mu.parts()) c *= poch(rt(), part) / poch(rq(), part);
      EXPECT_EQ(P.coeff(mu), c) << mu.to_string();
    }
  }
}

TEST(SymFunc, DualityNorm) {
  for (int d = 1; d <= 5; ++d)
    for (auto& l : partitions_of(d)) EXPECT_EQ(macdonald_basis().norm(l), b_norm(l).inverse()) << l.to_string();
}

TEST(SymFunc, LRSmall) {
  // f^{(2)}_{(1)(1)} = <P_1 P_1, Q_2>
  RatFunc f = lr_coeff(Partition({2}), Partition({1}), Partition({1}));
  SymSeries prod = macdonald_P(Partition({1})) * macdonald_P(Partition({1}));
  EXPECT_EQ(f, scalar_product(prod, macdonald_Q(Partition({2})), macdonald_weight));
  EXPECT_EQ(f, RatFunc(1));
  EXPECT_EQ(lr_coeff(Partition({1, 1}), Partition({1}), Partition({1})), R("(1-q)*(1+t)/(1-q*t)"));
}

TEST(SymFunc, TimingWeight6) {
  auto t0 = std::chrono::steady_clock::now();
  for (auto& l : partitions_of(6)) macdonald_P(l);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  std::printf("weight 6 Gram-Schmidt: %ld ms, gcd calls %lu\n", static_cast<long>(ms), gcd_stats().calls);
  EXPECT_EQ(macdonald_basis().norm(Partition({3, 2, 1})), b_norm(Partition({3, 2, 1})).inverse());
}
