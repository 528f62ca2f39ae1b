#include <gtest/gtest.h>

#include "macsel/qfactorial.hpp"

using namespace macsel;

namespace {
RatFunc R(const std::string& s) { return RatFunc::parse(s); }
}  // namespace

TEST(Poch, IntegerIndex) {
  EXPECT_EQ(poch(ra(), 0), RatFunc(1));
  EXPECT_EQ(poch(ra(), 2), R("(1-a)*(1-a*q)"));
  EXPECT_EQ(poch(ra(), -1), R("1/(1-a/q)"));
  // (b)_{-k} = 1/(b q^{-k})_k
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(poch(ra(), -k), poch(ra() * rq(-k), k).inverse());
  EXPECT_THROW(poch(RatFunc(rq()), -1), PochPole);
  EXPECT_TRUE(poch_reciprocal(rq(), -2).is_zero());
  EXPECT_EQ(poch_reciprocal(rq(), 2), R("1/((1-q)*(1-q^2))"));
}

TEST(Poch, RatioAndIdentity) {
  RatFunc b = ra() * rt(), c = ra();
  for (int k = -3; k <= 3; ++k) EXPECT_EQ(poch_ratio(b, c, k), poch(b, k) / poch(c, k));
  // (q)_{-1}/(q)_{-1} is the empty ratio even though each factor is singular
  EXPECT_EQ(poch_ratio(rq(), rq(), -2), RatFunc(1));
}

TEST(Poch, PartitionForms) {
  for (auto& lam : enumerate_partitions(5))
    EXPECT_EQ(poch_partition(ra(), lam), poch_partition_cells(ra(), lam)) << lam.to_string();
  EXPECT_EQ(poch_partition(ra(), Partition({2, 1})), R("(1-a)*(1-a*q)*(1-a/t)"));
}

TEST(Poch, HookPolynomials) {
  Partition l{2, 1};
  EXPECT_EQ(c_poly(l), R("(1-q*t^2)*(1-t)*(1-t)"));
  EXPECT_EQ(cprime_poly(l), R("(1-q^2*t)*(1-q)*(1-q)"));
  EXPECT_EQ(b_norm(Partition({1})), R("(1-t)/(1-q)"));
  EXPECT_EQ(tau(Partition({2, 1})), R("-q/t"));
}

TEST(Poch, CrossForms) {
  // c_lambda and c'_lambda through Pochhammer symbols in n variables
  for (int n = 1; n <= 3; ++n)
    for (auto& lam : enumerate_partitions(4, n)) {
      auto L = lam.padded(n);
      RatFunc c = poch_partition(rt(n), lam), cp = poch_partition(rq() * rt(n - 1), lam);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          int d = L[i] - L[j], g = j - i;
          c *= poch(rt(g), d) / poch(rt(g + 1), d);
          cp *= poch(rq() * rt(g - 1), d) / poch(rq() * rt(g), d);
        }
      EXPECT_EQ(c, c_poly(lam)) << lam.to_string();
      EXPECT_EQ(cp, cprime_poly(lam)) << lam.to_string();
    }
}
