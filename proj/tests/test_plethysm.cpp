#include <gtest/gtest.h>

#include "macsel/plethysm.hpp"

using namespace macsel;

TEST(Plethysm, PowerSums) {
  Alphabet A = Alphabet::fraction(ra(), rb());
  EXPECT_EQ(A.power_sum(2), (ra().pow(2) - rb().pow(2)) / (RatFunc(1) - rt(2)));
  Alphabet B = A + Alphabet::letters({rq()});
  EXPECT_EQ(B.power_sum(3), A.power_sum(3) + rq(3));
}

TEST(Plethysm, LettersMatchDirectEvaluation) {
  for (auto& lam : enumerate_partitions(4, 3)) {
    SymSeries P = macdonald_P(lam);
    for (auto& mu : enumerate_partitions(2, 3)) {
      auto x = principal_point(mu, 3, ra());
      EXPECT_EQ(pleth_eval(P, Alphabet::letters(x)), evaluate(P.restrict(3), x)) << lam.to_string();
    }
  }
}

TEST(Plethysm, PochhammerAsPlethysm) {
  // (a)_lambda = Q_lambda[(1 - a)/(1 - t)] in the normalized form
  for (auto& lam : enumerate_partitions(4))
    EXPECT_EQ(pleth_eval(normalized_Q(lam), Alphabet::fraction(RatFunc(1), ra())), poch_partition(ra(), lam))
        << lam.to_string();
}

TEST(Plethysm, PrincipalSpecializationOfQ) {
  // Q_lambda(<0>_n) = (t^n)_lambda
  for (int n = 1; n <= 3; ++n)
    for (auto& lam : enumerate_partitions(4, n))
      EXPECT_EQ(principal_spec(normalized_Q(lam, n), Partition(), n), poch_partition(rt(n), lam)) << lam.to_string();
}

TEST(Plethysm, FiniteAlphabetFraction) {
  // (1 - t^n)/(1 - t) is the alphabet <0>_n
  for (auto& lam : enumerate_partitions(4, 2)) {
    SymSeries P = macdonald_P(lam);
    EXPECT_EQ(pleth_eval(P, Alphabet::fraction(RatFunc(1), rt(2))), principal_spec(P.restrict(2), Partition(), 2));
  }
}
