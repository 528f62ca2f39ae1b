#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "macsel/selberg.hpp"
#include "macsel/symfunc.hpp"
#include "oracles.hpp"

using namespace macsel;

namespace {

BigReal B(const std::string& s) { return BigReal::parse(s); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// Selberg over the ordered simplex, from the usual cube form divided by k!.
double selberg_simplex(int k, double a, double b, double g) {
  double v = 1;
  for (int i = 0; i < k; ++i)
    v *= std::tgamma(a + i * g) * std::tgamma(b + i * g) * std::tgamma(1 + (i + 1) * g) /
         (std::tgamma(a + b + (k + i - 1) * g) * std::tgamma(1 + g) * (i + 1));
  return v;
}

// Right side of the lambda = mu = 0 integral in its own indexing.
double sl3_rhs(int k1, int k2, double a1, double a2, double b1, double g) {
  double b2 = g + 1 - b1, v = 1;
  for (int i = 0; i < k1; ++i)
    v *= std::tgamma(a1 + i * g) * std::tgamma(b1 + (i - k2) * g) * std::tgamma((i + 1) * g) /
         (std::tgamma(a1 + b1 + (i + k1 - k2 - 1) * g) * std::tgamma(g));
  for (int i = 0; i < k2; ++i)
    v *= std::tgamma(a2 + i * g) * std::tgamma(b2 + i * g) * std::tgamma((i + 1) * g) /
         (std::tgamma(a2 + b2 + (i + k2 - k1 - 1) * g) * std::tgamma(g));
  for (int i = 0; i < k1; ++i) v *= std::tgamma(a1 + a2 + (i - 1) * g) / std::tgamma(a1 + a2 + (i + k2 - 1) * g);
  return v;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  double h = (b - a) / n, s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

TEST(Chain, SmallCases) {
  BigReal beta = B("0.6"), g = B("0.15");
  auto c = enumerate_chain(1, 1, beta, g);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].order, "xy");
  EXPECT_EQ(c[0].weight, BigReal(1L));
  EXPECT_EQ(c[1].order, "yx");
  EXPECT_LE(rel_diff(c[1].weight, sin_pi(beta) / sin_pi(beta - g)).to_double(), 1e-70);
  for (auto [k1, k2] : {std::pair{3, 0}, std::pair{0, 3}}) {
    auto d = enumerate_chain(k1, k2, beta, g);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].weight, BigReal(1L));
  }
  EXPECT_THROW(enumerate_chain(1, 2, B("0.3"), B("0.15")), ChainError);
}

TEST(Chain, CardinalityExhaustive) {
  for (int k1 = 0; k1 <= 8; ++k1)
    for (int k2 = 0; k1 + k2 <= 8; ++k2) {
      auto c = enumerate_chain(k1, k2, B("0.5123"), B("0.0071"));
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), k1 + k2, k1);
      EXPECT_EQ(c.size(), b.get_ui()) << k1 << "," << k2;
      std::set<std::string> orders;
      for (auto& d : c) orders.insert(d.order);
      EXPECT_EQ(orders.size(), c.size());
    }
}

TEST(Chain, BFormMatchesAForm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> beta(0.05, 0.95), gam(0.05, 0.25);
  for (int trial = 0; trial < 5; ++trial) {
    std::string b = std::to_string(beta(rng)), g = std::to_string(gam(rng));
    for (int k1 = 0; k1 <= 4; ++k1)
      for (int k2 = 0; k2 <= 4; ++k2) {
        Report r = check_chain_forms(k1, k2, b, g);
        EXPECT_EQ(r.status, "pass") << k1 << "," << k2 << " " << b << " " << g << " " << r.witness.dump();
      }
  }
}

TEST(Chain, BetaOneGivesTarasovVarchenkoChain) {
  for (const char* g : {"0.1", "0.13", "0.2", "0.2371"})
    for (int k2 = 0; k2 <= 4; ++k2)
      for (int k1 = 0; k1 <= k2; ++k1) {
        Report r = check_chainid(k1, k2, g);
        EXPECT_EQ(r.status, "pass") << k1 << "," << k2 << " " << r.witness.dump();
      }
  auto tv = chain_tv(1, 1, B("0.25"));
  ASSERT_EQ(tv.size(), 1u);
  EXPECT_EQ(tv[0].order, "xy");
  EXPECT_EQ(chain_tv(0, 3, B("0.25")).size(), 1u);
}

TEST(Chain, SymmetryUnderLabelSwap) {
  Report r = check_cc_symmetry(1, 2, "0.6", "0.15");
  EXPECT_EQ(r.status, "pass") << r.witness.dump();
  for (int k1 = 0; k1 <= 4; ++k1)
    for (int k2 = 0; k2 <= 4; ++k2) EXPECT_EQ(check_cc_symmetry(k1, k2, "0.55", "0.13").status, "pass");
  EXPECT_EQ(check_cc_symmetry(0, 3, "0.55", "0.13").info["scale"], BigReal(1L).str(25));
  // At k1 = k2 = 1 the scale is sin pi(beta1 - gamma) / sin pi beta1, not 1.
  BigReal b1 = B("0.55"), g = B("0.13");
  BigReal expect = sin_pi(b1 - g) / sin_pi(b1);
  EXPECT_LE(rel_diff(B(check_cc_symmetry(1, 1, "0.55", "0.13").info["scale"].get<std::string>()), expect).to_double(),
            1e-24);
}

TEST(Chain, SinLimit) {
  EXPECT_EQ(check_sin_limit("0.8", "0.1", 1, 1, 1, 1, "0.6", "0.3").status, "pass");
  EXPECT_EQ(check_sin_limit("0.8", "0.1", 1, 1, 1, 1, "0.3", "0.6").status, "pass");
  EXPECT_EQ(check_sin_limit("0.7", "0.2", 2, 1, 2, 1, "0.7", "0.2").status, "pass");
  Report zero = check_sin_limit("0.8", "0", 1, 1, 1, 1, "0.6", "0.3");
  EXPECT_EQ(zero.status, "pass") << zero.info.dump();
}

TEST(SelbergRhs, Degenerations) {
  BigReal a2 = B("2"), b2 = B("2"), g = B("1/4");
  EXPECT_LE(rel_diff(selberg_rhs(0, 1, B("1"), a2, g + BigReal(1L) - b2, b2, g, {}, {}), BigReal(1L) / BigReal(6L))
                .to_double(),
            1e-70);
  EXPECT_EQ(selberg_rhs(0, 0, B("2"), a2, B("1/2"), B("3/4"), g, {}, {}), BigReal(1L));
  // One variable with lambda = (1): integral of t^{alpha1} (1-t)^{beta1-1}.
  double a1 = 2, b1 = 1.5;
  double quad = simpson([&](double s) { return 2 * s * std::pow(1 - s * s, a1) * std::pow(s * s, b1 - 1); }, 0, 1, 4000);
  BigReal k = selberg_rhs(1, 0, B("2"), a2, B("1.5"), g + BigReal(1L) - B("1.5"), g, Partition{1}, {});
  EXPECT_LE(rel(k.to_double(), quad), 1e-10);
  for (int n = 1; n <= 4; ++n) {
    BigReal s = selberg_rhs(0, n, B("1"), B("1.7"), g + BigReal(1L) - B("2.3"), B("2.3"), g, {}, {});
    EXPECT_LE(rel(s.to_double(), selberg_simplex(n, 1.7, 2.3, 0.25)), 1e-13) << n;
  }
}

TEST(SelbergRhs, ReducesToTheTwoFamilyFormula) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> A(1.0, 3.0), Bt(0.4, 0.9), G(0.05, 0.2);
  for (int trial = 0; trial < 10; ++trial) {
    double a1 = A(rng), a2 = A(rng), b1 = Bt(rng), g = G(rng);
    int k1 = trial % 3, k2 = (trial / 3) % 3 + 1;
    BigReal gb(g), b1b(b1);
    BigReal v = selberg_rhs(k1, k2, BigReal(a1), BigReal(a2), b1b, gb + BigReal(1L) - b1b, gb, {}, {});
    EXPECT_LE(rel(v.to_double(), sl3_rhs(k1, k2, a1, a2, b1, g)), 1e-12) << k1 << "," << k2;
  }
}

TEST(SelbergRhs, OverlapWithTarasovVarchenko) {
  BigReal g = B("0.2"), one(1L);
  for (int k2 = 1; k2 <= 3; ++k2)
    for (int k1 = 0; k1 <= k2; ++k1) {
      BigReal a = selberg_rhs(k1, k2, B("1.5"), B("2.5"), one, g, g, {}, {});
      BigReal b = tv_rhs(k1, k2, B("1.5"), B("2.5"), g, g);
      EXPECT_LE(rel_diff(a, b).to_double(), 1e-70);
    }
  EXPECT_THROW(selberg_rhs(1, 0, B("-3"), B("1"), B("1/2"), B("3/4"), B("1/4"), {}, {}), std::domain_error);
}

TEST(Quadrature, GaussJacobiIsExactOnPolynomials) {
  for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{-0.5, 0.3}, std::pair{2.0, -0.75}}) {
    GaussRule r = gauss_jacobi(8, a, b);
    for (int k = 0; k < 15; ++k) {
      double s = 0;
      for (std::size_t i = 0; i < r.u.size(); ++i) s += r.w[i] * std::pow(r.u[i], k);
      double exact = std::exp(std::lgamma(a + k + 1) + std::lgamma(b + 1) - std::lgamma(a + b + k + 2));
      EXPECT_LE(rel(s, exact), 1e-12) << a << " " << b << " " << k;
      EXPECT_NEAR(r.u[0] + r.v[0], 1.0, 1e-15);
    }
  }
}

TEST(Quadrature, SimplexCells) {
  SelbergParams p;
  p.k1 = 1, p.alpha1 = "2", p.beta1 = "2", p.gamma = "1";
  CellIntegrand c = cell_integrand("x", p);
  EXPECT_NEAR(cube_quadrature(c.f, c.shape, 8).value, 1.0 / 6, 1e-15);
  CellIntegrand empty = cell_integrand("", p);
  EXPECT_EQ(cube_quadrature(empty.f, empty.shape, 8).value, 1.0);
  EXPECT_EQ(cube_monte_carlo(empty.f, empty.shape, {}).value, 1.0);

  SelbergParams s;
  s.k2 = 2, s.alpha2 = "2", s.beta2 = "2", s.beta1 = "", s.gamma = "1/2";
  SelbergOptions o;
  o.method = "quad";
  Report r = check_thm31(s, o);
  EXPECT_EQ(r.status, "pass");
  EXPECT_LE(B(r.info["rel_diff"].get<std::string>()).to_double(), 1e-6);
  EXPECT_NEAR(B(r.info["rhs"].get<std::string>()).to_double(), selberg_simplex(2, 2, 2, 0.5), 1e-15);
}

TEST(MonteCarlo, WorkerCountAndSeeds) {
  SelbergParams p;
  p.k1 = 1, p.k2 = 2, p.beta1 = "0.6", p.gamma = "0.15";
  CellIntegrand c = cell_integrand("yxy", p);
  McOptions o{200000, 11, 3, 1};
  Estimate one = cube_monte_carlo(c.f, c.shape, o);
  o.workers = 3;
  Estimate three = cube_monte_carlo(c.f, c.shape, o);
  EXPECT_EQ(one.value, three.value);
  EXPECT_EQ(one.error, three.error);
  o.seed = 12;
  Estimate other = cube_monte_carlo(c.f, c.shape, o);
  EXPECT_NE(other.value, one.value);
  EXPECT_LE(std::abs(other.value - one.value), 3 * std::hypot(one.error, other.error));
  Estimate quad = cube_quadrature(c.f, c.shape, 24);
  EXPECT_LE(std::abs(quad.value - one.value), 4 * one.error + quad.error);
}

TEST(MonteCarlo, SeparableProduct) {
  // u^{-1/2} (1-v)^{-1/2} style endpoint singularities with a known integral.
  CubeShape s{2, {-0.5, 0.0}, {0.0, -0.5}};
  CubeFn f = [](const double* u, const double* v) { return std::pow(u[0], -0.5) * std::pow(v[1], -0.5); };
  Estimate e = cube_monte_carlo(f, s, {400000, 3, 0, 1});
  EXPECT_NEAR(e.value, 4.0, 4 * e.error);
  EXPECT_LT(e.error, 1e-3);
}

TEST(Selberg, SmallIntegralsMatch) {
  SelbergOptions o;
  o.samples = 400000;
  SelbergParams p;
  p.k1 = 1, p.k2 = 1, p.beta1 = "1", p.gamma = "1/4";
  Report r = check_thm31(p, o);
  EXPECT_EQ(r.status, "pass") << r.info.dump();
  EXPECT_TRUE(r.info["overlap"]["chain_match"].get<bool>());
  p.beta1 = "0.7", p.gamma = "0.2", p.lambda = Partition{1};
  r = check_thm31(p, o);
  EXPECT_EQ(r.status, "pass") << r.info.dump();
  EXPECT_EQ(r.info["domains"].size(), 2u);
  std::string csv = domains_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "seq,order,weight,value,error");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  // Thm 3.1 with a Jack insertion in two y variables, by quadrature.
  SelbergParams j;
  j.k1 = 1, j.k2 = 2, j.beta1 = "0.6", j.gamma = "0.15", j.mu = Partition{1};
  o.method = "quad";
  o.quad_order = 16;
  r = check_thm31(j, o);
  EXPECT_EQ(r.status, "pass") << r.info.dump();
  EXPECT_LE(B(r.info["rel_diff"].get<std::string>()).to_double(), 5e-3);
}

TEST(Selberg, PoleIsSkipped) {
  SelbergParams p;
  p.k1 = 1, p.k2 = 2, p.beta1 = "0.3", p.gamma = "0.15";
  SelbergOptions o;
  o.samples = 1000;
  EXPECT_EQ(check_thm31(p, o).status, "skipped");
}

TEST(Jack, NormalizationAndTriangularity) {
  for (const char* a : {"1/2", "1", "2"})
    for (int w = 1; w <= 5; ++w)
      for (const auto& l : partitions_of(w)) {
        const SymSeries& J = jack_P(l);
        EXPECT_TRUE(J.coeff(l).is_one());
        for (const auto& [nu, c] : J.coeffs()) EXPECT_TRUE(dominance_leq(nu, l)) << l.to_string();
        for (int n = l.length(); n <= 4; ++n) {
          JackNum j(l, n, B(a));
          EXPECT_LE(abs(j.eval(std::vector<BigReal>(n, BigReal(1L))) - BigReal(1L)).to_double(), 1e-60);
        }
      }
}

TEST(Jack, AlphaOneIsSchur) {
  std::vector<mpq_class> x = {mpq_class(1, 2), mpq_class(2, 3), mpq_class(-3, 5), mpq_class(7, 4), mpq_class(5, 9)};
  for (int w = 1; w <= 5; ++w)
    for (const auto& l : partitions_of(w))
      EXPECT_EQ(oracle::eval_at_alpha(jack_P(l), 1, x), oracle::schur_alternant(l, x)) << l.to_string();
}

TEST(Jack, MacdonaldLimit) {
  for (int w = 1; w <= 3; ++w)
    for (const auto& l : partitions_of(w)) EXPECT_LE(oracle::macdonald_jack_gap(l, "2", "1e-6"), 1e-4) << l.to_string();
}

TEST(Jack, NumericMatchesExactEvaluation) {
  Partition l{2, 1};
  JackNum j(l, 3, B("5"));
  std::vector<mpq_class> x = {mpq_class(1, 3), mpq_class(1, 2), mpq_class(3, 4)};
  mpq_class exact = oracle::eval_at_alpha(jack_P(l), 5, x) / oracle::eval_at_alpha(jack_P(l), 5, {1, 1, 1});
  double xd[3] = {1.0 / 3, 0.5, 0.75};
  EXPECT_NEAR(j(xd), exact.get_d(), 1e-14);
}

TEST(GramSchmidt, BruteForceOracle) {
  RatFunc c2 = oracle::gram_schmidt_coeff(Partition{2}, Partition{1, 1});
  EXPECT_EQ(macdonald_basis().P(Partition{2}).coeff(Partition{1, 1}), c2);
  EXPECT_EQ(c2, (RatFunc(1) + rq()) * (RatFunc(1) - rt()) / (RatFunc(1) - rq() * rt()));
  RatFunc c21 = oracle::gram_schmidt_coeff(Partition{2, 1}, Partition{1, 1, 1});
  EXPECT_EQ(macdonald_basis().P(Partition{2, 1}).coeff(Partition{1, 1, 1}), c21);
  EXPECT_EQ(macdonald_basis().P(Partition{2, 1}).coeffs().size(), 2u);
}
