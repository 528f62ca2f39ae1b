#include "macsel/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace macsel {

GaussRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("quadrature order must be positive");
  if (a <= -1 || b <= -1) throw std::invalid_argument("Jacobi exponents must exceed -1");
  // Jacobi polynomials on [-1,1] with weight (1-x)^al (1+x)^be, u = (1+x)/2.
  const double al = b, be = a, ab = al + be;
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    double s = 2.0 * k + ab;
    diag(k) = k == 0 ? (be - al) / (ab + 2) : (be * be - al * al) / (s * (s + 2));
  }
  for (int k = 1; k < n; ++k) {
    double s = 2.0 * k + ab;
    double r = k == 1 ? 4 * (1 + al) * (1 + be) / ((2 + ab) * (2 + ab) * (3 + ab))
                      : 4.0 * k * (k + al) * (k + be) * (k + ab) / (s * s * (s + 1) * (s - 1));
    sub(k - 1) = std::sqrt(r);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const double mass = std::exp(std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(a + b + 2));
  GaussRule r;
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);
    double e = es.eigenvectors()(0, i);
    r.u.push_back((1 + x) / 2);
    r.v.push_back((1 - x) / 2);
    r.w.push_back(mass * e * e);
  }
  return r;
}

namespace {

double tensor_sum(const CubeFn& f, const CubeShape& shape, int n, long& evals) {
  const int K = shape.dim;
  std::vector<GaussRule> rules;
  for (int l = 0; l < K; ++l) rules.push_back(gauss_jacobi(n, shape.a0[l], shape.a1[l]));
  std::vector<int> idx(K, 0);
  std::vector<double> u(K), v(K);
  double sum = 0;
  while (true) {
    double w = 1;
    for (int l = 0; l < K; ++l) {
      const auto& r = rules[l];
      u[l] = r.u[idx[l]];
      v[l] = r.v[idx[l]];
      w *= r.w[idx[l]] / (std::pow(u[l], shape.a0[l]) * std::pow(v[l], shape.a1[l]));
    }
    sum += w * f(u.data(), v.data());
    ++evals;
    int l = 0;
    while (l < K && ++idx[l] == n) idx[l++] = 0;
    if (l == K) break;
  }
  return sum;
}

}  // namespace

Estimate cube_quadrature(const CubeFn& f, const CubeShape& shape, int n) {
  Estimate e;
  e.order = 2 * n;
  if (shape.dim == 0) {
    e.value = f(nullptr, nullptr);
    e.evals = 1;
    return e;
  }
  double qn = tensor_sum(f, shape, n, e.evals);
  double q2n = tensor_sum(f, shape, 2 * n, e.evals);
  e.value = q2n;
  e.error = std::abs(q2n - qn);
  return e;
}

namespace {

struct Kumaraswamy {
  double a = 1, b = 1;
};

struct StratumStat {
  double mean = 0, m2 = 0;
  long n = 0;
};

}  // namespace

Estimate cube_monte_carlo(const CubeFn& f, const CubeShape& shape, const McOptions& opt) {
  Estimate e;
  const int K = shape.dim;
  if (K == 0) {
    e.value = f(nullptr, nullptr);
    e.evals = 1;
    e.strata = 1;
    return e;
  }
  std::vector<Kumaraswamy> dens(K);
  for (int l = 0; l < K; ++l) {
    dens[l].a = std::clamp(1 + std::min(0.0, shape.a0[l]), 0.25, 1.0);
    dens[l].b = std::clamp(1 + std::min(0.0, shape.a1[l]), 0.25, 1.0);
  }
  long cap = std::min<long>(4096, opt.samples / 8);
  if (cap < 1) throw std::invalid_argument("Monte Carlo budget too small");
  long M = std::max(1L, static_cast<long>(std::floor(std::pow(static_cast<double>(cap), 1.0 / K) + 1e-9)));
  long S = 1;
  for (int l = 0; l < K; ++l) S *= M;
  const long per = opt.samples / S;
  std::vector<StratumStat> stats(S);

  auto run_stratum = [&](long s) {
    std::vector<long> cell(K);
    long rest = s;
    for (int l = 0; l < K; ++l) {
      cell[l] = rest % M;
      rest /= M;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(opt.stream), static_cast<std::uint32_t>(s),
                      static_cast<std::uint32_t>(s >> 32)};
    std::mt19937_64 rng(seq);
    std::vector<double> u(K), v(K);
    StratumStat st;
    for (long i = 0; i < per; ++i) {
      double logp = 0;
      for (int l = 0; l < K; ++l) {
        double r = (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
        double c = (cell[l] + r) / M;  // uniform pre-image in the stratum
        double lt = c < 0.5 ? std::log1p(-c) : std::log((M - cell[l] - r) / M);
        const double a = dens[l].a, b = dens[l].b;
        double sv = std::exp(lt / b);  // 1 - u^a
        double ua = -std::expm1(lt / b);
        if (a == 1) {
          u[l] = ua;
          v[l] = sv;
        } else {
          double lu = std::log(ua) / a;
          u[l] = std::exp(lu);
          v[l] = -std::expm1(lu);
        }
        logp += std::log(a * b) + (a - 1) * std::log(u[l]) + (b - 1) * (lt / b);
      }
      double x = f(u.data(), v.data()) * std::exp(-logp);
      ++st.n;
      double d = x - st.mean;
      st.mean += d / st.n;
      st.m2 += d * (x - st.mean);
    }
    stats[s] = st;
  };

  const int workers = std::max(1, opt.workers);
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long s; (s = next.fetch_add(1)) < S;) run_stratum(s);
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  double sum = 0, var = 0;
  for (const auto& st : stats) {
    sum += st.mean;
    if (st.n > 1) var += st.m2 / (st.n - 1) / st.n;
  }
  e.value = sum / S;
  e.error = std::sqrt(var) / S;
  e.evals = per * S;
  e.strata = S;
  return e;
}

}  // namespace macsel
