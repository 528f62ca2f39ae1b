#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace macsel {

// n-point Gauss rule on (0,1) for the weight u^a (1-u)^b (a, b > -1), with
// nodes given both as u and as 1-u.
struct GaussRule {
  std::vector<double> u, v, w;
};
GaussRule gauss_jacobi(int n, double a, double b);

// Integrand on the open unit cube. u[l] and v[l] = 1 - u[l] are both passed so
// that points close to 1 keep full relative accuracy.
using CubeFn = std::function<double(const double* u, const double* v)>;

// Leading endpoint exponents of the integrand in each coordinate:
// f ~ u^{a0} near u = 0 and f ~ (1-u)^{a1} near u = 1.
struct CubeShape {
  int dim = 0;
  std::vector<double> a0, a1;
};

struct Estimate {
  double value = 0;
  double error = 0;
  long evals = 0;
  long strata = 0;
  int order = 0;
};

// Tensor Gauss-Jacobi with the endpoint exponents taken into the weight. The
// value is the 2n-point rule; the error is |Q_n - Q_2n|.
Estimate cube_quadrature(const CubeFn& f, const CubeShape& shape, int n);

struct McOptions {
  long samples = 1'000'000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  int workers = 1;
};

// Stratified Monte Carlo. Each coordinate is drawn from a Kumaraswamy density
// matched to the endpoint exponents, the uniform pre-image is stratified on a
// regular grid, and every stratum has its own generator seeded from
// (seed, stream, stratum). The value does not depend on the worker count.
Estimate cube_monte_carlo(const CubeFn& f, const CubeShape& shape, const McOptions& opt);

}  // namespace macsel
