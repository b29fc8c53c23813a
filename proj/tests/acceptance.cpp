// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
// A criterion with a runtime budget also fails when it overruns the budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cou/kernels.hpp"
#include "cou/verify.hpp"

using namespace cou;
using verify::SuiteResult;

namespace {

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // 0 for none
  std::function<std::vector<SuiteResult>()> run;
};

}  // namespace

int main() {
  const std::vector<double> thetas = verify::standard_thetas();
  const std::vector<double> times = verify::standard_times();
  const std::vector<double> six_thetas = {0.0, kPi / 6, -kPi / 4, kPi / 3, 0.49 * kPi, -0.49 * kPi};
  const std::uint64_t seed = 20240611;

  const std::vector<Criterion> criteria = {
      {1, "orthonormality of J_{m,n}, m+n <= 10, quadrature order 12", 10.0,
       [] { return std::vector{verify::orthonormality(10, 12, 1e-9)}; }},
      {2, "eigenrelation L J = lambda J, m+n <= 10, 6 angles", 5.0,
       [&] { return std::vector{verify::eigenrelation(10, six_thetas, 1e-9)}; }},
      {3, "Hermite basis transform inverse and unitary, degree <= 16", 5.0,
       [] { return std::vector{verify::basis_transform(16, 1e-10)}; }},
      {4, "creation-operator route equals closed form, m+n <= 12", 0.0,
       [] { return std::vector{verify::creation_route(12, 1e-10)}; }},
      {5, "spectral semigroup equals Mehler quadrature, degree 8, 50 points", 30.0,
       [&] { return std::vector{verify::spectral_vs_mehler(8, thetas, times, 50, seed, 1e-8)}; }},
      {6, "normality commutator and fused form, monomials of degree <= 5", 60.0,
       [&] { return std::vector{verify::semigroup_normality(5, thetas, times, 1e-8)}; }},
      {7, "semigroup adjoint identity, degree 6", 0.0,
       [&] { return std::vector{verify::semigroup_adjoint(6, thetas, times, 2, seed + 1, 1e-9)}; }},
      {8, "carre du champ: two forms agree on 200 pairs, nonnegative at 1000 points", 0.0,
       [&] { return std::vector{verify::carre_du_champ(200, 6, thetas, 1000, seed + 2, 1e-10)}; }},
      {9, "diffusion chain rule, 100 random (F, phi)", 0.0,
       [&] { return std::vector{verify::chain_rule(100, 3, 3, 2, thetas, seed + 3, 1e-9)}; }},
      {10, "SDE moments at t in {0.5, 2} and stationarity, 2e5 paths", 60.0,
       [&] {
         const std::vector<double> sde_thetas = {0.0, kPi / 4, -kPi / 3};
         return std::vector{verify::sde_moments(200000, sde_thetas, {0.5, 2.0}, cplx(1.0, -0.5), seed + 4, 4.0),
                            verify::stationarity(kPi / 4, 200000, seed + 5, 1.0)};
       }},
      {11, "invariance (degree 8) and ergodic envelope at t in {2, 5, 10}", 0.0,
       [&] {
         return std::vector{verify::invariance(8, thetas, times, seed + 6, 1e-9),
                            verify::ergodic(6, thetas, {2.0, 5.0, 10.0}, 3, seed + 7, 1e-12)};
       }},
  };

  std::printf("kernels: %s\n", std::string(kernels::isa_name(kernels::active_isa())).c_str());
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<SuiteResult> results;
    std::string error;
    try {
      results = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = error.empty();
    std::string summary;
    for (const SuiteResult& r : results) {
      pass = pass && r.pass;
      char buf[160];
      std::snprintf(buf, sizeof buf, " %s=%.3e/%.0e", r.name.c_str(), r.max_residual, r.tolerance);
      summary += buf;
    }
    const bool in_time = c.budget_s <= 0.0 || elapsed <= c.budget_s;
    pass = pass && in_time;
    if (!pass) ++failed;
    char timing[64];
    if (c.budget_s > 0)
      std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", elapsed, c.budget_s);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", elapsed);
    std::printf("%s %2d %s:%s [%s]%s%s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), summary.c_str(),
                timing, error.empty() ? "" : " error: ", error.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
