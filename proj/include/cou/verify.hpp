#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "cou/numeric.hpp"

// Property suites shared by the CLI and the acceptance runner. Each returns
// the worst residual seen, the tolerance it was held to, and a JSON record of
// the grid it covered.

namespace cou::verify {

struct SuiteResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();
};

nlohmann::json to_json(const SuiteResult& r);

/// Default grids.
std::vector<double> standard_thetas();  ///< {0, +-pi/4, +-0.49 pi}
std::vector<double> standard_times();   ///< {0.1, 1, 3}

/// max |<J_a, J_b> - delta_ab| over m + n <= max_degree, quadrature of the given order.
SuiteResult orthonormality(int max_degree, int order, double tol = 1e-9);

/// Coefficientwise relative residual of L J_{m,n} - lambda J_{m,n}, m + n <= max_degree.
SuiteResult eigenrelation(int max_degree, const std::vector<double>& thetas, double tol = 1e-9);

/// Forward/inverse product and unitarity deviations, degree 0..max_degree.
SuiteResult basis_transform(int max_degree, double tol = 1e-10);

/// Creation-operator construction against the closed form, relative to the
/// largest coefficient, m + n <= max_degree.
SuiteResult creation_route(int max_degree, double tol = 1e-10);

/// Monomial -> J expansion -> synthesis round trip, relative to the largest
/// synthesized term, plus projection by quadrature.
SuiteResult hermite_roundtrip(int max_degree, double tol = 1e-10);

/// Spectral multiplier against Mehler quadrature at random points, relative
/// error |a - b| / max(1, |b|), random polynomials of the given degree.
SuiteResult spectral_vs_mehler(int degree, const std::vector<double>& thetas,
                               const std::vector<double>& times, int points, std::uint64_t seed,
                               double tol = 1e-8);

/// Commutator and fused-form residuals, scaled by 1 + |lhs|, for every monomial
/// of total degree <= max_degree at a few fixed points.
SuiteResult semigroup_normality(int max_degree, const std::vector<double>& thetas,
                                const std::vector<double>& times, double tol = 1e-8);

/// <P^theta phi, psi> - <phi, P^{-theta} psi> for random polynomials.
SuiteResult semigroup_adjoint(int degree, const std::vector<double>& thetas,
                              const std::vector<double>& times, int trials, std::uint64_t seed,
                              double tol = 1e-9);

/// Spectral normality of L and the adjoint inner-product identity for L.
SuiteResult generator_normality(int max_degree, double theta, std::uint64_t seed,
                                double tol = 1e-9);

/// Derivative versus generator form of Gamma on random pairs, and the minimum
/// of Gamma(phi, phi) at random points (reported, held to >= -1e-12).
SuiteResult carre_du_champ(int pairs, int degree, const std::vector<double>& thetas, int points,
                           std::uint64_t seed, double tol = 1e-10);

/// Chain-rule residual / (1 + max |lhs coeff|) on random (F, phi).
SuiteResult chain_rule(int count, int degree_f, int degree_phi, int max_slots,
                       const std::vector<double>& thetas, std::uint64_t seed, double tol = 1e-9);

/// Invariance residual / (1 + |mean|) over monomials of degree <= max_degree
/// and random polynomials of that degree.
SuiteResult invariance(int max_degree, const std::vector<double>& thetas,
                       const std::vector<double>& times, std::uint64_t seed, double tol = 1e-9);

/// Ergodic residual against the envelope C e^{-d t cos theta}; the residual is
/// max(0, r - bound) / (1 + C).
SuiteResult ergodic(int degree, const std::vector<double>& thetas, const std::vector<double>& times,
                    int trials, std::uint64_t seed, double tol = 1e-12);

/// Exact-sampler mean and variance against the closed forms, in units of
/// standard errors; tolerance 4.
SuiteResult sde_moments(std::size_t n_paths, const std::vector<double>& thetas,
                        const std::vector<double>& times, cplx x0, std::uint64_t seed,
                        double tol = 4.0);

/// Stationarity report as a suite; the residual is the largest of the moment
/// z-scores / 4 and the KS distances / threshold, tolerance 1.
SuiteResult stationarity(double theta, std::size_t n_paths, std::uint64_t seed, double tol = 1.0);

/// Gauss-Hermite self test: weight sums and moment exactness to degree 2K - 1.
SuiteResult quadrature_selftest(int max_order, double tol = 1e-10);

}  // namespace cou::verify
