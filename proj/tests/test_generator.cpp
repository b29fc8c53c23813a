#include <doctest.h>

#include "cou/generator.hpp"
#include "cou/hermite.hpp"
#include "cou/quadrature.hpp"
#include "support.hpp"

using namespace cou;

namespace {

const std::vector<double> kThetas = {0.0, kPi / 6, -kPi / 6, kPi / 4, -kPi / 4, 0.49 * kPi, -0.49 * kPi};

// max_c |(L J - lambda J)_c| / max_c |lambda J_c| (or max |J_c| when lambda = 0).
double eigen_residual(const GeneratorParams& g, int m, int n) {
  const Poly j = complex_hermite(m, n);
  const cplx lambda = eigenvalue(g, m, n);
  const Poly lj = apply_generator_wirtinger(g, j);
  const double scale = (lambda == cplx(0.0)) ? j.max_abs_coeff() : (j * lambda).max_abs_coeff();
  return max_coeff_diff(lj, j * lambda) / scale;
}

}  // namespace

TEST_CASE("GeneratorParams validation") {
  CHECK_NOTHROW(GeneratorParams(0.49 * kPi));
  CHECK_NOTHROW(GeneratorParams(-0.49 * kPi));
  CHECK_THROWS_AS(GeneratorParams(kPi / 2), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorParams(-2.0), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorParams(std::nan("")), std::invalid_argument);
}

TEST_CASE("eigenvalue examples") {
  CHECK(eigenvalue(GeneratorParams(0.0), 2, 1) == cplx(-3.0, 0.0));
  for (double th : kThetas) CHECK(eigenvalue(GeneratorParams(th), 0, 0) == cplx(0.0));
  const cplx l = eigenvalue(GeneratorParams(kPi / 4), 1, 0);
  CHECK(std::abs(l - (-std::sqrt(2.0) / 2.0) * cplx(1.0, 1.0)) < 1e-15);
  CHECK(std::abs(l + std::polar(1.0, kPi / 4)) < 1e-15);
}

TEST_CASE("apply_generator_wirtinger examples") {
  for (double th : kThetas) CHECK(apply_generator_wirtinger(GeneratorParams(th), Poly(1.0)).is_zero());
  const Poly zz = Poly::z() * Poly::zbar();
  CHECK(apply_generator_wirtinger(GeneratorParams(0.0), zz) == Poly(4.0) - zz * cplx(2.0));
  for (double th : kThetas) {
    const GeneratorParams g(th);
    const Poly j = complex_hermite(1, 1);
    CHECK(max_coeff_diff(apply_generator_wirtinger(g, j), j * cplx(-2.0 * g.cos_theta())) < 1e-14);
  }
}

TEST_CASE("eigenrelation for m + n <= 10 on the theta grid") {
  double worst = 0.0;
  for (double th : kThetas) {
    const GeneratorParams g(th);
    for (int d = 0; d <= 10; ++d)
      for (int m = 0; m <= d; ++m) worst = std::max(worst, eigen_residual(g, m, d - m));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("apply_generator_spectral examples") {
  SpectralCoeffs one;
  one.set(0, 0, 1.0);
  CHECK(apply_generator_spectral(GeneratorParams(0.3), one).empty());
  SpectralCoeffs f21;
  f21.set(2, 1, 1.0);
  const SpectralCoeffs out = apply_generator_spectral(GeneratorParams(0.0), f21);
  CHECK(out.size() == 1);
  CHECK(out.at(2, 1) == cplx(-3.0));
  SpectralCoeffs pair;
  pair.set(1, 0, 1.0);
  pair.set(0, 1, 1.0);
  const SpectralCoeffs lp = apply_generator_spectral(GeneratorParams(kPi / 6), pair);
  CHECK(std::abs(lp.at(1, 0) + std::polar(1.0, kPi / 6)) < 1e-15);
  CHECK(std::abs(lp.at(0, 1) + std::polar(1.0, -kPi / 6)) < 1e-15);
}

TEST_CASE("spectral and Wirtinger forms agree on random expansions") {
  test::Rng rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const GeneratorParams g(kThetas[static_cast<std::size_t>(trial) % kThetas.size()]);
    const SpectralCoeffs f = test::random_spectral(rng, 8);
    const SpectralCoeffs via_poly = expand_in_hermite(apply_generator_wirtinger(g, synthesize(f)));
    worst = std::max(worst, max_coeff_diff(via_poly, apply_generator_spectral(g, f)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("spectral agreement through quadrature projection") {
  test::Rng rng(12);
  const QuadratureRule rule(default_order(8));
  for (int trial = 0; trial < 5; ++trial) {
    const GeneratorParams g(kThetas[static_cast<std::size_t>(trial + 1)]);
    const SpectralCoeffs f = test::random_spectral(rng, 6);
    const SpectralCoeffs projected = project(rule, apply_generator_wirtinger(g, synthesize(f)), 6);
    CHECK(max_coeff_diff(projected, apply_generator_spectral(g, f)) <= 1e-8);
  }
}

TEST_CASE("adjoint_params") {
  CHECK(adjoint_params(GeneratorParams(0.0)).theta() == 0.0);
  CHECK(adjoint_params(GeneratorParams(kPi / 4)).theta() == -kPi / 4);
  for (double th : kThetas) CHECK(adjoint_params(adjoint_params(GeneratorParams(th))).theta() == th);
}

TEST_CASE("normality at the spectral level is exact") {
  test::Rng rng(13);
  for (double th : kThetas) {
    const GeneratorParams g(th), adj = adjoint_params(g);
    const SpectralCoeffs f = test::random_spectral(rng, 10);
    const SpectralCoeffs a = apply_generator_spectral(adj, apply_generator_spectral(g, f));
    const SpectralCoeffs b = apply_generator_spectral(g, apply_generator_spectral(adj, f));
    CHECK(max_coeff_diff(a, b) <= 1e-13 * (1.0 + a.norm_sq()));
    // both equal (m^2 + n^2 + 2mn cos 2theta) b_{m,n}
    for (const auto& [mode, v] : f.coeffs()) {
      const double m = mode.m, n = mode.n;
      const double w = m * m + n * n + 2 * m * n * std::cos(2 * th);
      CHECK(std::abs(a.at(mode.m, mode.n) - w * v) <= 1e-12 * (1.0 + std::abs(w * v)));
    }
  }
}

TEST_CASE("L_theta is not symmetric when sin(theta) != 0") {
  const QuadratureRule rule(4);
  const Poly j = complex_hermite(1, 0);
  for (double th : kThetas) {
    const GeneratorParams g(th);
    const Poly lj = apply_generator_wirtinger(g, j);
    const cplx left = inner_product(rule, lj, j);
    const cplx right = inner_product(rule, j, lj);
    CHECK(std::abs(left - eigenvalue(g, 1, 0)) < 1e-13);
    if (th == 0.0)
      CHECK(std::abs(left - right) < 1e-13);
    else
      CHECK(std::abs(left - right) == doctest::Approx(2.0 * std::abs(std::sin(th))).epsilon(1e-12));
  }
  // and L* = L_{-theta}: <L f, g> = <f, L_{-theta} g>
  test::Rng rng(14);
  for (double th : kThetas) {
    const GeneratorParams g(th);
    const Poly f = test::random_poly(rng, 4), h = test::random_poly(rng, 4);
    const QuadratureRule r(default_order(4));
    const cplx lhs = inner_product(r, apply_generator_wirtinger(g, f), h);
    const cplx rhs = inner_product(r, f, apply_generator_wirtinger(adjoint_params(g), h));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("domain_seminorm_sq") {
  SpectralCoeffs c;
  c.set(0, 0, 3.0);
  CHECK(domain_seminorm_sq(GeneratorParams(0.4), c) == 0.0);
  SpectralCoeffs f11;
  f11.set(1, 1, 1.0);
  CHECK(domain_seminorm_sq(GeneratorParams(0.0), f11) == doctest::Approx(4.0).epsilon(1e-15));
  test::Rng rng(15);
  for (double th : kThetas) {
    const GeneratorParams g(th);
    const SpectralCoeffs f = test::random_spectral(rng, 8);
    const double lhs = domain_seminorm_sq(g, f);
    const double rhs = apply_generator_spectral(g, f).norm_sq();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
    // theta-independent equivalence with the (m + n)^2 weight, termwise
    const double c2 = g.cos_theta() * g.cos_theta();
    for (const auto& [mode, v] : f.coeffs()) {
      const double m = mode.m, n = mode.n;
      const double w = m * m + n * n + 2 * m * n * std::cos(2 * th);
      CHECK(c2 * (m + n) * (m + n) <= w + 1e-12);
      CHECK(w <= (m + n) * (m + n) + 1e-12);
    }
  }
}

TEST_CASE("carre_du_champ examples") {
  const Poly z = Poly::z();
  CHECK(carre_du_champ(z, z) == Poly(2.0));
  CHECK(max_coeff_diff(carre_du_champ(complex_hermite(1, 0), complex_hermite(1, 0)), Poly(1.0)) < 1e-15);
  CHECK(carre_du_champ(z, Poly::zbar()).is_zero());
}

TEST_CASE("carre_du_champ: derivative and generator forms agree") {
  test::Rng rng(16);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const GeneratorParams g(kThetas[static_cast<std::size_t>(trial) % kThetas.size()]);
    const Poly phi = test::random_poly(rng, 6), psi = test::random_poly(rng, 6);
    worst = std::max(worst, max_coeff_diff(carre_du_champ(g, phi, psi),
                                           carre_du_champ_via_generator(g, phi, psi)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("carre_du_champ is nonnegative on the diagonal") {
  test::Rng rng(17);
  double most_negative = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Poly phi = test::random_poly(rng, 6);
    const Poly gamma = carre_du_champ(phi, phi);
    for (int k = 0; k < 50; ++k) {
      const cplx v = eval(gamma, test::random_complex(rng, 2.0));
      most_negative = std::min(most_negative, v.real());
      CHECK(std::abs(v.imag()) <= 1e-9 * (1.0 + std::abs(v)));
    }
  }
  CHECK(most_negative >= -1e-12);
}

TEST_CASE("carre_du_champ is sesquilinear") {
  test::Rng rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly p1 = test::random_poly(rng, 5), p2 = test::random_poly(rng, 5), q = test::random_poly(rng, 5);
    const cplx a = test::random_complex(rng);
    CHECK(max_coeff_diff(carre_du_champ(p1 * a + p2, q), carre_du_champ(p1, q) * a + carre_du_champ(p2, q)) <= 1e-12);
    CHECK(max_coeff_diff(carre_du_champ(q, p1 * a + p2),
                         carre_du_champ(q, p1) * std::conj(a) + carre_du_champ(q, p2)) <= 1e-12);
  }
}

TEST_CASE("diffusion chain rule examples") {
  test::Rng rng(19);
  const MultiPoly identity = MultiPoly::monomial(1, {1, 0});
  for (double th : kThetas) {
    const Poly phi[] = {test::random_poly(rng, 4)};
    CHECK(diffusion_chain_rule_residual(GeneratorParams(th), identity, phi) == 0.0);
  }
  const Poly z[] = {Poly::z()};
  const auto r = diffusion_chain_rule(GeneratorParams(0.0), MultiPoly::monomial(1, {1, 1}), z);
  CHECK(r.residual == 0.0);
  CHECK(r.lhs == Poly(4.0) - Poly::monomial(1, 1, 2.0));
  const Poly j10[] = {complex_hermite(1, 0)};
  CHECK(diffusion_chain_rule_residual(GeneratorParams(kPi / 4), MultiPoly::monomial(1, {2, 0}), j10) <= 1e-9);
}

TEST_CASE("diffusion chain rule on random compositions") {
  test::Rng rng(20);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int slots = 1 + trial % 2;
    const GeneratorParams g(kThetas[static_cast<std::size_t>(trial) % kThetas.size()]);
    const MultiPoly f = test::random_multipoly(rng, slots, 3);
    std::vector<Poly> phi;
    for (int i = 0; i < slots; ++i) phi.push_back(test::random_poly(rng, 3));
    const auto r = diffusion_chain_rule(g, f, phi);
    worst = std::max(worst, r.residual / (1.0 + r.lhs.max_abs_coeff()));
  }
  CHECK(worst <= 1e-9);
}
