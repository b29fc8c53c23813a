#include <doctest.h>

#include "cou/hermite.hpp"
#include "cou/quadrature.hpp"
#include "support.hpp"

using namespace cou;

namespace {

const double kRt2 = std::sqrt(2.0);

// H_n from its defining formula: d/dx [p e^{-x^2/2}] = (p' - x p) e^{-x^2/2}.
std::vector<double> hermite_by_differentiation(int n) {
  std::vector<double> p{1.0};
  for (int k = 0; k < n; ++k) {
    std::vector<double> next(p.size() + 1, 0.0);
    for (std::size_t j = 1; j < p.size(); ++j) next[j - 1] += static_cast<double>(j) * p[j];
    for (std::size_t j = 0; j < p.size(); ++j) next[j + 1] -= p[j];
    p = std::move(next);
  }
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  const double s = ((n & 1) ? -1.0 : 1.0) / std::sqrt(fact);
  for (double& c : p) c *= s;
  return p;
}

// E[x^k] for x ~ N(0,1): (k-1)!! for even k.
double normal_moment(int k) {
  if (k & 1) return 0.0;
  double v = 1.0;
  for (int j = k - 1; j > 1; j -= 2) v *= j;
  return v;
}

double rel_coeff_diff(const Poly& a, const Poly& ref) {
  return max_coeff_diff(a, ref) / std::max(1e-300, ref.max_abs_coeff());
}

}  // namespace

TEST_CASE("real_hermite examples") {
  CHECK(real_hermite(0).coeffs == std::vector<double>{1.0});
  CHECK(real_hermite(1).coeffs == std::vector<double>{0.0, 1.0});
  const auto h2 = real_hermite(2).coeffs;
  REQUIRE(h2.size() == 3);
  CHECK(std::abs(h2[0] + 1.0 / kRt2) < 1e-15);
  CHECK(h2[1] == 0.0);
  CHECK(std::abs(h2[2] - 1.0 / kRt2) < 1e-15);
}

TEST_CASE("real_hermite matches the defining formula for n <= 6") {
  for (int n = 0; n <= 6; ++n) {
    const auto oracle = hermite_by_differentiation(n);
    const auto h = real_hermite(n).coeffs;
    REQUIRE(h.size() == oracle.size());
    for (std::size_t k = 0; k < h.size(); ++k) CHECK(std::abs(h[k] - oracle[k]) < 1e-13);
  }
}

TEST_CASE("real_hermite normalization and orthonormality") {
  for (int n = 0; n <= 20; ++n) {
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    CHECK(std::abs(real_hermite(n).coeffs.back() * std::sqrt(fact) - 1.0) < 1e-12);
  }
  for (int a = 0; a <= 12; ++a)
    for (int b = 0; b <= 12; ++b) {
      const auto ha = real_hermite(a).coeffs, hb = real_hermite(b).coeffs;
      double ip = 0.0;
      for (std::size_t i = 0; i < ha.size(); ++i)
        for (std::size_t j = 0; j < hb.size(); ++j)
          ip += ha[i] * hb[j] * normal_moment(static_cast<int>(i + j));
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-9);
    }
  CHECK_THROWS_AS(real_hermite(65), std::out_of_range);
  CHECK_THROWS_AS(real_hermite(-1), std::out_of_range);
}

TEST_CASE("complex_hermite closed form examples") {
  CHECK(complex_hermite(0, 0) == Poly(1.0));
  const Poly j10 = complex_hermite(1, 0);
  CHECK(j10.terms().size() == 1);
  CHECK(std::abs(j10.coeff(1, 0) - 1.0 / kRt2) < 1e-15);
  const Poly j11 = complex_hermite(1, 1);
  CHECK(j11.terms().size() == 2);
  CHECK(std::abs(j11.coeff(1, 1) - 0.5) < 1e-15);
  CHECK(std::abs(j11.coeff(0, 0) + 1.0) < 1e-15);
  // J_{2,1} = (z^2 zbar - 4 z) / 4 and J_{2,0} = z^2 / (2 sqrt 2), worked by hand.
  const Poly j21 = complex_hermite(2, 1);
  CHECK(std::abs(j21.coeff(2, 1) - 0.25) < 1e-15);
  CHECK(std::abs(j21.coeff(1, 0) + 1.0) < 1e-15);
  CHECK(j21.terms().size() == 2);
  CHECK(std::abs(complex_hermite(2, 0).coeff(2, 0) - 1.0 / (2.0 * kRt2)) < 1e-15);
  CHECK_THROWS_AS(complex_hermite(40, 25), std::out_of_range);
  CHECK_NOTHROW(complex_hermite(32, 32));
}

TEST_CASE("complex_hermite has exact bidegree and unit norm") {
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) {
      const Poly j = complex_hermite(m, n);
      CHECK(j.degree_z() == m);
      CHECK(j.degree_zbar() == n);
      CHECK(j.degree() == m + n);
      CHECK(std::abs(test::exact_gamma_inner(j, j) - 1.0) < 1e-10);
    }
}

TEST_CASE("creation operator route examples") {
  const Poly j10 = complex_hermite_via_creation(1, 0);
  CHECK(j10.terms().size() == 1);
  CHECK(std::abs(j10.coeff(1, 0) - 1.0 / kRt2) < 1e-15);
  const Poly j01 = complex_hermite_via_creation(0, 1);
  CHECK(std::abs(j01.coeff(0, 1) - 1.0 / kRt2) < 1e-15);
  const Poly j20 = complex_hermite_via_creation(2, 0);
  CHECK(j20.terms().size() == 1);
  CHECK(std::abs(j20.coeff(2, 0) - 1.0 / (2.0 * kRt2)) < 1e-15);
  CHECK_THROWS_AS(complex_hermite_via_creation(20, 13), std::out_of_range);
}

TEST_CASE("creation route agrees with closed form for m + n <= 12") {
  double worst = 0.0;
  for (int m = 0; m <= 12; ++m)
    for (int n = 0; m + n <= 12; ++n)
      worst = std::max(worst, rel_coeff_diff(complex_hermite_via_creation(m, n), complex_hermite(m, n)));
  CHECK(worst <= 1e-10);
}

TEST_CASE("orthonormality against closed-form Gaussian moments") {
  double worst = 0.0;
  for (int d1 = 0; d1 <= 10; ++d1)
    for (int m = 0; m <= d1; ++m)
      for (int d2 = 0; d2 <= 10; ++d2)
        for (int p = 0; p <= d2; ++p) {
          const cplx ip = test::exact_gamma_inner(complex_hermite(m, d1 - m), complex_hermite(p, d2 - p));
          const double expected = (m == p && d1 == d2) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(ip - expected));
        }
  CHECK(worst <= 1e-9);
}

TEST_CASE("orthonormality under quadrature") {
  const QuadratureRule rule(12);
  double worst = 0.0;
  std::vector<Poly> basis;
  for (int d = 0; d <= 10; ++d)
    for (int m = 0; m <= d; ++m) basis.push_back(complex_hermite(m, d - m));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      worst = std::max(worst, std::abs(inner_product(rule, basis[i], basis[j]) - (i == j ? 1.0 : 0.0)));
  CHECK(worst <= 1e-9);
}

TEST_CASE("monomial_to_hermite examples") {
  const SpectralCoeffs z1 = monomial_to_hermite(1, 0);
  CHECK(z1.size() == 1);
  CHECK(std::abs(z1.at(1, 0) - kRt2) < 1e-15);
  const SpectralCoeffs zz = monomial_to_hermite(1, 1);
  CHECK(zz.size() == 2);
  CHECK(std::abs(zz.at(1, 1) - 2.0) < 1e-15);
  CHECK(std::abs(zz.at(0, 0) - 2.0) < 1e-15);
  const SpectralCoeffs one = monomial_to_hermite(0, 0);
  CHECK(one.size() == 1);
  CHECK(one.at(0, 0) == cplx(1.0));
}

TEST_CASE("monomial expansion round trips for m + n <= 10") {
  double worst = 0.0;
  for (int m = 0; m <= 10; ++m)
    for (int n = 0; m + n <= 10; ++n) {
      const SpectralCoeffs b = monomial_to_hermite(m, n);
      for (const auto& [mode, v] : b.coeffs()) {
        CHECK(mode.m - mode.n == m - n);
        CHECK(mode.m <= m);
      }
      const Poly back = synthesize(b);
      const Poly mono = Poly::monomial(m, n);
      worst = std::max(worst, max_coeff_diff(back, mono) / back.max_abs_coeff());
      // and the other direction: J expanded in monomials, then re-expanded in J
      const SpectralCoeffs again = expand_in_hermite(complex_hermite(m, n));
      SpectralCoeffs unit;
      unit.set(m, n, 1.0);
      worst = std::max(worst, max_coeff_diff(again, unit));
    }
  CHECK(worst <= 1e-9);
}

TEST_CASE("basis transform examples") {
  const BasisTransform t0 = build_basis_transform(0);
  CHECK(t0.dim() == 1);
  CHECK(t0.forward(0, 0) == cplx(1.0));
  CHECK(t0.inverse(0, 0) == cplx(1.0));

  // Row J_{1,0} over (H_0(x) H_1(y), H_1(x) H_0(y)), column k is H_k(x) H_{1-k}(y).
  const BasisTransform t1 = build_basis_transform(1);
  CHECK(std::abs(t1.forward(1, 1) - 1.0 / kRt2) < 1e-15);
  CHECK(std::abs(t1.forward(1, 0) - cplx(0.0, 1.0 / kRt2)) < 1e-15);

  const BasisTransform t2 = build_basis_transform(2);
  CHECK(identity_deviation(matmul(t2.forward_matrix(), t2.inverse_matrix(), 3), 3) <= 1e-12);
  CHECK_THROWS_AS(build_basis_transform(17), std::out_of_range);
}

TEST_CASE("basis transforms are mutually inverse and unitary for l <= 16") {
  for (int l = 0; l <= 16; ++l) {
    const BasisTransform t = build_basis_transform(l);
    CHECK(identity_deviation(matmul(t.forward_matrix(), t.inverse_matrix(), t.dim()), t.dim()) <= 1e-10);
    CHECK(identity_deviation(matmul(t.inverse_matrix(), t.forward_matrix(), t.dim()), t.dim()) <= 1e-10);
    CHECK(unitarity_deviation(t.forward_matrix(), t.dim()) <= 1e-10);
    CHECK(unitarity_deviation(t.inverse_matrix(), t.dim()) <= 1e-10);
  }
}

TEST_CASE("forward transform reproduces J from real Hermite products for l <= 8") {
  for (int l = 0; l <= 8; ++l) {
    const BasisTransform t = build_basis_transform(l);
    std::vector<Poly> products;
    for (int k = 0; k <= l; ++k) products.push_back(real_hermite_product(k, l - k));
    for (int m = 0; m <= l; ++m) {
      Poly built;
      for (int k = 0; k <= l; ++k) built += products[static_cast<std::size_t>(k)] * t.forward(m, k);
      CHECK(max_coeff_diff(built, complex_hermite(m, l - m)) <= 1e-9);
    }
    for (int k = 0; k <= l; ++k) {
      Poly built;
      for (int m = 0; m <= l; ++m) built += complex_hermite(m, l - m) * t.inverse(k, m);
      CHECK(max_coeff_diff(built, products[static_cast<std::size_t>(k)]) <= 1e-9);
    }
  }
}
