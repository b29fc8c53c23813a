#include <doctest.h>

#include "cou/kernels.hpp"
#include "cou/quadrature.hpp"
#include "support.hpp"

using namespace cou;
namespace k = cou::kernels;

namespace {

bool have_avx2() { return k::avx2::compiled() && k::detected_isa() == k::Isa::avx2; }

struct Batch {
  std::vector<double> re, im;
};

Batch random_batch(test::Rng& rng, std::size_t n, double scale = 2.0) {
  Batch b;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx x = test::random_complex(rng, scale);
    b.re.push_back(x.real());
    b.im.push_back(x.imag());
  }
  return b;
}

const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 63, 64, 65, 1000, 1001};

}  // namespace

TEST_CASE("PackedPoly layout") {
  const Poly p = Poly::monomial(2, 1, cplx(3, -1)) + Poly(0.5);
  const k::PackedPoly pk(p);
  CHECK(pk.deg_z == 2);
  CHECK(pk.deg_zbar == 1);
  CHECK(pk.row() == 2);
  REQUIRE(pk.re.size() == 6);
  CHECK(pk.re[2 * 2 + 1] == 3.0);
  CHECK(pk.im[2 * 2 + 1] == -1.0);
  CHECK(pk.re[0] == 0.5);
  const k::PackedPoly zero{Poly()};
  std::vector<double> xr{1.0}, xi{2.0}, orr(1, 9.0), oi(1, 9.0);
  k::scalar::eval_poly(zero, xr, xi, orr, oi);
  CHECK(orr[0] == 0.0);
  CHECK(oi[0] == 0.0);
}

TEST_CASE("scalar eval_poly matches Poly evaluation") {
  test::Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const Poly p = test::random_poly(rng, 9);
    const k::PackedPoly pk(p);
    const Batch x = random_batch(rng, 37);
    std::vector<double> orr(37), oi(37);
    k::scalar::eval_poly(pk, x.re, x.im, orr, oi);
    for (std::size_t i = 0; i < 37; ++i) {
      const cplx want = eval(p, {x.re[i], x.im[i]});
      CHECK(std::abs(cplx(orr[i], oi[i]) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("scalar weighted_sum and affine_update") {
  std::vector<double> w{0.5, 0.25, 0.25}, vr{1, 2, 3}, vi{0, -4, 4};
  CHECK(k::scalar::weighted_sum(w, vr, vi) == cplx(1.75, 0.0));
  CHECK(k::scalar::weighted_sum({}, {}, {}) == cplx(0.0));
  // compensated: large cancelling terms do not swallow the small one
  std::vector<double> w2{1, 1, 1}, r2{1e16, 1.0, -1e16}, i2{0, 0, 0};
  CHECK(k::scalar::weighted_sum(w2, r2, i2) == cplx(1.0));
  std::vector<double> zr{1.0, 0.0}, zi{0.0, 1.0}, gr{1.0, 2.0}, gi{-1.0, 0.5};
  k::scalar::affine_update(cplx(0, 1), 2.0, zr, zi, gr, gi);
  CHECK(zr[0] == 2.0);
  CHECK(zi[0] == -1.0);
  CHECK(zr[1] == 3.0);
  CHECK(zi[1] == 1.0);
}

TEST_CASE("AVX2 eval_poly is bit-identical to scalar") {
  if (!have_avx2()) return;
  test::Rng rng(72);
  for (std::size_t n : kLengths)
    for (int deg : {0, 1, 3, 8, 12}) {
      const k::PackedPoly pk(test::random_poly(rng, deg, 0.7));
      const Batch x = random_batch(rng, n);
      std::vector<double> sr(n), si(n), vr(n), vi(n);
      k::scalar::eval_poly(pk, x.re, x.im, sr, si);
      k::avx2::eval_poly(pk, x.re, x.im, vr, vi);
      CHECK(sr == vr);
      CHECK(si == vi);
    }
}

TEST_CASE("AVX2 affine_update is bit-identical to scalar") {
  if (!have_avx2()) return;
  test::Rng rng(73);
  for (std::size_t n : kLengths) {
    const Batch z = random_batch(rng, n), g = random_batch(rng, n);
    const cplx m = test::random_complex(rng);
    std::vector<double> sr = z.re, si = z.im, vr = z.re, vi = z.im;
    k::scalar::affine_update(m, 0.7, sr, si, g.re, g.im);
    k::avx2::affine_update(m, 0.7, vr, vi, g.re, g.im);
    CHECK(sr == vr);
    CHECK(si == vi);
  }
}

TEST_CASE("AVX2 weighted_sum agrees with scalar") {
  if (!have_avx2()) return;
  test::Rng rng(74);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t n : kLengths) {
    const Batch v = random_batch(rng, n, 1e3);
    std::vector<double> w(n);
    for (double& x : w) x = u(rng);
    const cplx a = k::scalar::weighted_sum(w, v.re, v.im);
    const cplx b = k::avx2::weighted_sum(w, v.re, v.im);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += w[i] * std::abs(cplx(v.re[i], v.im[i]));
    CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, mag));
  }
}

TEST_CASE("dispatch and ISA selection") {
  CHECK(k::isa_name(k::Isa::scalar) == "scalar");
  CHECK(k::isa_name(k::Isa::avx2) == "avx2");
  const k::Isa original = k::active_isa();
  k::set_isa(k::Isa::scalar);
  CHECK(k::active_isa() == k::Isa::scalar);
  const QuadratureRule rule(11);
  test::Rng rng(75);
  const Poly p = test::random_poly(rng, 8);
  const cplx scalar_integral = integrate_gamma(rule, p);
  if (have_avx2()) {
    k::set_isa(k::Isa::avx2);
    CHECK(k::active_isa() == k::Isa::avx2);
    const cplx vec_integral = integrate_gamma(rule, p);
    CHECK(std::abs(vec_integral - scalar_integral) <= 1e-13 * std::max(1.0, std::abs(scalar_integral)));
  } else {
    CHECK_THROWS_AS(k::set_isa(k::Isa::avx2), std::invalid_argument);
  }
  k::set_isa(original);
}
