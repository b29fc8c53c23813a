#include <cmath>
#include <stdexcept>

#include "cou/kernels.hpp"

namespace cou::kernels {

PackedPoly::PackedPoly(const Poly& p) : deg_z(p.degree_z()), deg_zbar(p.degree_zbar()) {
  if (p.is_zero()) return;
  const auto size = static_cast<std::size_t>((deg_z + 1) * (deg_zbar + 1));
  re.assign(size, 0.0);
  im.assign(size, 0.0);
  for (const auto& [e, c] : p.terms()) {
    const auto k = static_cast<std::size_t>(e.a * row() + e.b);
    re[k] = c.real();
    im[k] = c.imag();
  }
}

namespace scalar {

void eval_poly(const PackedPoly& p, std::span<const double> x_re, std::span<const double> x_im,
               std::span<double> out_re, std::span<double> out_im) {
  const std::size_t count = x_re.size();
  if (x_im.size() != count || out_re.size() != count || out_im.size() != count)
    throw std::invalid_argument("eval_poly: span size mismatch");
  const int row = p.row();
  for (std::size_t k = 0; k < count; ++k) {
    const double zr = x_re[k], zi = x_im[k];
    const double wr = zr, wi = -zi;
    double rr = 0.0, ri = 0.0;
    for (int a = p.deg_z; a >= 0; --a) {
      const double* cr = p.re.data() + a * row;
      const double* ci = p.im.data() + a * row;
      double qr = 0.0, qi = 0.0;
      for (int b = p.deg_zbar; b >= 0; --b) {
        const double tr = (qr * wr - qi * wi) + cr[b];
        const double ti = (qr * wi + qi * wr) + ci[b];
        qr = tr;
        qi = ti;
      }
      const double sr = (rr * zr - ri * zi) + qr;
      const double si = (rr * zi + ri * zr) + qi;
      rr = sr;
      ri = si;
    }
    out_re[k] = rr;
    out_im[k] = ri;
  }
}

namespace {
inline void neumaier(double& sum, double& comp, double v) {
  const double t = sum + v;
  if (std::abs(sum) >= std::abs(v))
    comp += (sum - t) + v;
  else
    comp += (v - t) + sum;
  sum = t;
}
}  // namespace

cplx weighted_sum(std::span<const double> w, std::span<const double> v_re,
                  std::span<const double> v_im) {
  if (v_re.size() != w.size() || v_im.size() != w.size())
    throw std::invalid_argument("weighted_sum: span size mismatch");
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    neumaier(sr, cr, w[k] * v_re[k]);
    neumaier(si, ci, w[k] * v_im[k]);
  }
  return {sr + cr, si + ci};
}

void affine_update(cplx mult, double scale, std::span<double> z_re, std::span<double> z_im,
                   std::span<const double> g_re, std::span<const double> g_im) {
  const std::size_t count = z_re.size();
  if (z_im.size() != count || g_re.size() != count || g_im.size() != count)
    throw std::invalid_argument("affine_update: span size mismatch");
  const double mr = mult.real(), mi = mult.imag();
  for (std::size_t k = 0; k < count; ++k) {
    const double zr = z_re[k], zi = z_im[k];
    z_re[k] = (mr * zr - mi * zi) + scale * g_re[k];
    z_im[k] = (mr * zi + mi * zr) + scale * g_im[k];
  }
}

}  // namespace scalar
}  // namespace cou::kernels
