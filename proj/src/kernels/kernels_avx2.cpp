// Compiled with -mavx2 only (no -mfma): every multiply and add is rounded
// separately, matching the scalar reference operation for operation.

#include <immintrin.h>

#include <cmath>
#include <stdexcept>

#include "cou/kernels.hpp"

namespace cou::kernels::avx2 {

bool compiled() { return true; }

namespace {
constexpr std::size_t kLanes = 4;

inline void cmul(__m256d ar, __m256d ai, __m256d br, __m256d bi, __m256d& outr, __m256d& outi) {
  outr = _mm256_sub_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi));
  outi = _mm256_add_pd(_mm256_mul_pd(ar, bi), _mm256_mul_pd(ai, br));
}
}  // namespace

void eval_poly(const PackedPoly& p, std::span<const double> x_re, std::span<const double> x_im,
               std::span<double> out_re, std::span<double> out_im) {
  const std::size_t count = x_re.size();
  if (x_im.size() != count || out_re.size() != count || out_im.size() != count)
    throw std::invalid_argument("eval_poly: span size mismatch");
  const int row = p.row();
  const __m256d neg = _mm256_set1_pd(-0.0);
  const std::size_t body = count - count % kLanes;
  for (std::size_t k = 0; k < body; k += kLanes) {
    const __m256d zr = _mm256_loadu_pd(x_re.data() + k);
    const __m256d zi = _mm256_loadu_pd(x_im.data() + k);
    const __m256d wr = zr;
    const __m256d wi = _mm256_xor_pd(zi, neg);
    __m256d rr = _mm256_setzero_pd(), ri = _mm256_setzero_pd();
    for (int a = p.deg_z; a >= 0; --a) {
      const double* cr = p.re.data() + a * row;
      const double* ci = p.im.data() + a * row;
      __m256d qr = _mm256_setzero_pd(), qi = _mm256_setzero_pd();
      for (int b = p.deg_zbar; b >= 0; --b) {
        __m256d tr, ti;
        cmul(qr, qi, wr, wi, tr, ti);
        qr = _mm256_add_pd(tr, _mm256_set1_pd(cr[b]));
        qi = _mm256_add_pd(ti, _mm256_set1_pd(ci[b]));
      }
      __m256d sr, si;
      cmul(rr, ri, zr, zi, sr, si);
      rr = _mm256_add_pd(sr, qr);
      ri = _mm256_add_pd(si, qi);
    }
    _mm256_storeu_pd(out_re.data() + k, rr);
    _mm256_storeu_pd(out_im.data() + k, ri);
  }
  if (body < count)
    scalar::eval_poly(p, x_re.subspan(body), x_im.subspan(body), out_re.subspan(body),
                      out_im.subspan(body));
}

namespace {

inline void neumaier_vec(__m256d& sum, __m256d& comp, __m256d v, __m256d abs_mask) {
  const __m256d t = _mm256_add_pd(sum, v);
  const __m256d big_sum =
      _mm256_cmp_pd(_mm256_and_pd(sum, abs_mask), _mm256_and_pd(v, abs_mask), _CMP_GE_OQ);
  const __m256d when_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
  const __m256d when_v = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
  comp = _mm256_add_pd(comp, _mm256_blendv_pd(when_v, when_sum, big_sum));
  sum = t;
}

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
  const std::size_t count = w.size();
  const std::size_t body = count - count % kLanes;
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d sr = _mm256_setzero_pd(), cr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd(), ci = _mm256_setzero_pd();
  for (std::size_t k = 0; k < body; k += kLanes) {
    const __m256d wk = _mm256_loadu_pd(w.data() + k);
    neumaier_vec(sr, cr, _mm256_mul_pd(wk, _mm256_loadu_pd(v_re.data() + k)), abs_mask);
    neumaier_vec(si, ci, _mm256_mul_pd(wk, _mm256_loadu_pd(v_im.data() + k)), abs_mask);
  }
  alignas(32) double lane_sr[kLanes], lane_cr[kLanes], lane_si[kLanes], lane_ci[kLanes];
  _mm256_store_pd(lane_sr, sr);
  _mm256_store_pd(lane_cr, cr);
  _mm256_store_pd(lane_si, si);
  _mm256_store_pd(lane_ci, ci);
  double tr = 0.0, tcr = 0.0, ti = 0.0, tci = 0.0;
  for (std::size_t l = 0; l < kLanes; ++l) {
    neumaier(tr, tcr, lane_sr[l]);
    neumaier(ti, tci, lane_si[l]);
  }
  for (std::size_t l = 0; l < kLanes; ++l) {
    tcr += lane_cr[l];
    tci += lane_ci[l];
  }
  for (std::size_t k = body; k < count; ++k) {
    neumaier(tr, tcr, w[k] * v_re[k]);
    neumaier(ti, tci, w[k] * v_im[k]);
  }
  return {tr + tcr, ti + tci};
}

void affine_update(cplx mult, double scale, std::span<double> z_re, std::span<double> z_im,
                   std::span<const double> g_re, std::span<const double> g_im) {
  const std::size_t count = z_re.size();
  if (z_im.size() != count || g_re.size() != count || g_im.size() != count)
    throw std::invalid_argument("affine_update: span size mismatch");
  const __m256d mr = _mm256_set1_pd(mult.real());
  const __m256d mi = _mm256_set1_pd(mult.imag());
  const __m256d s = _mm256_set1_pd(scale);
  const std::size_t body = count - count % kLanes;
  for (std::size_t k = 0; k < body; k += kLanes) {
    const __m256d zr = _mm256_loadu_pd(z_re.data() + k);
    const __m256d zi = _mm256_loadu_pd(z_im.data() + k);
    __m256d pr, pi;
    cmul(mr, mi, zr, zi, pr, pi);
    _mm256_storeu_pd(z_re.data() + k,
                     _mm256_add_pd(pr, _mm256_mul_pd(s, _mm256_loadu_pd(g_re.data() + k))));
    _mm256_storeu_pd(z_im.data() + k,
                     _mm256_add_pd(pi, _mm256_mul_pd(s, _mm256_loadu_pd(g_im.data() + k))));
  }
  if (body < count)
    scalar::affine_update(mult, scale, z_re.subspan(body), z_im.subspan(body),
                          g_re.subspan(body), g_im.subspan(body));
}

}  // namespace cou::kernels::avx2
