#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cou/kernels.hpp"

namespace cou::kernels {

#ifndef COU_HAVE_AVX2
namespace avx2 {
bool compiled() { return false; }
void eval_poly(const PackedPoly&, std::span<const double>, std::span<const double>,
               std::span<double>, std::span<double>) {
  throw std::logic_error("AVX2 kernels not compiled");
}
cplx weighted_sum(std::span<const double>, std::span<const double>, std::span<const double>) {
  throw std::logic_error("AVX2 kernels not compiled");
}
void affine_update(cplx, double, std::span<double>, std::span<double>, std::span<const double>,
                   std::span<const double>) {
  throw std::logic_error("AVX2 kernels not compiled");
}
}  // namespace avx2
#endif

namespace {

bool cpu_has_avx2() {
#if defined(COU_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Isa initial_isa() {
  const Isa best = detected_isa();
  if (const char* env = std::getenv("COU_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
  }
  return best;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
  static const bool avx2 = cpu_has_avx2();
  return avx2 ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2)
    throw std::invalid_argument("set_isa: CPU or build lacks AVX2");
  current().store(isa, std::memory_order_relaxed);
}

void eval_poly(const PackedPoly& p, std::span<const double> x_re, std::span<const double> x_im,
               std::span<double> out_re, std::span<double> out_im) {
  if (active_isa() == Isa::avx2)
    avx2::eval_poly(p, x_re, x_im, out_re, out_im);
  else
    scalar::eval_poly(p, x_re, x_im, out_re, out_im);
}

cplx weighted_sum(std::span<const double> w, std::span<const double> v_re,
                  std::span<const double> v_im) {
  return active_isa() == Isa::avx2 ? avx2::weighted_sum(w, v_re, v_im)
                                   : scalar::weighted_sum(w, v_re, v_im);
}

void affine_update(cplx mult, double scale, std::span<double> z_re, std::span<double> z_im,
                   std::span<const double> g_re, std::span<const double> g_im) {
  if (active_isa() == Isa::avx2)
    avx2::affine_update(mult, scale, z_re, z_im, g_re, g_im);
  else
    scalar::affine_update(mult, scale, z_re, z_im, g_re, g_im);
}

}  // namespace cou::kernels
