#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "cou/numeric.hpp"
#include "cou/poly.hpp"

// Data-parallel inner loops. Each kernel has a scalar reference in
// kernels::scalar and, on x86-64, an AVX2 variant in kernels::avx2 compiled
// in its own translation unit. The free functions in kernels:: dispatch at
// runtime on CPU support, overridable with set_isa() or COU_ISA=scalar.
//
// eval_poly and affine_update perform the same IEEE operations in the same
// order in both variants (no FMA contraction), so their results are
// bit-identical. weighted_sum reorders the accumulation across lanes; the
// variants agree to 1e-13 relative.

namespace cou::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
/// Best ISA the running CPU supports.
Isa detected_isa();
/// ISA currently used by the dispatching entry points.
Isa active_isa();
/// Throws std::invalid_argument if the CPU lacks the requested ISA.
void set_isa(Isa isa);

/// Dense coefficient table of a Poly: c[a][b] for a <= deg_z, b <= deg_zbar,
/// split into real and imaginary planes (row-major, row = a).
struct PackedPoly {
  int deg_z = -1;
  int deg_zbar = -1;
  std::vector<double> re;
  std::vector<double> im;

  explicit PackedPoly(const Poly& p);
  int row() const { return deg_zbar + 1; }
};

/// out[k] = p(x[k]) with zbar = conj(x[k]).
void eval_poly(const PackedPoly& p, std::span<const double> x_re, std::span<const double> x_im,
               std::span<double> out_re, std::span<double> out_im);

/// sum_k w[k] (v_re[k] + i v_im[k]) with compensated accumulation.
cplx weighted_sum(std::span<const double> w, std::span<const double> v_re,
                  std::span<const double> v_im);

/// z[k] <- mult * z[k] + scale * g[k], elementwise in complex arithmetic.
void affine_update(cplx mult, double scale, std::span<double> z_re, std::span<double> z_im,
                   std::span<const double> g_re, std::span<const double> g_im);

namespace scalar {
void eval_poly(const PackedPoly& p, std::span<const double> x_re, std::span<const double> x_im,
               std::span<double> out_re, std::span<double> out_im);
cplx weighted_sum(std::span<const double> w, std::span<const double> v_re,
                  std::span<const double> v_im);
void affine_update(cplx mult, double scale, std::span<double> z_re, std::span<double> z_im,
                   std::span<const double> g_re, std::span<const double> g_im);
}  // namespace scalar

namespace avx2 {
/// False when the library was built without the AVX2 translation unit.
bool compiled();
void eval_poly(const PackedPoly& p, std::span<const double> x_re, std::span<const double> x_im,
               std::span<double> out_re, std::span<double> out_im);
cplx weighted_sum(std::span<const double> w, std::span<const double> v_re,
                  std::span<const double> v_im);
void affine_update(cplx mult, double scale, std::span<double> z_re, std::span<double> z_im,
                   std::span<const double> g_re, std::span<const double> g_im);
}  // namespace avx2

}  // namespace cou::kernels
