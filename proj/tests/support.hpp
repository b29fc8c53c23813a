#pragma once

// Test-only generators and oracles. Nothing here calls the code paths it is
// used to check.

#include <cmath>
#include <random>
#include <vector>

#include "cou/multipoly.hpp"
#include "cou/poly.hpp"
#include "cou/spectral.hpp"

namespace cou::test {

using Rng = std::mt19937_64;

inline cplx random_complex(Rng& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

/// Sparse random polynomial with total degree <= max_degree.
inline Poly random_poly(Rng& rng, int max_degree, double density = 0.5) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Poly::Terms t;
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b)
      if (u(rng) < density) t.emplace(Exponent{a, b}, random_complex(rng));
  return Poly(std::move(t));
}

inline SpectralCoeffs random_spectral(Rng& rng, int max_total, double density = 0.6) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SpectralCoeffs f;
  for (int total = 0; total <= max_total; ++total)
    for (int m = 0; m <= total; ++m)
      if (u(rng) < density) f.set(m, total - m, random_complex(rng));
  return f;
}

inline MultiPoly random_multipoly(Rng& rng, int slots, int max_degree, double density = 0.4) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MultiPoly::Terms t;
  std::vector<int> e(static_cast<std::size_t>(2 * slots), 0);
  // Enumerate all exponent vectors with total <= max_degree.
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos == e.size()) {
      if (u(rng) < density) t.emplace(e, random_complex(rng));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[pos] = k;
      self(self, pos + 1, left - k);
    }
    e[pos] = 0;
  };
  rec(rec, 0, max_degree);
  return MultiPoly(slots, std::move(t));
}

/// E[z^p zbar^q] under gamma (independent N(0,1) real and imaginary parts):
/// zero unless p == q, and E|z|^{2k} = 2^k k!.
inline double gaussian_moment(int p, int q) {
  if (p != q) return 0.0;
  double v = 1.0;
  for (int k = 1; k <= p; ++k) v *= 2.0 * k;
  return v;
}

/// <f, g> = E[f conj(g)] computed term by term from the closed-form moments.
inline cplx exact_gamma_inner(const Poly& f, const Poly& g) {
  cplx s = 0.0;
  for (const auto& [ef, cf] : f.terms())
    for (const auto& [eg, cg] : g.terms())
      s += cf * std::conj(cg) * gaussian_moment(ef.a + eg.b, ef.b + eg.a);
  return s;
}

/// Relative difference with a unit floor: |a - b| / max(1, |b|).
inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace cou::test
