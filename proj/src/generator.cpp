#include "cou/generator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cou {

GeneratorParams::GeneratorParams(double theta)
    : theta_(theta), cos_(std::cos(theta)), sin_(std::sin(theta)) {
  if (!std::isfinite(theta) || std::abs(theta) > kMaxAbsTheta)
    throw std::invalid_argument("theta must satisfy |theta| <= 0.499999*pi, got " +
                                std::to_string(theta));
}

cplx eigenvalue(const GeneratorParams& params, int m, int n) {
  return -cplx(static_cast<double>(m + n) * params.cos_theta(),
               static_cast<double>(m - n) * params.sin_theta());
}

Poly apply_generator_wirtinger(const GeneratorParams& params, const Poly& phi) {
  const Poly dz = wirtinger_dz(phi);
  const Poly dzbar = wirtinger_dzbar(phi);
  const Poly laplace = wirtinger_dzbar(dz) * cplx(4.0 * params.cos_theta());
  const Poly drift_z = Poly::monomial(1, 0, -params.drift()) * dz;
  const Poly drift_zbar = Poly::monomial(0, 1, -std::conj(params.drift())) * dzbar;
  return laplace + drift_z + drift_zbar;
}

SpectralCoeffs apply_generator_spectral(const GeneratorParams& params, const SpectralCoeffs& f) {
  SpectralCoeffs out;
  for (const auto& [mode, b] : f.coeffs()) out.set(mode.m, mode.n, eigenvalue(params, mode.m, mode.n) * b);
  return out;
}

GeneratorParams adjoint_params(const GeneratorParams& params) {
  return GeneratorParams(-params.theta());
}

double domain_seminorm_sq(const GeneratorParams& params, const SpectralCoeffs& f) {
  const double cos2 = std::cos(2.0 * params.theta());
  CompensatedSum s;
  for (const auto& [mode, b] : f.coeffs()) {
    const double m = mode.m, n = mode.n;
    s.add((m * m + n * n + 2.0 * m * n * cos2) * std::norm(b));
  }
  return s.value().real();
}

Poly carre_du_champ(const Poly& phi, const Poly& psi) {
  const Poly a = wirtinger_dz(phi) * conjugate(wirtinger_dz(psi));
  const Poly b = wirtinger_dzbar(phi) * conjugate(wirtinger_dzbar(psi));
  return (a + b) * cplx(2.0);
}

Poly carre_du_champ(const GeneratorParams&, const Poly& phi, const Poly& psi) {
  return carre_du_champ(phi, psi);
}

Poly carre_du_champ_via_generator(const GeneratorParams& params, const Poly& phi,
                                  const Poly& psi) {
  const Poly psi_bar = conjugate(psi);
  const Poly whole = apply_generator_wirtinger(params, phi * psi_bar);
  const Poly left = phi * apply_generator_wirtinger(params, psi_bar);
  const Poly right = psi_bar * apply_generator_wirtinger(params, phi);
  return (whole - left - right) * cplx(1.0 / (2.0 * params.cos_theta()));
}

ChainRuleResult diffusion_chain_rule(const GeneratorParams& params, const MultiPoly& f,
                                     std::span<const Poly> phi) {
  const int n = f.slots();
  if (phi.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("diffusion_chain_rule: need one inner polynomial per slot");

  ChainRuleResult out;
  out.lhs = apply_generator_wirtinger(params, compose(f, phi));

  std::vector<Poly> phi_bar;
  phi_bar.reserve(phi.size());
  for (const Poly& p : phi) phi_bar.push_back(conjugate(p));

  Poly second;
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const MultiPoly fw = f.d_w(i);
    const MultiPoly fwbar = f.d_wbar(i);
    for (int j = 0; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      second += carre_du_champ(phi[ui], phi_bar[uj]) * compose(fw.d_w(j), phi);
      second += carre_du_champ(phi_bar[ui], phi[uj]) * compose(fwbar.d_wbar(j), phi);
      second += carre_du_champ(phi[ui], phi[uj]) * cplx(2.0) * compose(fw.d_wbar(j), phi);
    }
  }
  out.rhs = second * cplx(params.cos_theta());
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    out.rhs += apply_generator_wirtinger(params, phi[ui]) * compose(f.d_w(i), phi);
    out.rhs += apply_generator_wirtinger(params, phi_bar[ui]) * compose(f.d_wbar(i), phi);
  }
  out.residual = max_coeff_diff(out.lhs, out.rhs);
  return out;
}

double diffusion_chain_rule_residual(const GeneratorParams& params, const MultiPoly& f,
                                     std::span<const Poly> phi) {
  return diffusion_chain_rule(params, f, phi).residual;
}

}  // namespace cou
