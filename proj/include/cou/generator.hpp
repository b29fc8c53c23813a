#pragma once

#include <span>

#include "cou/multipoly.hpp"
#include "cou/poly.hpp"
#include "cou/spectral.hpp"

namespace cou {

/// Largest admissible |theta|; cos(theta) -> 0 degenerates the diffusion.
inline constexpr double kMaxAbsTheta = 0.499999 * kPi;

/// Angle theta of the generator L_theta = 4 cos(theta) d^2/dz dzbar
///   - e^{i theta} z d/dz - e^{-i theta} zbar d/dzbar.
class GeneratorParams {
public:
  /// Throws std::invalid_argument unless |theta| <= kMaxAbsTheta.
  explicit GeneratorParams(double theta);

  double theta() const { return theta_; }
  double cos_theta() const { return cos_; }
  double sin_theta() const { return sin_; }
  /// e^{i theta}, the drift rotation.
  cplx drift() const { return {cos_, sin_}; }

private:
  double theta_;
  double cos_;
  double sin_;
};

/// lambda_{m,n} = -[(m + n) cos(theta) + i (m - n) sin(theta)].
cplx eigenvalue(const GeneratorParams& params, int m, int n);

/// L_theta phi by Wirtinger calculus, exact polynomial arithmetic.
Poly apply_generator_wirtinger(const GeneratorParams& params, const Poly& phi);

/// L_theta in the J basis: b_{m,n} -> lambda_{m,n} b_{m,n}.
SpectralCoeffs apply_generator_spectral(const GeneratorParams& params, const SpectralCoeffs& f);

/// theta -> -theta; L_theta^* = L_{-theta}.
GeneratorParams adjoint_params(const GeneratorParams& params);

/// sum (m^2 + n^2 + 2 m n cos 2theta) |b_{m,n}|^2, which equals ||L_theta f||^2.
double domain_seminorm_sq(const GeneratorParams& params, const SpectralCoeffs& f);

/// Gamma(phi, psi) = 2 [phi_z conj(psi_z) + phi_zbar conj(psi_zbar)].
/// Independent of theta.
Poly carre_du_champ(const Poly& phi, const Poly& psi);
/// Overload kept for call sites that carry the generator parameters around.
Poly carre_du_champ(const GeneratorParams& params, const Poly& phi, const Poly& psi);

/// Gamma from the generator:
///   (1 / 2cos(theta)) [L(phi conj(psi)) - phi L(conj(psi)) - conj(psi) L(phi)].
Poly carre_du_champ_via_generator(const GeneratorParams& params, const Poly& phi,
                                  const Poly& psi);

struct ChainRuleResult {
  Poly lhs;         ///< L_theta(F o phi)
  Poly rhs;         ///< Gamma-and-first-order form of the diffusion chain rule
  double residual;  ///< max coefficientwise |lhs - rhs|
};

/// Both sides of the diffusion chain rule
///   L(F o phi) = cos(theta) sum_{i,j} [ Gamma(phi_i, conj phi_j) F_{w_i w_j}
///                                      + Gamma(conj phi_i, phi_j) F_{wbar_i wbar_j}
///                                      + 2 Gamma(phi_i, phi_j) F_{w_i wbar_j} ] o phi
///              + sum_i [ L(phi_i) F_{w_i} + L(conj phi_i) F_{wbar_i} ] o phi.
ChainRuleResult diffusion_chain_rule(const GeneratorParams& params, const MultiPoly& f,
                                     std::span<const Poly> phi);

/// Residual only; the contract is residual <= 1e-9 (1 + ||L(F o phi)||).
double diffusion_chain_rule_residual(const GeneratorParams& params, const MultiPoly& f,
                                     std::span<const Poly> phi);

}  // namespace cou
