#pragma once

#include <array>

#include "cou/generator.hpp"
#include "cou/multipoly.hpp"
#include "cou/quadrature.hpp"

namespace cou {

/// Generator angle plus a time t >= 0 for the semigroup P_t = e^{t L_theta}.
///
/// Mehler form: P_t phi(x) = E phi(rotation * x + noise_scale * W), W ~ gamma,
/// where gamma has independent N(0,1) real and imaginary parts (E|W|^2 = 2).
class PropagatorParams {
public:
  /// Throws std::invalid_argument for t < 0 or non-finite t.
  PropagatorParams(GeneratorParams params, double t);

  const GeneratorParams& generator() const { return params_; }
  double theta() const { return params_.theta(); }
  double t() const { return t_; }
  /// e^{-t cos(theta)} in (0, 1].
  double decay() const { return decay_; }
  /// e^{-e^{i theta} t}.
  cplx rotation() const { return rotation_; }
  /// sqrt(1 - e^{-2 t cos(theta)}).
  double noise_scale() const { return noise_scale_; }

private:
  GeneratorParams params_;
  double t_;
  double decay_;
  cplx rotation_;
  double noise_scale_;
};

/// b_{m,n} -> e^{lambda_{m,n} t} b_{m,n}.
SpectralCoeffs semigroup_spectral(const PropagatorParams& p, const SpectralCoeffs& f);

/// P_t phi(x) by quadrature of the Mehler integral.
cplx semigroup_mehler(const PropagatorParams& p, const Evaluable& phi, cplx x,
                      const QuadratureRule& rule);
cplx semigroup_mehler(const PropagatorParams& p, const Poly& phi, cplx x,
                      const QuadratureRule& rule);

/// (P_t^theta)^* = P_t^{-theta}.
PropagatorParams adjoint_semigroup(const PropagatorParams& p);

struct CommutatorValues {
  cplx lhs;    ///< P_t^theta P_t^{-theta} phi (x), nested quadrature
  cplx rhs;    ///< P_t^{-theta} P_t^theta phi (x), nested quadrature
  cplx fused;  ///< E phi(e^{-2t cos theta} x + sqrt(1 - e^{-4t cos theta}) W)
};

/// Nested quadrature uses the same 1-d rule at both levels (K^4 nodes).
CommutatorValues normality_commutator(const PropagatorParams& p, const Evaluable& phi, cplx x,
                                      const QuadratureRule& rule);
CommutatorValues normality_commutator(const PropagatorParams& p, const Poly& phi, cplx x,
                                      const QuadratureRule& rule);

/// |int P_t phi dgamma - int phi dgamma|, outer and inner integrals by the same rule.
double invariance_residual(const PropagatorParams& p, const Evaluable& phi,
                           const QuadratureRule& rule);
double invariance_residual(const PropagatorParams& p, const Poly& phi, const QuadratureRule& rule);

/// |P_t phi(x) - int phi dgamma| at t = t_large.
double ergodic_limit_residual(const GeneratorParams& params, const Evaluable& phi, cplx x,
                              double t_large, const QuadratureRule& rule);
double ergodic_limit_residual(const GeneratorParams& params, const Poly& phi, cplx x,
                              double t_large, const QuadratureRule& rule);

/// Exponential bound on the ergodic residual of a polynomial:
/// |P_t phi(x) - mean| <= C e^{-d t cos(theta)} with C = sum_{(m,n) != 0} |b_{m,n}| |J_{m,n}(x)|
/// and d the smallest nonzero total degree present in the J expansion.
struct ErgodicEnvelope {
  double constant = 0.0;  ///< C
  int min_degree = 0;     ///< d; 0 when phi is constant
  double bound(const GeneratorParams& params, double t) const;
};
ErgodicEnvelope ergodic_envelope(const Poly& phi, cplx x);

/// |<P_t^theta phi, psi> - <phi, P_t^{-theta} psi>| with every integral by quadrature.
double adjoint_identity_residual(const PropagatorParams& p, const Poly& phi, const Poly& psi,
                                 const QuadratureRule& rule);

/// The 2x2 unitary M = [[e^{-alpha t}, s], [-s, e^{-conj(alpha) t}]], alpha = e^{i theta},
/// s = sqrt(1 - e^{-2t cos theta}), that maps two independent gamma variables to two
/// independent gamma variables. Row-major.
std::array<cplx, 4> mixing_matrix(const PropagatorParams& p);

/// |E G(M z) - E G(z)| for z = (z_1, z_2) independent gamma variables and G a
/// 2-slot polynomial, both expectations by K^4 tensor quadrature.
double unitary_mixing_residual(const PropagatorParams& p, const MultiPoly& g,
                               const QuadratureRule& rule);

}  // namespace cou
