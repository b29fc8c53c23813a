#include "cou/semigroup.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cou/hermite.hpp"
#include "cou/kernels.hpp"

namespace cou {

PropagatorParams::PropagatorParams(GeneratorParams params, double t) : params_(params), t_(t) {
  if (!std::isfinite(t) || t < 0.0)
    throw std::invalid_argument("semigroup time must be finite and >= 0, got " + std::to_string(t));
  const double c = params_.cos_theta();
  decay_ = std::exp(-t * c);
  rotation_ = std::exp(-params_.drift() * t);
  noise_scale_ = std::sqrt(-std::expm1(-2.0 * t * c));
}

SpectralCoeffs semigroup_spectral(const PropagatorParams& p, const SpectralCoeffs& f) {
  if (p.t() == 0.0) return f;
  SpectralCoeffs out;
  for (const auto& [mode, b] : f.coeffs())
    out.set(mode.m, mode.n, std::exp(eigenvalue(p.generator(), mode.m, mode.n) * p.t()) * b);
  return out;
}

PropagatorParams adjoint_semigroup(const PropagatorParams& p) {
  return PropagatorParams(adjoint_params(p.generator()), p.t());
}

namespace {

// E phi(a x + s W) by the tensor rule.
cplx gaussian_shift_mean(const Evaluable& phi, cplx center, double s, const QuadratureRule& rule) {
  CompensatedSum sum;
  const auto w = rule.grid_weights();
  const auto re = rule.grid_re();
  const auto im = rule.grid_im();
  for (std::size_t k = 0; k < w.size(); ++k) sum.add(w[k] * phi(center + s * cplx(re[k], im[k])));
  return sum.value();
}

// Flattened evaluation batch: points and matching weights, consumed by the kernels.
struct Batch {
  std::vector<double> re, im, w;
  void reserve(std::size_t n) {
    re.reserve(n);
    im.reserve(n);
    w.reserve(n);
  }
  void push(cplx z, double weight) {
    re.push_back(z.real());
    im.push_back(z.imag());
    w.push_back(weight);
  }
  cplx integrate(const Poly& phi) const {
    if (phi.is_zero()) return 0.0;
    std::vector<double> vr(re.size()), vi(re.size());
    kernels::eval_poly(kernels::PackedPoly(phi), re, im, vr, vi);
    return kernels::weighted_sum(w, vr, vi);
  }
};

std::vector<cplx> grid_points(const QuadratureRule& rule) {
  std::vector<cplx> pts(rule.grid_weights().size());
  for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = cplx(rule.grid_re()[k], rule.grid_im()[k]);
  return pts;
}

Batch shift_batch(cplx center, double s, const QuadratureRule& rule) {
  const auto pts = grid_points(rule);
  const auto w = rule.grid_weights();
  Batch b;
  b.reserve(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) b.push(center + s * pts[k], w[k]);
  return b;
}

// Points of the two-level Mehler integral: inner(outer(x, y1), y2) where each
// level is u -> rot * u + s * y.
Batch nested_batch(cplx x, cplx rot_outer, cplx rot_inner, double s, const QuadratureRule& rule) {
  const auto pts = grid_points(rule);
  const auto w = rule.grid_weights();
  Batch b;
  b.reserve(pts.size() * pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx u = rot_outer * x + s * pts[i];
    for (std::size_t j = 0; j < pts.size(); ++j) b.push(rot_inner * u + s * pts[j], w[i] * w[j]);
  }
  return b;
}

}  // namespace

cplx semigroup_mehler(const PropagatorParams& p, const Evaluable& phi, cplx x,
                      const QuadratureRule& rule) {
  if (p.t() == 0.0) return phi(x);
  return gaussian_shift_mean(phi, p.rotation() * x, p.noise_scale(), rule);
}

cplx semigroup_mehler(const PropagatorParams& p, const Poly& phi, cplx x,
                      const QuadratureRule& rule) {
  if (p.t() == 0.0) return eval(phi, x);
  return shift_batch(p.rotation() * x, p.noise_scale(), rule).integrate(phi);
}

CommutatorValues normality_commutator(const PropagatorParams& p, const Evaluable& phi, cplx x,
                                      const QuadratureRule& rule) {
  const PropagatorParams adj = adjoint_semigroup(p);
  const Evaluable adj_phi = [&](cplx u) { return semigroup_mehler(adj, phi, u, rule); };
  const Evaluable fwd_phi = [&](cplx u) { return semigroup_mehler(p, phi, u, rule); };
  const double c = p.generator().cos_theta();
  CommutatorValues out;
  out.lhs = semigroup_mehler(p, adj_phi, x, rule);
  out.rhs = semigroup_mehler(adj, fwd_phi, x, rule);
  out.fused = gaussian_shift_mean(phi, std::exp(-2.0 * p.t() * c) * x,
                                  std::sqrt(-std::expm1(-4.0 * p.t() * c)), rule);
  return out;
}

CommutatorValues normality_commutator(const PropagatorParams& p, const Poly& phi, cplx x,
                                      const QuadratureRule& rule) {
  const double c = p.generator().cos_theta();
  const double s = p.noise_scale();
  const cplx rot = p.rotation();
  const cplx rot_adj = std::conj(rot);
  CommutatorValues out;
  // P^theta (P^{-theta} phi): outer level rotates by rot, inner by conj(rot).
  out.lhs = nested_batch(x, rot, rot_adj, s, rule).integrate(phi);
  out.rhs = nested_batch(x, rot_adj, rot, s, rule).integrate(phi);
  out.fused = shift_batch(std::exp(-2.0 * p.t() * c) * x, std::sqrt(-std::expm1(-4.0 * p.t() * c)),
                          rule)
                  .integrate(phi);
  return out;
}

double invariance_residual(const PropagatorParams& p, const Evaluable& phi,
                           const QuadratureRule& rule) {
  const cplx lhs =
      integrate_gamma(rule, [&](cplx x) { return semigroup_mehler(p, phi, x, rule); });
  return std::abs(lhs - integrate_gamma(rule, phi));
}

double invariance_residual(const PropagatorParams& p, const Poly& phi, const QuadratureRule& rule) {
  // Outer x ~ gamma, inner y ~ gamma: the point rot * x + s * y.
  const auto pts = grid_points(rule);
  const auto w = rule.grid_weights();
  Batch b;
  b.reserve(pts.size() * pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      b.push(p.rotation() * pts[i] + p.noise_scale() * pts[j], w[i] * w[j]);
  const cplx lhs = b.integrate(phi);
  return std::abs(lhs - integrate_gamma(rule, phi));
}

double ergodic_limit_residual(const GeneratorParams& params, const Evaluable& phi, cplx x,
                              double t_large, const QuadratureRule& rule) {
  if (!(t_large > 0.0)) throw std::invalid_argument("ergodic_limit_residual: need t_large > 0");
  const PropagatorParams p(params, t_large);
  return std::abs(semigroup_mehler(p, phi, x, rule) - integrate_gamma(rule, phi));
}

double ergodic_limit_residual(const GeneratorParams& params, const Poly& phi, cplx x,
                              double t_large, const QuadratureRule& rule) {
  if (!(t_large > 0.0)) throw std::invalid_argument("ergodic_limit_residual: need t_large > 0");
  const PropagatorParams p(params, t_large);
  return std::abs(semigroup_mehler(p, phi, x, rule) - integrate_gamma(rule, phi));
}

double ErgodicEnvelope::bound(const GeneratorParams& params, double t) const {
  if (min_degree == 0) return 0.0;
  return constant * std::exp(-static_cast<double>(min_degree) * t * params.cos_theta());
}

ErgodicEnvelope ergodic_envelope(const Poly& phi, cplx x) {
  ErgodicEnvelope env;
  const SpectralCoeffs b = expand_in_hermite(phi);
  for (const auto& [mode, coeff] : b.coeffs()) {
    const int total = mode.m + mode.n;
    if (total == 0) continue;
    env.constant += std::abs(coeff) * std::abs(eval(complex_hermite(mode.m, mode.n), x));
    if (env.min_degree == 0 || total < env.min_degree) env.min_degree = total;
  }
  return env;
}

double adjoint_identity_residual(const PropagatorParams& p, const Poly& phi, const Poly& psi,
                                 const QuadratureRule& rule) {
  const PropagatorParams adj = adjoint_semigroup(p);
  const auto pts = grid_points(rule);
  const auto w = rule.grid_weights();
  CompensatedSum lhs, rhs;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    lhs.add(w[k] * semigroup_mehler(p, phi, pts[k], rule) * std::conj(eval(psi, pts[k])));
    rhs.add(w[k] * eval(phi, pts[k]) * std::conj(semigroup_mehler(adj, psi, pts[k], rule)));
  }
  return std::abs(lhs.value() - rhs.value());
}

std::array<cplx, 4> mixing_matrix(const PropagatorParams& p) {
  const double s = p.noise_scale();
  return {p.rotation(), cplx(s), cplx(-s), std::conj(p.rotation())};
}

double unitary_mixing_residual(const PropagatorParams& p, const MultiPoly& g,
                               const QuadratureRule& rule) {
  if (g.slots() != 2) throw std::invalid_argument("unitary_mixing_residual: G needs 2 slots");
  const auto m = mixing_matrix(p);
  const auto pts = grid_points(rule);
  const auto w = rule.grid_weights();
  CompensatedSum mixed, direct;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const cplx z[2] = {pts[i], pts[j]};
      const cplx y[2] = {m[0] * z[0] + m[1] * z[1], m[2] * z[0] + m[3] * z[1]};
      const double wt = w[i] * w[j];
      mixed.add(wt * g.eval(y));
      direct.add(wt * g.eval(z));
    }
  return std::abs(mixed.value() - direct.value());
}

}  // namespace cou
