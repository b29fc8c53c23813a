#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cou/poly.hpp"
#include "cou/spectral.hpp"

namespace cou {

/// Function on the complex plane, f(x + i y).
using Evaluable = std::function<cplx(cplx)>;

inline constexpr int kMaxQuadratureOrder = 128;

/// K-point Gauss-Hermite rule for the unit-variance Gaussian weight
/// e^{-x^2/2}/sqrt(2 pi), weights summing to 1, plus its tensor product on the
/// plane, which integrates against gamma = N(0,1) x N(0,1) (so E|z|^2 = 2).
/// Exact for univariate polynomials of degree <= 2K - 1.
class QuadratureRule {
public:
  /// Requires 1 <= order <= 128.
  explicit QuadratureRule(int order);

  int order() const { return order_; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  /// Tensor grid of size K^2: point (i, j) at index i*K + j is nodes[i] + i nodes[j].
  std::span<const double> grid_re() const { return grid_re_; }
  std::span<const double> grid_im() const { return grid_im_; }
  std::span<const double> grid_weights() const { return grid_w_; }

private:
  int order_;
  std::vector<double> nodes_, weights_;
  std::vector<double> grid_re_, grid_im_, grid_w_;
};

QuadratureRule gauss_hermite_rule(int order);

/// Order that integrates products of two polynomials of total degree <= d
/// exactly, with margin: d + 2.
inline int default_order(int max_total_degree) { return max_total_degree + 2; }

/// int f dgamma by the tensor rule, compensated summation, serial.
cplx integrate_gamma(const QuadratureRule& rule, const Evaluable& f);
/// Same sum with node rows split over `threads` workers; f must be safe to
/// call concurrently. Agrees with the serial path to 1e-13 relative.
cplx integrate_gamma_parallel(const QuadratureRule& rule, const Evaluable& f, int threads);
/// Polynomial integrand through the batched evaluation kernel.
cplx integrate_gamma(const QuadratureRule& rule, const Poly& f);

/// <f, g> = int f conj(g) dgamma.
cplx inner_product(const QuadratureRule& rule, const Evaluable& f, const Evaluable& g);
cplx inner_product(const QuadratureRule& rule, const Poly& f, const Poly& g);

/// b_{m,n} = <f, J_{m,n}> for every m + n <= max_total_degree.
SpectralCoeffs project(const QuadratureRule& rule, const Evaluable& f, int max_total_degree);
SpectralCoeffs project(const QuadratureRule& rule, const Poly& f, int max_total_degree);

/// Values of p on the rule's tensor grid (batched kernel).
void eval_on_grid(const QuadratureRule& rule, const Poly& p, std::vector<double>& re,
                  std::vector<double>& im);

}  // namespace cou
