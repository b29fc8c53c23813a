#include "cou/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "cou/hermite.hpp"
#include "cou/kernels.hpp"

namespace cou {

namespace {

// Orthonormal Hermite values H_0..H_{K-1} at x and H_K(x), by recurrence.
struct HermiteTail {
  double sum_sq;  // sum_{k<K} H_k(x)^2
  double hk;      // H_K(x)
  double hk1;     // H_{K-1}(x)
};

HermiteTail hermite_tail(int order, double x) {
  double prev = 0.0, cur = 1.0, sum_sq = 0.0;
  for (int k = 0; k < order; ++k) {
    sum_sq += cur * cur;
    const double next =
        (x * cur - std::sqrt(static_cast<double>(k)) * prev) / std::sqrt(static_cast<double>(k + 1));
    prev = cur;
    cur = next;
  }
  return {sum_sq, cur, prev};
}

}  // namespace

QuadratureRule::QuadratureRule(int order) : order_(order) {
  if (order < 1 || order > kMaxQuadratureOrder)
    throw std::out_of_range("gauss_hermite_rule: need 1 <= K <= " +
                            std::to_string(kMaxQuadratureOrder));
  const auto k = static_cast<std::size_t>(order);

  // Jacobi matrix of the monic probabilist recurrence He_{j+1} = x He_j - j He_{j-1}.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(std::max(order - 1, 0));
  for (int j = 1; j < order; ++j) sub[j - 1] = std::sqrt(static_cast<double>(j));
  std::vector<double> x(k);
  if (order == 1) {
    x[0] = 0.0;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("gauss_hermite_rule: tridiagonal eigensolve failed");
    for (std::size_t i = 0; i < k; ++i) x[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
  }

  // Newton polish on H_K, using H_K' = sqrt(K) H_{K-1}; then enforce symmetry.
  for (double& xi : x) {
    for (int it = 0; it < 3; ++it) {
      const HermiteTail t = hermite_tail(order, xi);
      xi -= t.hk / (std::sqrt(static_cast<double>(order)) * t.hk1);
    }
  }
  std::sort(x.begin(), x.end());
  for (std::size_t i = 0; i < k / 2; ++i) {
    const double v = 0.5 * (x[k - 1 - i] - x[i]);
    x[i] = -v;
    x[k - 1 - i] = v;
  }
  if (k % 2 == 1) x[k / 2] = 0.0;

  // Christoffel weights 1 / sum_{j<K} H_j(x)^2, normalized to unit mass.
  std::vector<double> w(k);
  CompensatedSum total;
  for (std::size_t i = 0; i < k; ++i) {
    w[i] = 1.0 / hermite_tail(order, x[i]).sum_sq;
    total.add(w[i]);
  }
  const double mass = total.value().real();
  for (double& wi : w) wi /= mass;
  for (std::size_t i = 0; i < k / 2; ++i) {
    const double v = 0.5 * (w[i] + w[k - 1 - i]);
    w[i] = w[k - 1 - i] = v;
  }

  nodes_ = std::move(x);
  weights_ = std::move(w);

  grid_re_.resize(k * k);
  grid_im_.resize(k * k);
  grid_w_.resize(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      grid_re_[i * k + j] = nodes_[i];
      grid_im_[i * k + j] = nodes_[j];
      grid_w_[i * k + j] = weights_[i] * weights_[j];
    }
}

QuadratureRule gauss_hermite_rule(int order) { return QuadratureRule(order); }

cplx integrate_gamma(const QuadratureRule& rule, const Evaluable& f) {
  CompensatedSum sum;
  const auto w = rule.grid_weights();
  const auto re = rule.grid_re();
  const auto im = rule.grid_im();
  for (std::size_t k = 0; k < w.size(); ++k) sum.add(w[k] * f(cplx(re[k], im[k])));
  return sum.value();
}

cplx integrate_gamma_parallel(const QuadratureRule& rule, const Evaluable& f, int threads) {
  const int rows = rule.order();
  threads = std::clamp(threads, 1, rows);
  const auto k = static_cast<std::size_t>(rows);
  std::vector<CompensatedSum> partial(k);
  const auto w = rule.grid_weights();
  const auto re = rule.grid_re();
  const auto im = rule.grid_im();
  auto work = [&](int first_row, int step) {
    for (auto i = static_cast<std::size_t>(first_row); i < k; i += static_cast<std::size_t>(step))
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t idx = i * k + j;
        partial[i].add(w[idx] * f(cplx(re[idx], im[idx])));
      }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work, t, threads);
  work(0, threads);
  for (auto& th : pool) th.join();
  CompensatedSum total;
  for (const auto& p : partial) total.add(p.value());
  return total.value();
}

void eval_on_grid(const QuadratureRule& rule, const Poly& p, std::vector<double>& re,
                  std::vector<double>& im) {
  const std::size_t n = rule.grid_weights().size();
  re.assign(n, 0.0);
  im.assign(n, 0.0);
  if (p.is_zero()) return;
  kernels::eval_poly(kernels::PackedPoly(p), rule.grid_re(), rule.grid_im(), re, im);
}

cplx integrate_gamma(const QuadratureRule& rule, const Poly& f) {
  std::vector<double> re, im;
  eval_on_grid(rule, f, re, im);
  return kernels::weighted_sum(rule.grid_weights(), re, im);
}

cplx inner_product(const QuadratureRule& rule, const Evaluable& f, const Evaluable& g) {
  return integrate_gamma(rule, [&](cplx w) { return f(w) * std::conj(g(w)); });
}

namespace {

// sum w f conj(g) from values already on the grid.
cplx grid_inner(const QuadratureRule& rule, const std::vector<double>& fr,
                const std::vector<double>& fi, const std::vector<double>& gr,
                const std::vector<double>& gi) {
  std::vector<double> pr(fr.size()), pi(fr.size());
  for (std::size_t k = 0; k < fr.size(); ++k) {
    pr[k] = fr[k] * gr[k] + fi[k] * gi[k];
    pi[k] = fi[k] * gr[k] - fr[k] * gi[k];
  }
  return kernels::weighted_sum(rule.grid_weights(), pr, pi);
}

}  // namespace

cplx inner_product(const QuadratureRule& rule, const Poly& f, const Poly& g) {
  std::vector<double> fr, fi, gr, gi;
  eval_on_grid(rule, f, fr, fi);
  eval_on_grid(rule, g, gr, gi);
  return grid_inner(rule, fr, fi, gr, gi);
}

SpectralCoeffs project(const QuadratureRule& rule, const Evaluable& f, int max_total_degree) {
  if (max_total_degree < 0) throw std::invalid_argument("project: negative degree");
  const std::size_t n = rule.grid_weights().size();
  std::vector<double> fr(n), fi(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx v = f(cplx(rule.grid_re()[k], rule.grid_im()[k]));
    fr[k] = v.real();
    fi[k] = v.imag();
  }
  SpectralCoeffs out;
  std::vector<double> jr, ji;
  for (int total = 0; total <= max_total_degree; ++total)
    for (int m = 0; m <= total; ++m) {
      eval_on_grid(rule, complex_hermite(m, total - m), jr, ji);
      out.set(m, total - m, grid_inner(rule, fr, fi, jr, ji));
    }
  return out;
}

SpectralCoeffs project(const QuadratureRule& rule, const Poly& f, int max_total_degree) {
  if (max_total_degree < 0) throw std::invalid_argument("project: negative degree");
  std::vector<double> fr, fi, jr, ji;
  eval_on_grid(rule, f, fr, fi);
  SpectralCoeffs out;
  for (int total = 0; total <= max_total_degree; ++total)
    for (int m = 0; m <= total; ++m) {
      eval_on_grid(rule, complex_hermite(m, total - m), jr, ji);
      out.set(m, total - m, grid_inner(rule, fr, fi, jr, ji));
    }
  return out;
}

}  // namespace cou
