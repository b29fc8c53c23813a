#include "cou/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cou {

namespace {

void check_pair(int m, int n, int max_total, const char* what) {
  if (m < 0 || n < 0 || m + n > max_total)
    throw std::out_of_range(std::string(what) + ": need m, n >= 0 and m + n <= " +
                            std::to_string(max_total));
}

double log_binomial(int a, int b) { return std::log(static_cast<double>(binomial(a, b))); }

}  // namespace

double RealHermite::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RealHermite real_hermite(int n) {
  if (n < 0 || n > kMaxHermiteDegree)
    throw std::out_of_range("real_hermite: need 0 <= n <= " + std::to_string(kMaxHermiteDegree));
  std::vector<double> prev;  // H_{k-1}
  std::vector<double> cur{1.0};
  for (int k = 0; k < n; ++k) {
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
    const double sk = std::sqrt(static_cast<double>(k));
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= sk * prev[j];
    const double inv = 1.0 / std::sqrt(static_cast<double>(k + 1));
    for (double& c : next) c *= inv;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return RealHermite{n, std::move(cur)};
}

Poly complex_hermite(int m, int n) {
  check_pair(m, n, kMaxHermiteDegree, "complex_hermite");
  const double log_norm = 0.5 * (log_factorial(m) + log_factorial(n) + (m + n) * std::log(2.0));
  Poly::Terms terms;
  for (int r = 0; r <= std::min(m, n); ++r) {
    const double log_mag = log_factorial(r) + r * std::log(2.0) + log_binomial(m, r) +
                           log_binomial(n, r) - log_norm;
    terms.emplace(Exponent{m - r, n - r}, sign_pow(r) * std::exp(log_mag));
  }
  return Poly(std::move(terms));
}

Poly complex_hermite_via_creation(int m, int n) {
  check_pair(m, n, kMaxCreationDegree, "complex_hermite_via_creation");
  const Poly half_z = Poly::monomial(1, 0, 0.5);
  const Poly half_zbar = Poly::monomial(0, 1, 0.5);
  Poly phi(1.0);
  for (int k = 0; k < n; ++k) phi = half_zbar * phi - wirtinger_dz(phi);
  for (int k = 0; k < m; ++k) phi = half_z * phi - wirtinger_dzbar(phi);
  const double scale =
      std::exp(0.5 * ((m + n) * std::log(2.0) - log_factorial(m) - log_factorial(n)));
  return phi * cplx(scale);
}

SpectralCoeffs monomial_to_hermite(int m, int n) {
  check_pair(m, n, kMaxHermiteDegree, "monomial_to_hermite");
  SpectralCoeffs out;
  for (int k = 0; k <= std::min(m, n); ++k) {
    const double log_mag =
        log_binomial(m, k) + log_binomial(n, k) + log_factorial(k) +
        0.5 * (log_factorial(m - k) + log_factorial(n - k) + (m + n) * std::log(2.0));
    out.set(m - k, n - k, std::exp(log_mag));
  }
  return out;
}

Poly synthesize(const SpectralCoeffs& f) {
  Poly out;
  for (const auto& [mode, b] : f.coeffs()) out += complex_hermite(mode.m, mode.n) * b;
  return out;
}

SpectralCoeffs expand_in_hermite(const Poly& p) {
  SpectralCoeffs out;
  for (const auto& [e, c] : p.terms()) {
    SpectralCoeffs piece = monomial_to_hermite(e.a, e.b);
    out += c * std::move(piece);
  }
  return out;
}

Poly real_hermite_product(int k, int j) {
  const Poly x = (Poly::z() + Poly::zbar()) * cplx(0.5);
  const Poly y = (Poly::z() - Poly::zbar()) * cplx(0.0, -0.5);
  auto univariate = [](const RealHermite& h, const Poly& var) {
    Poly acc;
    for (auto it = h.coeffs.rbegin(); it != h.coeffs.rend(); ++it) acc = acc * var + Poly(*it);
    return acc;
  };
  return univariate(real_hermite(k), x) * univariate(real_hermite(j), y);
}

BasisTransform::BasisTransform(int degree) : degree_(degree) {
  if (degree < 0 || degree > kMaxTransformDegree)
    throw std::out_of_range("build_basis_transform: need 0 <= l <= " +
                            std::to_string(kMaxTransformDegree));
  const int l = degree;
  const auto n = static_cast<std::size_t>(l + 1);
  forward_.assign(n * n, cplx(0.0));
  inverse_.assign(n * n, cplx(0.0));
  const double log_2l = l * std::log(2.0);

  // Binomials with an index outside [0, upper] vanish, so the r + s = k sums
  // run over every split and let binomial() return 0.
  for (int m = 0; m <= l; ++m) {
    for (int k = 0; k <= l; ++k) {
      std::int64_t inner = 0;
      for (int r = 0; r <= k; ++r) {
        const int s = k - r;
        inner += static_cast<std::int64_t>(sign_pow(l - m - s)) *
                 static_cast<std::int64_t>(binomial(m, r) * binomial(l - m, s));
      }
      const double scale = std::exp(0.5 * (log_factorial(k) + log_factorial(l - k) - log_2l -
                                           log_factorial(m) - log_factorial(l - m)));
      forward_[index(m, k)] = ipow(l - k) * (scale * static_cast<double>(inner));
    }
  }
  for (int k = 0; k <= l; ++k) {
    for (int m = 0; m <= l; ++m) {
      std::int64_t inner = 0;
      for (int r = 0; r <= m; ++r) {
        const int s = m - r;
        inner += static_cast<std::int64_t>(sign_pow(s)) *
                 static_cast<std::int64_t>(binomial(k, r) * binomial(l - k, s));
      }
      const double scale = std::exp(0.5 * (log_factorial(m) + log_factorial(l - m) - log_2l -
                                           log_factorial(k) - log_factorial(l - k)));
      inverse_[index(k, m)] = ipow(l - k) * (scale * static_cast<double>(inner));
    }
  }
}

BasisTransform build_basis_transform(int degree) { return BasisTransform(degree); }

std::vector<cplx> matmul(const std::vector<cplx>& a, const std::vector<cplx>& b, int dim) {
  const auto d = static_cast<std::size_t>(dim);
  if (a.size() != d * d || b.size() != d * d) throw std::invalid_argument("matmul: size mismatch");
  std::vector<cplx> c(d * d, cplx(0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j) c[i * d + j] += a[i * d + k] * b[k * d + j];
  return c;
}

double identity_deviation(const std::vector<cplx>& a, int dim) {
  const auto d = static_cast<std::size_t>(dim);
  double dev = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      dev = std::max(dev, std::abs(a[i * d + j] - cplx(i == j ? 1.0 : 0.0)));
  return dev;
}

double unitarity_deviation(const std::vector<cplx>& a, int dim) {
  const auto d = static_cast<std::size_t>(dim);
  std::vector<cplx> adj(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) adj[j * d + i] = std::conj(a[i * d + j]);
  return identity_deviation(matmul(a, adj, dim), dim);
}

}  // namespace cou
