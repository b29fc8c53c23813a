#pragma once

#include <vector>

#include "cou/poly.hpp"
#include "cou/spectral.hpp"

namespace cou {

inline constexpr int kMaxHermiteDegree = 64;
inline constexpr int kMaxCreationDegree = 32;
inline constexpr int kMaxTransformDegree = 16;

/// Real Hermite polynomial normalized to unit norm under the standard Gaussian:
/// H_n(x) = ((-1)^n / sqrt(n!)) e^{x^2/2} d^n/dx^n e^{-x^2/2}.
struct RealHermite {
  int n = 0;
  std::vector<double> coeffs;  ///< coeffs[k] multiplies x^k; size n + 1

  double operator()(double x) const;
};

/// Three-term recurrence sqrt(n+1) H_{n+1} = x H_n - sqrt(n) H_{n-1}; n <= 64.
RealHermite real_hermite(int n);

/// J_{m,n} from its closed form
///   (m! n! 2^{m+n})^{-1/2} sum_r (-1)^r r! 2^r C(m,r) C(n,r) z^{m-r} zbar^{n-r}.
/// Requires m + n <= 64.
Poly complex_hermite(int m, int n);

/// J_{m,n} built by applying the creation operators
///   (d* phi) = -d phi/dzbar + (z/2) phi,   (dbar* phi) = -d phi/dz + (zbar/2) phi
/// m and n times to the constant 1, scaled by sqrt(2^{m+n} / (m! n!)).
/// Independent of complex_hermite; requires m + n <= 32.
Poly complex_hermite_via_creation(int m, int n);

/// Coefficients of z^m zbar^n in the J basis; supported on (m-k, n-k), k <= min(m, n).
SpectralCoeffs monomial_to_hermite(int m, int n);

/// sum b_{m,n} J_{m,n} as a polynomial.
Poly synthesize(const SpectralCoeffs& f);

/// Exact J-basis expansion of a polynomial via monomial_to_hermite.
SpectralCoeffs expand_in_hermite(const Poly& p);

/// H_k(x) H_j(y) as a polynomial in z, zbar with x = (z + zbar)/2, y = (z - zbar)/(2i).
Poly real_hermite_product(int k, int j);

/// Change of basis on the degree-l block between {H_k(x) H_{l-k}(y)}_k and
/// {J_{m,l-m}}_m. Both matrices are built from closed forms; neither is the
/// numerical inverse of the other.
class BasisTransform {
public:
  explicit BasisTransform(int degree);

  int degree() const { return degree_; }
  int dim() const { return degree_ + 1; }
  /// Coefficient of H_k(x) H_{l-k}(y) in J_{m,l-m}.
  cplx forward(int m, int k) const { return forward_[index(m, k)]; }
  /// Coefficient of J_{m,l-m} in H_k(x) H_{l-k}(y).
  cplx inverse(int k, int m) const { return inverse_[index(k, m)]; }

  const std::vector<cplx>& forward_matrix() const { return forward_; }
  const std::vector<cplx>& inverse_matrix() const { return inverse_; }

private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(c);
  }
  int degree_;
  std::vector<cplx> forward_;
  std::vector<cplx> inverse_;
};

/// Requires l <= 16.
BasisTransform build_basis_transform(int degree);

/// Square-matrix helpers on row-major dim x dim storage.
std::vector<cplx> matmul(const std::vector<cplx>& a, const std::vector<cplx>& b, int dim);
/// max |A - I|
double identity_deviation(const std::vector<cplx>& a, int dim);
/// max |A A^H - I|
double unitarity_deviation(const std::vector<cplx>& a, int dim);

}  // namespace cou
