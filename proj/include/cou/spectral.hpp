#pragma once

#include <compare>
#include <map>

#include "cou/numeric.hpp"

namespace cou {

/// Basis index (m, n) of J_{m,n}.
struct Mode {
  int m = 0;
  int n = 0;
  auto operator<=>(const Mode&) const = default;
};

/// Finitely supported expansion f = sum b_{m,n} J_{m,n}. Exact zeros are not stored.
class SpectralCoeffs {
public:
  using Map = std::map<Mode, cplx>;

  SpectralCoeffs() = default;
  explicit SpectralCoeffs(Map coeffs);

  const Map& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  cplx at(int m, int n) const;
  void set(int m, int n, cplx v);
  void add(int m, int n, cplx v);

  /// Largest m + n in the support; -1 when empty.
  int max_total_degree() const;
  /// sum |b_{m,n}|^2, the squared L2(gamma) norm.
  double norm_sq() const;

  SpectralCoeffs& operator+=(const SpectralCoeffs& o);
  SpectralCoeffs& operator*=(cplx s);
  friend SpectralCoeffs operator+(SpectralCoeffs a, const SpectralCoeffs& b) { return a += b; }
  friend SpectralCoeffs operator*(cplx s, SpectralCoeffs a) { return a *= s; }

  friend bool operator==(const SpectralCoeffs&, const SpectralCoeffs&) = default;

private:
  Map coeffs_;
};

/// max over the union of supports of |a_{m,n} - b_{m,n}|.
double max_coeff_diff(const SpectralCoeffs& a, const SpectralCoeffs& b);

}  // namespace cou
