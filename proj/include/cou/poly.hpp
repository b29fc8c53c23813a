#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "cou/numeric.hpp"

namespace cou {

/// Exponent pair (a, b) of the monomial z^a zbar^b.
struct Exponent {
  int a = 0;
  int b = 0;
  auto operator<=>(const Exponent&) const = default;
};

/// Polynomial in the commuting formal variables z and zbar with complex
/// coefficients. Stored sparse and canonical: no coefficient is exactly zero.
///
/// As a function on the plane, zbar is the complex conjugate of z, so
/// eval(p, w) substitutes z = w and zbar = conj(w).
class Poly {
public:
  using Terms = std::map<Exponent, cplx>;

  Poly() = default;
  Poly(cplx constant);  // NOLINT(google-explicit-constructor)
  explicit Poly(Terms terms);

  static Poly monomial(int a, int b, cplx coeff = 1.0);
  static Poly z() { return monomial(1, 0); }
  static Poly zbar() { return monomial(0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree max(a + b); -1 for the zero polynomial.
  int degree() const;
  int degree_z() const;
  int degree_zbar() const;
  /// Coefficient of z^a zbar^b (zero when absent).
  cplx coeff(int a, int b) const;
  /// Largest coefficient magnitude; 0 for the zero polynomial.
  double max_abs_coeff() const;

  Poly& operator+=(const Poly& q);
  Poly& operator-=(const Poly& q);
  Poly& operator*=(cplx s);
  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
  friend Poly operator*(Poly p, cplx s) { return p *= s; }
  friend Poly operator*(cplx s, Poly p) { return p *= s; }
  friend Poly operator*(const Poly& p, const Poly& q);
  Poly operator-() const { return *this * cplx(-1.0); }

  friend bool operator==(const Poly&, const Poly&) = default;

private:
  void canonicalize();
  Terms terms_;
};

Poly add(const Poly& p, const Poly& q);
Poly mul(const Poly& p, const Poly& q);
Poly pow(const Poly& p, int k);

/// Formal derivative in z treating zbar as a constant.
Poly wirtinger_dz(const Poly& p);
/// Formal derivative in zbar treating z as a constant.
Poly wirtinger_dzbar(const Poly& p);

/// Pointwise complex conjugate: swaps (a, b) and conjugates coefficients.
Poly conjugate(const Poly& p);

/// Value at z = w, zbar = conj(w); Horner in z over Horner in zbar.
cplx eval(const Poly& p, cplx w);

/// Drops terms with |coeff| <= eps. Display only; algebra never prunes.
Poly prune(const Poly& p, double eps);

/// Largest coefficientwise |p - q|.
double max_coeff_diff(const Poly& p, const Poly& q);

/// The substitution z -> e^{i alpha} z (so zbar -> e^{-i alpha} zbar).
Poly rotate(const Poly& p, double alpha);

/// Human-readable form, e.g. "(0.5+0i)*z*zbar + (-1+0i)".
std::string to_string(const Poly& p);

}  // namespace cou
