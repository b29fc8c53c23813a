#pragma once

#include <map>
#include <span>
#include <vector>

#include "cou/poly.hpp"

namespace cou {

/// Polynomial F(w_1, wbar_1, ..., w_n, wbar_n) in n complex slots and their
/// conjugates. Used as the outer function of compositions F(phi_1, ..., phi_n).
///
/// Exponent layout: {a_1, b_1, a_2, b_2, ...} with a_i on w_i and b_i on wbar_i.
class MultiPoly {
public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, cplx>;

  explicit MultiPoly(int slots);
  MultiPoly(int slots, Terms terms);

  /// The single-slot polynomial obtained by renaming z -> w, zbar -> wbar.
  static MultiPoly from_poly(const Poly& p);
  static MultiPoly monomial(int slots, Exponents exps, cplx coeff = 1.0);

  int slots() const { return slots_; }
  const Terms& terms() const { return terms_; }
  int degree() const;

  /// Formal derivative in w_slot.
  MultiPoly d_w(int slot) const;
  /// Formal derivative in wbar_slot.
  MultiPoly d_wbar(int slot) const;

  /// Value with w_i = values[i] and wbar_i = conj(values[i]).
  cplx eval(std::span<const cplx> values) const;

  MultiPoly& operator+=(const MultiPoly& q);
  friend MultiPoly operator+(MultiPoly p, const MultiPoly& q) { return p += q; }

private:
  void canonicalize();
  int slots_;
  Terms terms_;
};

/// Exact composition F(phi_1, ..., phi_n): w_i -> phi_i, wbar_i -> conjugate(phi_i).
Poly compose(const MultiPoly& f, std::span<const Poly> phi);

/// Single-slot composition F(phi) for F given as a polynomial in (w, wbar).
Poly compose(const Poly& f, const Poly& phi);

}  // namespace cou
