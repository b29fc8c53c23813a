#include "cou/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cou {

Poly::Poly(cplx constant) {
  if (constant != cplx(0.0)) terms_.emplace(Exponent{0, 0}, constant);
}

Poly::Poly(Terms terms) : terms_(std::move(terms)) {
  for (const auto& [e, c] : terms_)
    if (e.a < 0 || e.b < 0) throw std::invalid_argument("Poly: negative exponent");
  canonicalize();
}

Poly Poly::monomial(int a, int b, cplx coeff) {
  Terms t;
  t.emplace(Exponent{a, b}, coeff);
  return Poly(std::move(t));
}

void Poly::canonicalize() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == cplx(0.0); });
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.a + e.b);
  return d;
}

int Poly::degree_z() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.a);
  return d;
}

int Poly::degree_zbar() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.b);
  return d;
}

cplx Poly::coeff(int a, int b) const {
  const auto it = terms_.find(Exponent{a, b});
  return it == terms_.end() ? cplx(0.0) : it->second;
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Poly& Poly::operator+=(const Poly& q) {
  for (const auto& [e, c] : q.terms_) terms_[e] += c;
  canonicalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& q) {
  for (const auto& [e, c] : q.terms_) terms_[e] -= c;
  canonicalize();
  return *this;
}

Poly& Poly::operator*=(cplx s) {
  for (auto& [e, c] : terms_) c *= s;
  canonicalize();
  return *this;
}

Poly operator*(const Poly& p, const Poly& q) {
  Poly::Terms out;
  for (const auto& [ep, cp] : p.terms_)
    for (const auto& [eq, cq] : q.terms_) out[Exponent{ep.a + eq.a, ep.b + eq.b}] += cp * cq;
  return Poly(std::move(out));
}

Poly add(const Poly& p, const Poly& q) { return p + q; }
Poly mul(const Poly& p, const Poly& q) { return p * q; }

Poly pow(const Poly& p, int k) {
  if (k < 0) throw std::invalid_argument("pow: negative exponent");
  Poly result(1.0);
  Poly base = p;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Poly wirtinger_dz(const Poly& p) {
  Poly::Terms out;
  for (const auto& [e, c] : p.terms())
    if (e.a >= 1) out[Exponent{e.a - 1, e.b}] += static_cast<double>(e.a) * c;
  return Poly(std::move(out));
}

Poly wirtinger_dzbar(const Poly& p) {
  Poly::Terms out;
  for (const auto& [e, c] : p.terms())
    if (e.b >= 1) out[Exponent{e.a, e.b - 1}] += static_cast<double>(e.b) * c;
  return Poly(std::move(out));
}

Poly conjugate(const Poly& p) {
  Poly::Terms out;
  for (const auto& [e, c] : p.terms()) out.emplace(Exponent{e.b, e.a}, std::conj(c));
  return Poly(std::move(out));
}

cplx eval(const Poly& p, cplx w) {
  if (p.is_zero()) return 0.0;
  const cplx wb = std::conj(w);
  // Terms are sorted by (a, b): walk a from high to low, Horner in zbar inside.
  const int top = p.degree_z();
  cplx result = 0.0;
  auto it = p.terms().rbegin();
  for (int a = top; a >= 0; --a) {
    cplx inner = 0.0;
    int b_prev = -1;
    for (; it != p.terms().rend() && it->first.a == a; ++it) {
      const int b = it->first.b;
      if (b_prev >= 0)
        for (int k = b; k < b_prev; ++k) inner *= wb;
      inner += it->second;
      b_prev = b;
    }
    for (int k = 0; k < b_prev; ++k) inner *= wb;
    result = result * w + inner;
  }
  return result;
}

Poly prune(const Poly& p, double eps) {
  Poly::Terms out;
  for (const auto& [e, c] : p.terms())
    if (std::abs(c) > eps) out.emplace(e, c);
  return Poly(std::move(out));
}

double max_coeff_diff(const Poly& p, const Poly& q) { return (p - q).max_abs_coeff(); }

Poly rotate(const Poly& p, double alpha) {
  Poly::Terms out;
  for (const auto& [e, c] : p.terms())
    out.emplace(e, c * std::polar(1.0, alpha * static_cast<double>(e.a - e.b)));
  return Poly(std::move(out));
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    for (int k = 0; k < e.a; ++k) os << "*z";
    for (int k = 0; k < e.b; ++k) os << "*zbar";
  }
  return os.str();
}

}  // namespace cou
