#include "cou/multipoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace cou {

MultiPoly::MultiPoly(int slots) : slots_(slots) {
  if (slots < 1) throw std::invalid_argument("MultiPoly: need at least one slot");
}

MultiPoly::MultiPoly(int slots, Terms terms) : MultiPoly(slots) {
  terms_ = std::move(terms);
  for (const auto& [e, c] : terms_) {
    if (e.size() != static_cast<std::size_t>(2 * slots_))
      throw std::invalid_argument("MultiPoly: exponent vector has wrong length");
    if (std::any_of(e.begin(), e.end(), [](int v) { return v < 0; }))
      throw std::invalid_argument("MultiPoly: negative exponent");
  }
  canonicalize();
}

MultiPoly MultiPoly::from_poly(const Poly& p) {
  Terms t;
  for (const auto& [e, c] : p.terms()) t.emplace(Exponents{e.a, e.b}, c);
  return MultiPoly(1, std::move(t));
}

MultiPoly MultiPoly::monomial(int slots, Exponents exps, cplx coeff) {
  Terms t;
  t.emplace(std::move(exps), coeff);
  return MultiPoly(slots, std::move(t));
}

void MultiPoly::canonicalize() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == cplx(0.0); });
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

namespace {

MultiPoly differentiate(const MultiPoly& p, std::size_t index) {
  MultiPoly::Terms out;
  for (const auto& [e, c] : p.terms()) {
    if (e[index] == 0) continue;
    auto lowered = e;
    --lowered[index];
    out[lowered] += static_cast<double>(e[index]) * c;
  }
  return MultiPoly(p.slots(), std::move(out));
}

}  // namespace

MultiPoly MultiPoly::d_w(int slot) const {
  if (slot < 0 || slot >= slots_) throw std::out_of_range("MultiPoly::d_w: bad slot");
  return differentiate(*this, static_cast<std::size_t>(2 * slot));
}

MultiPoly MultiPoly::d_wbar(int slot) const {
  if (slot < 0 || slot >= slots_) throw std::out_of_range("MultiPoly::d_wbar: bad slot");
  return differentiate(*this, static_cast<std::size_t>(2 * slot + 1));
}

cplx MultiPoly::eval(std::span<const cplx> values) const {
  if (values.size() != static_cast<std::size_t>(slots_))
    throw std::invalid_argument("MultiPoly::eval: wrong number of values");
  CompensatedSum sum;
  for (const auto& [e, c] : terms_) {
    cplx term = c;
    for (int i = 0; i < slots_; ++i) {
      const cplx w = values[static_cast<std::size_t>(i)];
      for (int k = 0; k < e[2 * i]; ++k) term *= w;
      for (int k = 0; k < e[2 * i + 1]; ++k) term *= std::conj(w);
    }
    sum.add(term);
  }
  return sum.value();
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& q) {
  if (q.slots_ != slots_) throw std::invalid_argument("MultiPoly: slot count mismatch");
  for (const auto& [e, c] : q.terms_) terms_[e] += c;
  canonicalize();
  return *this;
}

Poly compose(const MultiPoly& f, std::span<const Poly> phi) {
  if (phi.size() != static_cast<std::size_t>(f.slots()))
    throw std::invalid_argument("compose: need one inner polynomial per slot");

  // Power tables phi_i^k and conj(phi_i)^k, built up to the largest exponent used.
  const auto n = phi.size();
  std::vector<std::vector<Poly>> pw(n), pwbar(n);
  for (std::size_t i = 0; i < n; ++i) {
    int max_a = 0, max_b = 0;
    for (const auto& [e, c] : f.terms()) {
      max_a = std::max(max_a, e[2 * i]);
      max_b = std::max(max_b, e[2 * i + 1]);
    }
    const Poly bar = conjugate(phi[i]);
    pw[i].push_back(Poly(1.0));
    for (int k = 1; k <= max_a; ++k) pw[i].push_back(pw[i].back() * phi[i]);
    pwbar[i].push_back(Poly(1.0));
    for (int k = 1; k <= max_b; ++k) pwbar[i].push_back(pwbar[i].back() * bar);
  }

  Poly result;
  for (const auto& [e, c] : f.terms()) {
    Poly term(c);
    for (std::size_t i = 0; i < n; ++i) {
      term = term * pw[i][static_cast<std::size_t>(e[2 * i])];
      term = term * pwbar[i][static_cast<std::size_t>(e[2 * i + 1])];
    }
    result += term;
  }
  return result;
}

Poly compose(const Poly& f, const Poly& phi) {
  const Poly inner[] = {phi};
  return compose(MultiPoly::from_poly(f), inner);
}

}  // namespace cou
