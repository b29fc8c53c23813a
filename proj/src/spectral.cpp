#include "cou/spectral.hpp"

#include <algorithm>
#include <stdexcept>

#include "cou/numeric.hpp"

namespace cou {

SpectralCoeffs::SpectralCoeffs(Map coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& [k, v] : coeffs_)
    if (k.m < 0 || k.n < 0) throw std::invalid_argument("SpectralCoeffs: negative index");
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == cplx(0.0); });
}

cplx SpectralCoeffs::at(int m, int n) const {
  const auto it = coeffs_.find(Mode{m, n});
  return it == coeffs_.end() ? cplx(0.0) : it->second;
}

void SpectralCoeffs::set(int m, int n, cplx v) {
  if (m < 0 || n < 0) throw std::invalid_argument("SpectralCoeffs: negative index");
  if (v == cplx(0.0))
    coeffs_.erase(Mode{m, n});
  else
    coeffs_[Mode{m, n}] = v;
}

void SpectralCoeffs::add(int m, int n, cplx v) { set(m, n, at(m, n) + v); }

int SpectralCoeffs::max_total_degree() const {
  int d = -1;
  for (const auto& [k, v] : coeffs_) d = std::max(d, k.m + k.n);
  return d;
}

double SpectralCoeffs::norm_sq() const {
  CompensatedSum s;
  for (const auto& [k, v] : coeffs_) s.add(std::norm(v));
  return s.value().real();
}

SpectralCoeffs& SpectralCoeffs::operator+=(const SpectralCoeffs& o) {
  for (const auto& [k, v] : o.coeffs_) add(k.m, k.n, v);
  return *this;
}

SpectralCoeffs& SpectralCoeffs::operator*=(cplx s) {
  for (auto& [k, v] : coeffs_) v *= s;
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == cplx(0.0); });
  return *this;
}

double max_coeff_diff(const SpectralCoeffs& a, const SpectralCoeffs& b) {
  double m = 0.0;
  for (const auto& [k, v] : a.coeffs()) m = std::max(m, std::abs(v - b.at(k.m, k.n)));
  for (const auto& [k, v] : b.coeffs()) m = std::max(m, std::abs(v - a.at(k.m, k.n)));
  return m;
}

}  // namespace cou
