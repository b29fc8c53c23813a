#include "cou/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cou {

using nlohmann::json;

json poly_to_json(const Poly& p) {
  json arr = json::array();
  for (const auto& [e, c] : p.terms())
    arr.push_back({{"a", e.a}, {"b", e.b}, {"re", c.real()}, {"im", c.imag()}});
  return arr;
}

Poly poly_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array");
  Poly::Terms terms;
  for (const auto& t : j) {
    const int a = t.at("a").get<int>();
    const int b = t.at("b").get<int>();
    if (a < 0 || b < 0) throw std::invalid_argument("polynomial JSON: negative exponent");
    terms[Exponent{a, b}] += cplx(t.at("re").get<double>(), t.value("im", 0.0));
  }
  return Poly(std::move(terms));
}

json spectral_to_json(const SpectralCoeffs& f, std::optional<double> theta) {
  std::vector<std::pair<Mode, cplx>> items(f.coeffs().begin(), f.coeffs().end());
  std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    const int dx = x.first.m + x.first.n, dy = y.first.m + y.first.n;
    return dx != dy ? dx < dy : x.first.m < y.first.m;
  });
  json arr = json::array();
  for (const auto& [k, v] : items)
    arr.push_back({{"m", k.m}, {"n", k.n}, {"re", v.real()}, {"im", v.imag()}});
  json out = json::object();
  if (theta) out["theta"] = *theta;
  out["coeffs"] = std::move(arr);
  return out;
}

SpectralCoeffs spectral_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw std::invalid_argument("SpectralCoeffs JSON needs a \"coeffs\" array");
  SpectralCoeffs f;
  for (const auto& t : j["coeffs"]) {
    const int m = t.at("m").get<int>();
    const int n = t.at("n").get<int>();
    if (m < 0 || n < 0) throw std::invalid_argument("SpectralCoeffs JSON: negative index");
    f.add(m, n, cplx(t.at("re").get<double>(), t.value("im", 0.0)));
  }
  return f;
}

std::optional<double> spectral_theta(const json& j) {
  if (j.is_object() && j.contains("theta") && j["theta"].is_number()) return j["theta"].get<double>();
  return std::nullopt;
}

namespace {
json matrix_json(const std::vector<cplx>& m, int dim) {
  json rows = json::array();
  for (int r = 0; r < dim; ++r) {
    json row = json::array();
    for (int c = 0; c < dim; ++c) {
      const cplx v = m[static_cast<std::size_t>(r * dim + c)];
      row.push_back({v.real(), v.imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}
}  // namespace

json transform_to_json(const BasisTransform& t) {
  return {{"degree", t.degree()},
          {"forward", matrix_json(t.forward_matrix(), t.dim())},
          {"inverse", matrix_json(t.inverse_matrix(), t.dim())}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string matrix_to_csv(const std::vector<cplx>& matrix, int dim) {
  std::ostringstream os;
  os << "row";
  for (int c = 0; c < dim; ++c) os << ",k" << c << "_re,k" << c << "_im";
  os << '\n';
  for (int r = 0; r < dim; ++r) {
    os << r;
    for (int c = 0; c < dim; ++c) {
      const cplx v = matrix[static_cast<std::size_t>(r * dim + c)];
      os << ',' << format_double(v.real()) << ',' << format_double(v.imag());
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace cou
