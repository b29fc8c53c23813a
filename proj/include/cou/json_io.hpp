#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "cou/hermite.hpp"
#include "cou/poly.hpp"
#include "cou/spectral.hpp"

namespace cou {

/// [{"a": int, "b": int, "re": float, "im": float}, ...] sorted by (a, b).
nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);

/// {"theta": float (optional), "coeffs": [{"m", "n", "re", "im"}, ...]} sorted by (m + n, m).
nlohmann::json spectral_to_json(const SpectralCoeffs& f, std::optional<double> theta = std::nullopt);
SpectralCoeffs spectral_from_json(const nlohmann::json& j);
/// The optional "theta" member of a SpectralCoeffs document.
std::optional<double> spectral_theta(const nlohmann::json& j);

/// {"degree": l, "forward": [[[re, im], ...], ...], "inverse": [...]}; row m of
/// "forward" lists the coefficients of J_{m,l-m} over H_k(x) H_{l-k}(y), k = 0..l.
nlohmann::json transform_to_json(const BasisTransform& t);

/// One CSV table: header "row,k0_re,k0_im,..." then one line per row, 17 significant digits.
std::string matrix_to_csv(const std::vector<cplx>& matrix, int dim);

/// printf("%.17g").
std::string format_double(double v);

}  // namespace cou
