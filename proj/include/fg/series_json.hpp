#pragma once

#include <json.hpp>

#include "fg/series.hpp"

namespace fg {

/// {"ring": "zmod:6", "vars": 2, "precision": 10,
///  "terms": [{"exp": [1, 1], "coef": "5"}, ...]}
/// Terms are emitted in graded-lexicographic order.
nlohmann::json series_to_json(const Series& f);

/// Inverse of `series_to_json`. Coefficients are reduced into the ring;
/// duplicate exponents, constant terms, degrees above the precision and
/// malformed fields throw `parse_error`.
Series series_from_json(const nlohmann::json& j);

} // namespace fg
