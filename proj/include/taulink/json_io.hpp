#pragma once

#include <json.hpp>

#include "taulink/bivariate.hpp"
#include "taulink/graded_poly.hpp"
#include "taulink/series.hpp"
#include "taulink/tau.hpp"

namespace taulink {

using Json = nlohmann::ordered_json;

// {"top", "order", "coeffs": [["exp", "p/q"], ...]} in expansion order; power
// series at zero add "expansion": "zero" and list ascending exponents.
Json to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const Json& j);

// {"min_index", "cutoff", "coeffs": [[i, j, "p/q"], ...]}, i <= j.
Json to_json(const SymBivariate& s);
SymBivariate bivariate_from_json(const Json& j);

// {"alphabet", "trunc": {...}, "terms": [{"u", "vars": [[j, e], ...], "coeff"}]}
Json to_json(const GradedPoly& p);
GradedPoly poly_from_json(const Json& j);

Json to_json(const TruncationSpec& t);
Json to_json(const Mismatch& m, Alphabet a);
// {"window": {"u_max", "weight_max"}, "checked", "mismatches": [...]}
Json to_json(const Report& r);

}  // namespace taulink
