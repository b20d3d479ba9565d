#include "taulink/json_io.hpp"

namespace taulink {
namespace {

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from(const Json& j) { return parse_rational(j.get<std::string>()); }

Alphabet alphabet_from(const std::string& s) {
  if (s == "q") return Alphabet::q;
  if (s == "t") return Alphabet::t;
  throw PreconditionError("unknown alphabet \"" + s + "\"");
}

}  // namespace

Json to_json(const LaurentSeries& s) {
  Json j;
  if (s.expansion() == Expansion::at_zero) j["expansion"] = "zero";
  const auto terms = s.terms();
  j["top"] = s.leading_exponent();
  j["order"] = static_cast<int>(terms.size());
  Json coeffs = Json::array();
  for (const auto& [e, c] : terms) coeffs.push_back(Json::array({std::to_string(e), rational_json(c)}));
  j["coeffs"] = std::move(coeffs);
  return j;
}

LaurentSeries series_from_json(const Json& j) {
  const Expansion e =
      j.contains("expansion") && j.at("expansion") == "zero" ? Expansion::at_zero : Expansion::at_infinity;
  const int top = j.at("top").get<int>();
  std::vector<Rational> c;
  int expected = top;
  for (const auto& entry : j.at("coeffs")) {
    if (std::stoi(entry.at(0).get<std::string>()) != expected) throw PreconditionError("series json: gap in exponents");
    c.push_back(rational_from(entry.at(1)));
    expected += e == Expansion::at_zero ? 1 : -1;
  }
  if (static_cast<int>(c.size()) != j.at("order").get<int>()) throw PreconditionError("series json: order mismatch");
  return LaurentSeries::from_coefficients(e, top, std::move(c));
}

Json to_json(const SymBivariate& s) {
  Json j;
  j["min_index"] = s.min_index;
  j["cutoff"] = s.cutoff;
  Json coeffs = Json::array();
  for (const auto& [ij, v] : s.coeffs) coeffs.push_back(Json::array({ij.first, ij.second, rational_json(v)}));
  j["coeffs"] = std::move(coeffs);
  return j;
}

SymBivariate bivariate_from_json(const Json& j) {
  SymBivariate s;
  s.min_index = j.at("min_index").get<int>();
  s.cutoff = j.at("cutoff").get<int>();
  for (const auto& entry : j.at("coeffs")) {
    s.coeffs.emplace(std::make_pair(entry.at(0).get<int>(), entry.at(1).get<int>()), rational_from(entry.at(2)));
  }
  return s;
}

Json to_json(const TruncationSpec& t) {
  return Json{{"u_max", t.u_max}, {"weight_max", t.weight_max}, {"index_max", t.index_max}};
}

Json to_json(const GradedPoly& p) {
  Json j;
  j["alphabet"] = to_string(p.alphabet());
  j["trunc"] = to_json(p.trunc());
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json vars = Json::array();
    for (int i = 0; i < kSlots; ++i) {
      const int e = m.e[static_cast<std::size_t>(i)];
      if (e > 0) vars.push_back(Json::array({i, e}));
    }
    terms.push_back(Json{{"u", static_cast<int>(m.u)}, {"vars", std::move(vars)}, {"coeff", rational_json(c)}});
  }
  j["terms"] = std::move(terms);
  return j;
}

GradedPoly poly_from_json(const Json& j) {
  const Json& t = j.at("trunc");
  const TruncationSpec trunc{t.at("u_max").get<int>(), t.at("weight_max").get<int>(), t.at("index_max").get<int>()};
  GradedPoly p(alphabet_from(j.at("alphabet").get<std::string>()), trunc);
  for (const auto& term : j.at("terms")) {
    Monomial m;
    m.u = static_cast<std::uint8_t>(term.at("u").get<int>());
    for (const auto& v : term.at("vars")) m = m * Monomial::var(v.at(0).get<int>(), v.at(1).get<int>());
    if (!trunc.admits(m, p.alphabet())) throw PreconditionError("poly json: term outside the truncation");
    p.add(m, rational_from(term.at("coeff")));
  }
  return p;
}

Json to_json(const Mismatch& m, Alphabet a) {
  return Json{{"label", m.label},
              {"at", m.where.empty() ? format_monomial(m.monomial, a) : m.where},
              {"lhs", rational_json(m.lhs)},
              {"rhs", rational_json(m.rhs)}};
}

Json to_json(const Report& r) {
  Json j;
  j["window"] = Json{{"u_max", r.u_max}, {"weight_max", r.weight_max}};
  j["checked"] = r.checked;
  if (r.seed >= 0) j["seed"] = r.seed;
  Json mm = Json::array();
  for (const auto& m : r.mismatches) mm.push_back(to_json(m, r.alphabet));
  j["mismatches"] = std::move(mm);
  return j;
}

}  // namespace taulink
