#include <doctest.h>

#include <random>

#include "taulink/json_io.hpp"
#include "taulink/named_series.hpp"

using namespace taulink;

TEST_CASE("series round trip") {
  for (const LaurentSeries& s : {series_f(6), series_theta(5), series_h(5), series_eta1(4), series_stirling(3)}) {
    const Json j = to_json(s);
    CHECK(series_from_json(Json::parse(j.dump())) == s);
  }
  CHECK(to_json(series_f(3)).dump() == R"({"top":1,"order":3,"coeffs":[["1","1"],["0","2/3"],["-1","-1/12"]]})");
  CHECK(to_json(series_h(2)).at("expansion") == "zero");
}

TEST_CASE("series json rejects gaps") {
  Json j = to_json(series_f(3));
  j["coeffs"][1][0] = "-5";
  CHECK_THROWS_AS(series_from_json(j), PreconditionError);
  Json k = to_json(series_f(3));
  k["order"] = 7;
  CHECK_THROWS_AS(series_from_json(k), PreconditionError);
}

TEST_CASE("bivariate round trip") {
  const SymBivariate q = series_Q(5);
  const SymBivariate back = bivariate_from_json(Json::parse(to_json(q).dump()));
  CHECK(back.coeffs == q.coeffs);
  CHECK(back.cutoff == q.cutoff);
  CHECK(back.min_index == q.min_index);
}

TEST_CASE("polynomial round trip") {
  std::mt19937_64 rng(9);
  for (Alphabet a : {Alphabet::q, Alphabet::t}) {
    const TruncationSpec t{4, 9, 9};
    const GradedPoly p = random_poly(a, t, rng, 12);
    CHECK(poly_from_json(Json::parse(to_json(p).dump())) == p);
  }
  Json bad = to_json(GradedPoly::variable(Alphabet::q, TruncationSpec{1, 3, 3}, 2));
  bad["terms"][0]["vars"][0][0] = 5;
  CHECK_THROWS_AS(poly_from_json(bad), PreconditionError);
}

TEST_CASE("report schema") {
  Report r;
  r.u_max = 4;
  r.weight_max = 9;
  r.checked = 3;
  r.mismatches.push_back({"x", index_monomial({1, 2}, 2), 1, 2, ""});
  const Json j = to_json(r);
  CHECK(j.dump() ==
        R"({"window":{"u_max":4,"weight_max":9},"checked":3,"mismatches":[{"label":"x","at":"u^2*q1*q2","lhs":"1","rhs":"2"}]})");
  r.seed = 5;
  CHECK(to_json(r).at("seed") == 5);
}
