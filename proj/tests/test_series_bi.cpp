#include <doctest.h>

#include "taulink/bivariate.hpp"
#include "taulink/sequences.hpp"

using namespace taulink;

namespace {
Rational R(const char* s) { return parse_rational(s); }
}  // namespace

TEST_CASE("bivariate exp and log") {
  BiPoly p(6);
  p.at(1, 0) = 2;
  p.at(0, 1) = make_rational(-1, 3);
  p.at(1, 1) = 5;
  const BiPoly e = p.exp();
  CHECK(e.at(0, 0) == 1);
  CHECK(e.at(2, 0) == 2);
  const BiPoly back = e.log();
  for (int i = 0; i <= 6; ++i) {
    for (int j = 0; i + j <= 6; ++j) CHECK(back.at(i, j) == p.at(i, j));
  }
}

TEST_CASE("Q^B table") {
  const SymBivariate qb = series_QB(4);
  CHECK(qb.at(0, 0) == R("-1/12"));
  CHECK(qb.at(0, 1) == R("-1/288"));
  CHECK(qb.at(1, 0) == R("-1/288"));
  CHECK(qb.at(1, 1) == R("-77/25920"));
  CHECK(qb.at(0, 2) == R("139/51840"));
}

TEST_CASE("Q table, two constructions") {
  const SymBivariate q = series_Q(6);
  CHECK(q.at(1, 1) == R("-1/12"));
  CHECK(q.at(1, 2) == R("-2/135"));
  CHECK(q.at(1, 3) == R("-1/864"));
  CHECK(q.at(2, 2) == R("-1/216"));
  CHECK(q.at(3, 3) == R("-77/233280"));
  CHECK(q.at(1, 5) == R("139/777600"));
  CHECK(differing_entries(q, series_Q_from_h(6)).empty());
}

TEST_CASE("T table against its closed form") {
  const SymBivariate t = series_T(7);
  CHECK(t.at(1, 1) == R("1/12"));
  CHECK(differing_entries(t, series_T_closed_form(7)).empty());
}

TEST_CASE("Q^B numerator cancels on antidiagonals") {
  for (const Rational& v : qb_numerator_on_antidiagonal(6)) CHECK(is_zero(v));
}

TEST_CASE("double factorial link") {
  const std::vector<LinkEntry> link = check_double_factorial_link(4);
  CHECK(link.size() == 9);
  for (const LinkEntry& e : link) {
    INFO(e.i, ",", e.j);
    CHECK(e.pass());
  }
}
