#include <doctest.h>

#include <random>

#include "taulink/named_series.hpp"
#include "taulink/sequences.hpp"
#include "taulink/series.hpp"

using namespace taulink;

namespace {

Rational R(const char* s) { return parse_rational(s); }

constexpr Expansion kInf = Expansion::at_infinity;
constexpr Expansion kZero = Expansion::at_zero;

// coefficient of z^(top - i) for i = 0..
void check_descending(const LaurentSeries& s, int top, std::initializer_list<const char*> expect) {
  int e = top;
  for (const char* v : expect) {
    INFO("exponent ", e);
    CHECK(s.coeff(e) == R(v));
    --e;
  }
}

void check_ascending(const LaurentSeries& s, int low, std::initializer_list<const char*> expect) {
  int e = low;
  for (const char* v : expect) {
    INFO("exponent ", e);
    CHECK(s.coeff(e) == R(v));
    ++e;
  }
}

}  // namespace

TEST_CASE("series arithmetic keeps windows") {
  const LaurentSeries a = LaurentSeries::from_coefficients(kZero, 0, {1, 1});  // 1 + z + O(z^2)
  const LaurentSeries b = LaurentSeries::exact_polynomial(kZero, {{0, 1}, {1, -1}});
  const LaurentSeries p = a * b;
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(1) == 0);
  CHECK_FALSE(p.is_known(2));
  CHECK_THROWS_AS(p.coeff(2), PreconditionError);
  CHECK(b.is_exact());

  CHECK_THROWS_AS(b.inverse(), PreconditionError);
  const LaurentSeries inv = b.truncated(6).inverse();
  for (int k = 0; k < 6; ++k) CHECK(inv.coeff(k) == 1);
}

TEST_CASE("exp and log invert each other") {
  const LaurentSeries x = LaurentSeries::from_coefficients(kZero, 1, {2, make_rational(-1, 3), 5, 0, 7});
  const LaurentSeries back = x.exp().log();
  CHECK(back == x);
  CHECK_THROWS_AS(LaurentSeries::from_coefficients(kZero, 0, {1, 1}).exp(), PreconditionError);
}

TEST_CASE("fractional powers and roots") {
  const LaurentSeries one_plus = LaurentSeries::from_coefficients(kZero, 0, {1, 1, 0, 0, 0, 0});
  const LaurentSeries r = one_plus.pow(make_rational(1, 2));
  check_ascending(r, 0, {"1", "1/2", "-1/8", "1/16", "-5/128"});
  CHECK(r * r == one_plus);
  CHECK(one_plus.nth_root(3).pow(3) == one_plus);
}

TEST_CASE("reversion of z + z^2") {
  const LaurentSeries s = LaurentSeries::exact_polynomial(kZero, {{1, 1}, {2, 1}});
  const LaurentSeries r = s.truncated(6).reversion();
  check_ascending(r, 1, {"1", "-1", "2", "-5", "14"});
  CHECK(s.compose(r).truncated(5) == LaurentSeries::from_coefficients(kZero, 1, {1, 0, 0, 0, 0}));
}

TEST_CASE("f") {
  check_descending(series_f(9), 1,
                   {"1", "2/3", "-1/12", "11/270", "-329/12960", "269/15120", "-72803/5443200", "17207/1632960",
                    "-448591/52254720"});
  CHECK(series_f(3).order() == 3);
}

TEST_CASE("h, w, v and their inverse") {
  check_ascending(series_h(6), 1, {"1", "2/3", "13/36", "23/135", "313/4320", "241/8505"});
  check_ascending(series_v(4), 0, {"1", "1", "1/3", "1/36", "-1/270"});
  check_ascending(series_w(4), 0, {"1", "-1", "1/3", "-1/36", "-1/270"});
  const LaurentSeries prod = series_inv_h(8) * series_h(10);
  CHECK(prod.coeff(0) == 1);
  for (int k = 1; k <= 6; ++k) CHECK(prod.coeff(k) == 0);
}

TEST_CASE("eta1 and psi") {
  check_ascending(series_eta1(7), 1, {"1", "-2/3", "19/36", "-121/270", "5123/12960", "-48593/136080", "1784791/5443200"});
  check_descending(series_psi(4), 1, {"1", "-2/3", "1/12", "2/135"});
}

TEST_CASE("theta as computed from its defining cube") {
  // Two independent routes agree: the inverse cube root and the l-derivation.
  check_descending(series_theta(9), 1, {"1", "0", "-1/180", "0", "13/453600", "0", "97/34992000", "0",
                                        "-113977/2715939072000"});
}

TEST_CASE("theta of f") {
  check_descending(series_theta_of_f(7), 1, {"1", "2/3", "-4/45", "2/45", "-401/14175", "172/8505", "-29632/1913625"});
}

TEST_CASE("stirling exponential") {
  check_descending(series_stirling(4), 0, {"1", "1/12", "1/288", "-139/51840", "-571/2488320"});
}

TEST_CASE("a and e coefficients") {
  const DerivationCoeffs a = a_coefficients(4);
  CHECK(a.direction == Direction::lowering);
  CHECK(a.at(1) == R("2/3"));
  CHECK(a.at(2) == R("-1/12"));
  CHECK(a.at(3) == R("7/540"));  // f[z^-2] = a_3 - a_1 a_2 / 2
  const DerivationCoeffs e = e_coefficients(3);
  CHECK(e.at(1) == R("2/3"));
  CHECK(e.at(2) == R("-4/45"));
  CHECK(e.at(3) == R("2/135"));
  CHECK(a_coefficients(0).length() == 0);
}

TEST_CASE("derivation exponential: closed and nested forms agree") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-4, 4);
  for (int trial = 0; trial < 5; ++trial) {
    DerivationCoeffs d;
    for (int k = 1; k <= 7; ++k) d.coeffs.push_back(make_rational(num(rng), k));
    for (int n : {1, 2, 3, 5}) CHECK(apply_derivation_exp(d, n, 8) == apply_derivation_exp_nested(d, n, 8));
  }
  DerivationCoeffs short_d;
  short_d.coeffs = {1};
  CHECK_THROWS_AS(apply_derivation_exp(short_d, 1, 5), PreconditionError);
}

TEST_CASE("exp(Phi) z reproduces f") {
  const DerivationCoeffs a = a_coefficients(8);
  CHECK(apply_derivation_exp(a, 1, 9) == series_f(9));
  // raising direction round trip
  const LaurentSeries target = series_h(8);
  const DerivationCoeffs up = solve_derivation_coeffs(target, Direction::raising);
  CHECK(apply_derivation_exp(up, 1, 8) == target.truncated(8));
}

TEST_CASE("composition through powers") {
  const DerivationCoeffs a = a_coefficients(8);
  const LaurentSeries psi = series_psi(8);
  CHECK(compose_via_powers(psi, a) == psi.compose(series_f(9)));
}

TEST_CASE("D on z") {
  CHECK(D_power_of_z(0) == LaurentSeries::monomial(kInf, 1));
  CHECK(D_power_of_z(1) == LaurentSeries::exact_polynomial(kInf, {{1, 1}, {2, 2}, {3, 1}}));
  CHECK(apply_D(D_power_of_z(2)) == D_power_of_z(3));
}

TEST_CASE("power identity for f^(2n+1)") {
  const DerivationCoeffs a = a_coefficients(10);
  for (int n = 0; n <= 5; ++n) CHECK(lemma_power_residual(a, n).is_zero());
  DerivationCoeffs bent = a;
  bent.coeffs[1] += make_rational(1, 7);
  CHECK_FALSE(lemma_power_residual(bent, 1).is_zero());
}

TEST_CASE("functional equations vanish to order 12") {
  for (const IdentityCheck& c : functional_equation_checks(12)) {
    INFO(c.name);
    CHECK(c.vanishes());
    CHECK(c.compared() > 0);
  }
}

TEST_CASE("d coefficients") {
  CHECK(d_coefficient(-1) == R("-2/3"));
  CHECK(d_coefficient(-2) == R("1/6"));
  CHECK(d_coefficient(-3) == R("-1/15"));
  CHECK_THROWS_AS(d_coefficient(0), PreconditionError);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(series_f(0), PreconditionError);
  CHECK_THROWS_AS(LaurentSeries::from_coefficients(kZero, 0, {0, 1}).log(), PreconditionError);
}
