#include <doctest.h>

#include <random>

#include "taulink/named_series.hpp"
#include "taulink/operators.hpp"
#include "taulink/sequences.hpp"

using namespace taulink;

namespace {

Rational R(const char* s) { return parse_rational(s); }

Monomial um(int u, std::initializer_list<int> idx) { return index_monomial(idx, u); }

GradedPoly poly(Alphabet a, TruncationSpec t, std::initializer_list<std::pair<Monomial, Rational>> terms) {
  GradedPoly p(a, t);
  for (const auto& [m, c] : terms) p.add(m, c);
  return p;
}

const TruncationSpec kT{4, 9, 9};

}  // namespace

TEST_CASE("monomial weights") {
  const Monomial m = um(2, {1, 1, 3});
  CHECK(m.degree() == 3);
  CHECK(m.max_index() == 3);
  CHECK(m.weight(Alphabet::q) == 7);
  CHECK(m.weight(Alphabet::t) == 2 + 3 + 3 + 7);
  CHECK(Monomial::var(1).divides(m));
  CHECK_FALSE(Monomial::var(3, 2).divides(m));
  CHECK(margin_truncation(4, 9) == TruncationSpec{4, 15, 15});
  CHECK(margin_truncation(3, 9, 3) == TruncationSpec{3, 18, 18});
}

TEST_CASE("truncation drops out-of-window terms") {
  GradedPoly p(Alphabet::q, TruncationSpec{2, 5, 5});
  p.add(um(3, {1}), 1);
  p.add(um(0, {6}), 1);
  p.add(um(0, {2, 3}), 1);
  p.add(um(1, {2, 3}), 1);
  CHECK(p.size() == 1);
  CHECK(format_poly(p) == "q2*q3");
  CHECK_THROWS_AS(GradedPoly(Alphabet::q, kT) + GradedPoly(Alphabet::t, kT), PreconditionError);
}

TEST_CASE("graded exp and log") {
  const GradedPoly x = poly(Alphabet::q, kT, {{um(0, {1}), 1}, {um(1, {2}), R("1/2")}});
  const GradedPoly e = x.exp();
  CHECK(e.coeff(Monomial{}) == 1);
  CHECK(e.coeff(um(0, {1, 1, 1})) == R("1/6"));
  CHECK(e.log() == x);
  CHECK_THROWS_AS(e.exp(), PreconditionError);
}

TEST_CASE("Weyl product and commutators") {
  DiffOperator d(Alphabet::q);
  d.add_term(1, 0, {}, {1});
  DiffOperator x(Alphabet::q);
  x.add_term(1, 0, {1}, {});
  DiffOperator one(Alphabet::q);
  one.add_term(1, Monomial{}, Monomial{});
  CHECK(commutator(d, x) == one);
  // d x^2 = x^2 d + 2 x
  DiffOperator x2(Alphabet::q);
  x2.add_term(1, 0, {1, 1}, {});
  DiffOperator expect(Alphabet::q);
  expect.add_term(1, 0, {1, 1}, {1});
  expect.add_term(2, 0, {1}, {});
  CHECK(d * x2 == expect);
}

TEST_CASE("Virasoro brackets of L_m") {
  const TruncationSpec wide{0, 20, 20};
  const TruncationSpec t{0, 12, 12};
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const DiffOperator lhs = commutator(build_Lm(m, wide), build_Lm(n, wide)).pruned(t);
      CHECK(lhs == build_Lm(m + n, wide).scaled(Rational(m - n)).pruned(t));
    }
  }
  for (int m = 1; m <= 4; ++m) {
    for (int w : build_Lm(m, t).scaled(1, m).term_weights()) CHECK(w == 0);
  }
}

TEST_CASE("operator action, serial and parallel agree") {
  std::mt19937_64 rng(42);
  const DiffOperator l = u_weighted_sum(indexed(a_coefficients(4).coeffs), kT);
  for (int s = 0; s < 10; ++s) {
    const GradedPoly p = random_poly(Alphabet::q, kT, rng, 8);
    CHECK(apply_operator_serial(l, p) == apply_operator_parallel(l, p));
    CHECK(exp_apply(l, p, Kernel::serial) == exp_apply(l, p, Kernel::parallel));
  }
  DiffOperator no_u(Alphabet::q);
  no_u.add_term(1, 0, {}, {1});
  CHECK_THROWS_AS(exp_apply(no_u, GradedPoly(Alphabet::q, kT)), PreconditionError);
}

TEST_CASE("derivation exponential acts as substitution") {
  // exp(c u X_1) q_3 = q_3 + 3c u q_2 + 3c^2 u^2 q_1
  const DiffOperator x1 = build_Xm(1, kT).scaled(R("2/3"), 1);
  const GradedPoly q3 = GradedPoly::variable(Alphabet::q, kT, 3);
  const GradedPoly out = exp_apply(x1, q3);
  CHECK(out.coeff(um(0, {3})) == 1);
  CHECK(out.coeff(um(1, {2})) == 2);
  CHECK(out.coeff(um(2, {1})) == R("4/3"));
}

TEST_CASE("phi polynomials") {
  const TruncationSpec t{6, 7, 7};
  const std::vector<GradedPoly> phi = phi_polynomials(3, t);
  CHECK(format_poly(phi[0]) == "q1");
  CHECK(phi[1] == poly(Alphabet::q, t, {{um(0, {3}), 1}, {um(1, {2}), 2}, {um(2, {1}), 1}}));
  CHECK(phi[3] == poly(Alphabet::q, t,
                       {{um(0, {7}), 15},
                        {um(1, {6}), 70},
                        {um(2, {5}), 131},
                        {um(3, {4}), 124},
                        {um(4, {3}), 61},
                        {um(5, {2}), 14},
                        {um(6, {1}), 1}}));
}

TEST_CASE("P operators") {
  const TruncationSpec t{4, 9, 9};
  DiffOperator p(Alphabet::q);
  p.add_term(R("-1/36"), 2, {}, {5});
  p.add_term(R("-1/4320"), 4, {}, {7});
  CHECK(build_P(t) == p);
  DiffOperator pt(Alphabet::t);
  pt.add_term(R("-1/12"), 2, {}, {2});
  pt.add_term(R("-1/288"), 4, {}, {3});
  CHECK(build_Pt(t) == pt);
  CHECK(build_Pt_nested(t) == pt);
  CHECK(convert_t_to_q(pt) == p);
  CHECK(exp_apply(build_P(t), GradedPoly::variable(Alphabet::q, t, 5)) ==
        poly(Alphabet::q, t, {{um(0, {5}), 1}, {um(2, {}), R("-1/36")}}));
}

TEST_CASE("quadratic operators") {
  const TruncationSpec t{4, 9, 9};
  DiffOperator qw(Alphabet::t);
  qw.add_term(R("-1/12"), 2, {}, {0, 0});
  qw.add_term(R("-1/144"), 4, {}, {0, 1});
  CHECK(build_QtW(t) == qw);
  CHECK(build_QtW_nested(t) == qw);
  DiffOperator qp(Alphabet::q);
  qp.add_term(R("-1/12"), 2, {}, {1, 1});
  qp.add_term(R("-8/135"), 3, {}, {1, 2});
  qp.add_term(R("-1/54"), 4, {}, {2, 2});
  qp.add_term(R("-1/144"), 4, {}, {1, 3});
  CHECK(build_Qplus(t) == qp);
  CHECK(build_Qplus_nested(t) == qp);
  CHECK(convert_t_to_q(qw) == odd_part(qp));
}

TEST_CASE("Hodge operator splits into its pieces") {
  const TruncationSpec t{4, 9, 9};
  CHECK(build_W(t) == build_Bt(t) + build_Q0W(t).scaled(R("1/2")) + build_P0(t));
}

TEST_CASE("constraint operators") {
  const TruncationSpec t{0, 9, 9};
  // Lhat_{-1} = -d0 + t0^2/2 + sum t_{k+1} d_k
  const DiffOperator v = build_Vhat(-1, t);
  CHECK(v.terms().at(OpKey{Monomial{}, index_monomial({0})}) == -1);
  CHECK(v.terms().at(OpKey{index_monomial({0, 0}), Monomial{}}) == R("1/2"));
  CHECK(v.terms().at(OpKey{index_monomial({1}), index_monomial({0})}) == 1);
  const DiffOperator v0 = build_Vhat(0, t);
  CHECK(v0.terms().at(OpKey{Monomial{}, Monomial{}}) == R("1/8"));
  CHECK(v0.terms().at(OpKey{Monomial{}, index_monomial({1})}) == -3);
  CHECK_THROWS_AS(build_Vhat(-2, t), PreconditionError);
}

TEST_CASE("Xi on generators") {
  DiffOperator g(Alphabet::q);
  g.add_term(1, 0, {3}, {1});
  DiffOperator e(Alphabet::q);
  e.add_term(-3, 0, {1}, {3});
  CHECK(xi(g) == e);
  DiffOperator h(Alphabet::q);
  h.add_term(1, 0, {1, 2}, {});
  DiffOperator f(Alphabet::q);
  f.add_term(-2, 0, {}, {1, 2});
  CHECK(xi(h) == f);
  DiffOperator bad(Alphabet::q);
  bad.add_term(1, 0, {}, {1});
  CHECK_THROWS_AS(xi(bad), PreconditionError);
}

TEST_CASE("substitution") {
  const TruncationSpec t{4, 9, 9};
  const SubstitutionMap odd = odd_substitution(4, t);
  GradedPoly p(Alphabet::t, t);
  p.add(index_monomial({1, 2}), 1);
  const GradedPoly q = substitute(p, odd, t);
  CHECK(q == poly(Alphabet::q, t, {{um(0, {3, 5}), 3}}));
  std::map<int, GradedPoly> bad;
  bad.emplace(0, GradedPoly::variable(Alphabet::q, t, 2));
  CHECK_THROWS_AS(SubstitutionMap(Alphabet::t, bad), PreconditionError);
}

TEST_CASE("operator printing") {
  const TruncationSpec t{4, 9, 9};
  CHECK(format_operator(build_P(t)) == "-1/36*u^2*dq5 - 1/4320*u^4*dq7");
  DiffOperator x(Alphabet::q);
  x.add_term(1, 0, {2}, {1});
  x.add_term(-1, 0, {}, {});
  CHECK(format_operator(x) == "-1 + q2*dq1");
  CHECK(format_operator(DiffOperator(Alphabet::t)) == "0");
}
