#include <doctest.h>

#include "taulink/named_series.hpp"
#include "taulink/sequences.hpp"
#include "taulink/tau.hpp"
#include "taulink/verify.hpp"

using namespace taulink;

namespace {
Rational R(const char* s) { return parse_rational(s); }
}  // namespace

TEST_CASE("genus from the dimension rule") {
  CHECK(correlator_genus({0, 0, 0}) == 0);
  CHECK(correlator_genus({1}) == 1);
  CHECK(correlator_genus({4}) == 2);
  CHECK(correlator_genus({0, 0}) == -1);
  CHECK(correlator_genus({2}) == -1);
  CHECK(insertion_weight({0, 1, 2}) == 9);
}

TEST_CASE("intersection numbers from the constraints") {
  const CorrelatorTable t = solve_fk(15);
  CHECK(t.at({0, 0, 0}) == 1);
  CHECK(t.at({1}) == R("1/24"));
  CHECK(t.at({0, 0, 0, 1}) == 1);
  CHECK(t.at({1, 1}) == R("1/24"));
  CHECK(t.at({4}) == R("1/1152"));
  CHECK(t.at({2, 3}) == R("29/5760"));
  CHECK(t.at({0, 1}) == 0);
  CHECK(t.entries().size() == 42);
  CHECK_THROWS_AS(t.at({7, 7}), PreconditionError);
  CHECK(solve_fk(15, SolverChoice::second_largest_index) == t);
  CHECK_THROWS_AS(solve_fk(2), PreconditionError);
  for (const auto& [d, v] : t.entries()) CHECK(correlator_genus(d) >= 0);
}

TEST_CASE("F_K in t and q") {
  const CorrelatorTable table = solve_fk(5);
  const TruncationSpec trunc{0, 5, 5};
  const TauSeries t = fk_series(table, Alphabet::t, trunc);
  CHECK(t.provenance == Provenance::FK_t);
  CHECK(t.log_part.coeff(index_monomial({0, 0, 0})) == R("1/6"));
  CHECK(t.log_part.coeff(index_monomial({1})) == R("1/24"));
  CHECK(t.exp_part.coeff(Monomial{}) == 1);
  CHECK(t.exp_part.log() == t.log_part);
  const TauSeries q = fk_series(table, Alphabet::q, trunc);
  CHECK(q.log_part.coeff(index_monomial({1, 1, 1})) == R("1/6"));
  CHECK(q.log_part.coeff(index_monomial({3})) == R("1/24"));
  CHECK_THROWS_AS(fk_series(table, Alphabet::t, TruncationSpec{0, 7, 7}), PreconditionError);
}

TEST_CASE("Hodge series") {
  const TruncationSpec trunc = margin_truncation(4, 9);
  const CorrelatorTable table = solve_fk(trunc.weight_max);
  const HodgeSeries fh = build_fh(table, trunc);
  CHECK(fh.t.log_part.coeff(index_monomial({0}, 2)) == R("-1/24"));
  CHECK(fh.q.provenance == Provenance::FH_q);
  // u = 0 slice is F_K
  CHECK(fh.q.log_part.u_slice(0) == fk_series(table, Alphabet::q, trunc).log_part.u_slice(0));
  // u^{2j} marks lambda_j, so the weight 2j + 2 sum d + n is 6g - 6 + 3n
  const GradedPoly window = fh.t.log_part.restricted(4, 9);
  CHECK(window.size() > 10);
  for (const auto& [m, c] : window.terms()) {
    const int n = m.degree();
    const int w = m.weight(Alphabet::t);
    INFO(format_monomial(m, Alphabet::t));
    CHECK((w - 3 * n + 6) % 6 == 0);
    CHECK(w - 3 * n + 6 >= 0);
    CHECK(m.u % 2 == 0);
  }
  CHECK(build_fh(table, trunc, Kernel::serial).q.exp_part == fh.q.exp_part);
}

TEST_CASE("l and e sequences") {
  const std::vector<Rational> l = solve_l_from_btilde(4);
  CHECK(l[0] == R("1/180"));
  CHECK(l[0] == b_coefficient(3) / 5);
  CHECK(l[1] == R("-1/22680"));
  CHECK(l[2] == R("-29/12247200"));
  CHECK(l[3] == R("1/12028500"));
  CHECK(l_from_theta(4) == l);
  CHECK(series_theta(3).coeff(-1) == -l[0]);
  const std::vector<Rational> e = e_sequence(3);
  CHECK(e == std::vector<Rational>{R("2/3"), R("-4/45"), R("2/135")});
  CHECK(solve_l_from_btilde(0).empty());
  CHECK(e_sequence(0).empty());
}

TEST_CASE("window size counts every monomial") {
  CHECK(window_size(Alphabet::q, 0, 3) == 7);  // 1, q1, q1^2, q2, q1^3, q1 q2, q3
  CHECK(window_size(Alphabet::q, 1, 1) == 3);
  CHECK(window_size(Alphabet::t, 0, 3) == 5);
}

TEST_CASE("theorem windows") {
  const TheoremSides s = theorem_sides(4, 9, 0);
  const Report r1 = verify_theorem1(s, 4, 9);
  CHECK(r1.pass());
  CHECK(r1.checked == window_size(Alphabet::q, 4, 9));
  CHECK(s.hodge.u_slice(0).restricted(0, 9) == s.fk.u_slice(0).restricted(0, 9));
  CHECK(s.hodge.coeff(index_monomial({1}, 2)) == s.via_a.coeff(index_monomial({1}, 2)));
  CHECK(verify_corollary2(s, 4, 9).pass());
  CHECK(verify_stability(s, theorem_sides(4, 9, 3), 4, 9).pass());
}

TEST_CASE("perturbed a_m is caught") {
  const TheoremSides s = theorem_sides(3, 7, 0);
  const TruncationSpec& trunc = s.trunc;
  std::vector<Rational> a = a_coefficients(3).coeffs;
  a[1] += 1;
  const GradedPoly bent = exp_apply(u_weighted_sum(indexed(a), trunc), s.via_p);
  const Report r = compare_window("thm1", "bent", s.hodge, bent, 3, 7);
  CHECK_FALSE(r.pass());
  const Report ok = compare_window("thm1", "straight", s.hodge, s.via_a, 3, 7);
  CHECK(ok.pass());
}

TEST_CASE("constraint residuals") {
  const Report r = verify_virasoro(15);
  CHECK(r.pass());
  CHECK(r.checked > 0);
}

TEST_CASE("verification suites") {
  Verifier v(RunConfig{});
  for (const std::string& s : suite_names()) {
    INFO(s);
    const Report r = v.run(s);
    CHECK(r.pass());
    CHECK(r.checked > 0);
  }
  CHECK_THROWS_AS(v.run("nope"), PreconditionError);
  CHECK_THROWS_AS(Verifier(RunConfig{0, 9}), PreconditionError);
}

TEST_CASE("operator comparison lists each differing term") {
  const TruncationSpec t{4, 9, 9};
  const Report r = compare_operators("ops", "P vs 2P", build_P(t), build_P(t).scaled(2));
  CHECK(r.mismatches.size() == 2);
}
