// Acceptance run: one line per criterion, exact equality throughout, wall-clock
// limits pinned below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "taulink/named_series.hpp"
#include "taulink/sequences.hpp"
#include "taulink/verify.hpp"

using namespace taulink;

namespace {

Rational R(const char* s) { return parse_rational(s); }

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<bool(std::string&)> run;  // fills a note on failure
};

bool expect(std::string& note, const std::string& what, const Rational& got, const Rational& want) {
  if (got == want) return true;
  note += what + " = " + to_string(got) + " (want " + to_string(want) + "); ";
  return false;
}

bool expect_report(std::string& note, const Report& r) {
  if (r.pass() && r.checked > 0) return true;
  note += r.name + ": " + std::to_string(r.mismatches.size()) + " mismatches of " + std::to_string(r.checked);
  if (!r.mismatches.empty()) {
    const Mismatch& m = r.mismatches.front();
    note += ", first " + m.label + " at " + m.where + ": " + to_string(m.lhs) + " vs " + to_string(m.rhs);
  }
  note += "; ";
  return false;
}

GradedPoly phi_expect(const TruncationSpec& t, std::initializer_list<std::pair<int, long>> coeffs) {
  GradedPoly p(Alphabet::q, t);
  int top = 0;
  for (const auto& c : coeffs) top = std::max(top, c.first);
  for (const auto& [j, c] : coeffs) p.add(index_monomial({j}, top - j), Rational(c));
  return p;
}

bool golden_coefficients(std::string& note) {
  const DerivationCoeffs a = a_coefficients(2);
  const std::vector<Rational> e = e_sequence(3);
  bool ok = expect(note, "a_1", a.at(1), R("2/3"));
  ok &= expect(note, "a_2", a.at(2), R("-1/12"));
  ok &= expect(note, "b_1", b_coefficient(1), R("1"));
  ok &= expect(note, "b_2", b_coefficient(2), R("1/3"));
  ok &= expect(note, "e_1", e[0], R("2/3"));
  ok &= expect(note, "e_2", e[1], R("-4/45"));
  ok &= expect(note, "e_3", e[2], R("2/135"));
  ok &= expect(note, "C_0", C_coefficient(0), R("1"));
  return ok;
}

bool golden_series(std::string& note) {
  const LaurentSeries f = series_f(3);
  bool ok = expect(note, "f[z]", f.coeff(1), R("1"));
  ok &= expect(note, "f[1]", f.coeff(0), R("2/3"));
  ok &= expect(note, "f[z^-1]", f.coeff(-1), R("-1/12"));
  const LaurentSeries theta = series_theta(5);
  ok &= expect(note, "theta[z]", theta.coeff(1), R("1"));
  ok &= expect(note, "theta[1]", theta.coeff(0), R("0"));
  ok &= expect(note, "theta[z^-1]", theta.coeff(-1), R("-1/180"));
  ok &= expect(note, "theta[z^-2]", theta.coeff(-2), R("0"));
  ok &= expect(note, "theta[z^-3]", theta.coeff(-3), R("-67/453600"));
  const LaurentSeries tf = series_theta_of_f(4);
  ok &= expect(note, "theta(f)[z]", tf.coeff(1), R("1"));
  ok &= expect(note, "theta(f)[1]", tf.coeff(0), R("2/3"));
  ok &= expect(note, "theta(f)[z^-1]", tf.coeff(-1), R("-4/45"));
  ok &= expect(note, "theta(f)[z^-2]", tf.coeff(-2), R("2/45"));

  const TruncationSpec t{6, 7, 7};
  const std::vector<GradedPoly> phi = phi_polynomials(3, t);
  const std::vector<GradedPoly> want{
      phi_expect(t, {{1, 1}}),
      phi_expect(t, {{1, 1}, {2, 2}, {3, 1}}),
      phi_expect(t, {{1, 1}, {2, 6}, {3, 12}, {4, 10}, {5, 3}}),
      phi_expect(t, {{1, 1}, {2, 14}, {3, 61}, {4, 124}, {5, 131}, {6, 70}, {7, 15}})};
  for (int k = 1; k <= 3; ++k) {
    if (phi[static_cast<std::size_t>(k)] != want[static_cast<std::size_t>(k)]) {
      note += "phi_" + std::to_string(k) + " = " + format_poly(phi[static_cast<std::size_t>(k)]) + "; ";
      ok = false;
    }
  }
  return ok;
}

bool functional_equations(std::string& note) {
  bool ok = true;
  for (const IdentityCheck& c : functional_equation_checks(12)) {
    if (!c.vanishes() || c.compared() <= 0) {
      note += c.name + " does not vanish; ";
      ok = false;
    }
  }
  return ok;
}

bool zassenhaus(std::string& note) {
  const TruncationSpec t{4, 9, 9};
  bool ok = expect_report(note, check_zassenhaus_w(t, 0, 20));
  ok &= expect_report(note, check_zassenhaus_l(t, 0, 20));
  return ok;
}

bool virasoro(std::string& note) {
  bool ok = expect_report(note, check_virasoro_anchors(15));
  ok &= expect_report(note, verify_virasoro(15));
  return ok;
}

bool theorem(std::string& note) {
  const TheoremSides base = theorem_sides(4, 9, 0);
  bool ok = expect_report(note, verify_theorem1(base, 4, 9));
  const TheoremSides wider = theorem_sides(4, 9, 3);
  ok &= expect_report(note, verify_stability(base, wider, 4, 9));
  ok &= expect_report(note, verify_theorem1(wider, 4, 9));
  return ok;
}

bool corollary(std::string& note) {
  return expect_report(note, verify_corollary2(theorem_sides(4, 9, 0), 4, 9));
}

bool eta_and_xi(std::string& note) {
  bool ok = expect_report(note, check_eta_pde(10));
  ok &= expect_report(note, check_xi(0, 12));
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "coefficient golden values", 1.0, golden_coefficients},
      {2, "series golden values", 1.0, golden_series},
      {3, "alternating C convolution, k <= 10", 1.0,
       [](std::string& n) { return expect_report(n, check_lemma_c(10)); }},
      {4, "odd power identity, n <= 5", 5.0, [](std::string& n) { return expect_report(n, check_lemma_power(5)); }},
      {5, "double factorial link, i + j <= 4", 10.0,
       [](std::string& n) { return expect_report(n, check_link_table(4)); }},
      {6, "functional equations to order 12", 5.0, functional_equations},
      {7, "operator splittings on 20 + 20 seeded samples", 30.0, zassenhaus},
      {8, "substitution bridge, n <= 3 and sample G", 10.0,
       [](std::string& n) { return expect_report(n, check_prop_p4(TruncationSpec{6, 7, 7})); }},
      {9, "constraint solver and residuals at weight 15", 60.0, virasoro},
      {10, "Hodge / Kontsevich-Witten relation, U=4 W=9, margin stability", 600.0, theorem},
      {11, "e-form and l-form relations, U=4 W=9", 600.0, corollary},
      {12, "eta PDE to order 10 and Xi brackets on 12 pairs", 5.0, eta_and_xi},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    std::string note;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note += std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      note += "over the time limit; ";
      ok = false;
    }
    if (!ok) ++failed;
    std::printf("%s criterion %2d: %s (%.3f s, limit %.0f s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title, secs,
                c.limit_seconds, note.empty() ? "" : " -- ", note.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
