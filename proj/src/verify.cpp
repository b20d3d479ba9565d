#include "taulink/verify.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "taulink/bivariate.hpp"
#include "taulink/named_series.hpp"
#include "taulink/sequences.hpp"

namespace taulink {
namespace {

Report empty_report(std::string name, Alphabet a = Alphabet::q, int u_max = 0, int weight_max = 0) {
  Report r;
  r.name = std::move(name);
  r.alphabet = a;
  r.u_max = u_max;
  r.weight_max = weight_max;
  return r;
}

void check_value(Report& r, const std::string& label, std::string where, const Rational& lhs, const Rational& rhs) {
  ++r.checked;
  if (lhs != rhs) r.mismatches.push_back({label, Monomial{}, lhs, rhs, std::move(where)});
}

// Every nonzero coefficient of a residual that should vanish.
void check_residual(Report& r, const std::string& label, const LaurentSeries& residual, int compared) {
  r.checked += compared;
  for (const auto& [e, c] : residual.terms()) {
    if (!is_zero(c)) r.mismatches.push_back({label, Monomial{}, c, Rational(0), "z^" + std::to_string(e)});
  }
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

std::string format_key(const OpKey& k, Alphabet a) {
  std::string out = format_monomial(k.mult, a);
  for (int i = 0; i < kSlots; ++i) {
    for (int p = 0; p < k.deriv.e[static_cast<std::size_t>(i)]; ++p) out += "*d" + to_string(a) + std::to_string(i);
  }
  return out;
}

DiffOperator sum_a_first_order(const TruncationSpec& trunc) {
  return u_weighted_sum(indexed(a_coefficients(trunc.u_max).coeffs), trunc, VirasoroPart::first_order);
}

Report apply_and_compare(Report r, const std::string& label, const GradedPoly& lhs, const GradedPoly& rhs) {
  r.absorb(compare_window(r.name, label, lhs, rhs, lhs.trunc().u_max, lhs.trunc().weight_max));
  return r;
}

}  // namespace

Report compare_operators(std::string name, std::string label, const DiffOperator& lhs, const DiffOperator& rhs) {
  if (lhs.alphabet() != rhs.alphabet()) throw PreconditionError("compare_operators: alphabet mismatch");
  Report r = empty_report(std::move(name), lhs.alphabet());
  std::set<OpKey> keys;
  for (const auto& [k, c] : lhs.terms()) keys.insert(k);
  for (const auto& [k, c] : rhs.terms()) keys.insert(k);
  for (const auto& k : keys) {
    const auto a = lhs.terms().find(k);
    const auto b = rhs.terms().find(k);
    const Rational x = a == lhs.terms().end() ? Rational(0) : a->second;
    const Rational y = b == rhs.terms().end() ? Rational(0) : b->second;
    check_value(r, label, format_key(k, lhs.alphabet()), x, y);
  }
  return r;
}

Report check_lemma_c(int k_max) {
  Report r = empty_report("lemma-c");
  for (int k = 1; k <= k_max; ++k) {
    check_value(r, "sum (-1)^i C_i C_{k-i}", "k=" + std::to_string(k), alternating_C_convolution(k), Rational(0));
  }
  return r;
}

Report check_lemma_power(int n_max) {
  Report r = empty_report("lemma5");
  const DerivationCoeffs a = a_coefficients(std::max(2 * n_max, 1));
  for (int n = 0; n <= n_max; ++n) {
    const LaurentSeries res = lemma_power_residual(a, n);
    check_residual(r, "(f^" + std::to_string(2 * n + 1) + ")_+", res, 2 * n + 1);
  }
  return r;
}

Report check_a_uniqueness(int k_max) {
  Report r = empty_report("lemma5");
  const DerivationCoeffs a = a_coefficients(std::max(2, k_max + 1));
  for (int k = 1; k <= k_max; ++k) {
    DerivationCoeffs bent = a;
    bent.coeffs[static_cast<std::size_t>(k - 1)] += 1;
    // f^3 = z^3 + 3 a_1 z^2 + 3 (a_1^2 + a_2) z + ... already sees a_1 and a_2.
    const LaurentSeries res = lemma_power_residual(bent, 1);
    ++r.checked;
    if (res.is_zero()) {
      r.mismatches.push_back({"perturbed a_k still satisfies the n=1 identity", Monomial{}, bent.at(k), a.at(k),
                              "k=" + std::to_string(k)});
    }
  }
  return r;
}

Report check_derivation_round_trip(std::uint64_t seed, int samples, int order) {
  Report r = empty_report("lemma5");
  r.seed = static_cast<long long>(seed);
  std::mt19937_64 rng = make_rng(seed, 5);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 6);
  for (int s = 0; s < samples; ++s) {
    DerivationCoeffs d;
    for (int k = 1; k < order; ++k) d.coeffs.push_back(make_rational(num(rng), den(rng)));
    const LaurentSeries image = apply_derivation_exp(d, 1, order);
    const DerivationCoeffs back = solve_derivation_coeffs(image, Direction::lowering);
    for (int k = 1; k < order; ++k) {
      check_value(r, "solve(e^Phi z) = Phi", "sample " + std::to_string(s) + " a_" + std::to_string(k), back.at(k),
                  d.at(k));
    }
  }
  return r;
}

Report check_functional_equations(int order) {
  Report r = empty_report("functional");
  for (const IdentityCheck& c : functional_equation_checks(order)) check_residual(r, c.name, c.residual, c.compared());
  return r;
}

Report check_link_table(int max_sum) {
  Report r = empty_report("prop-quadratic");
  for (const LinkEntry& e : check_double_factorial_link(max_sum)) {
    check_value(r, "QB_ij vs (2i+1)!!(2j+1)!! Q_{2i+1,2j+1}",
                "i=" + std::to_string(e.i) + ",j=" + std::to_string(e.j), e.qb, e.scaled);
  }
  return r;
}

Report check_quadratic_operators(int max_sum) {
  // u-powers 2i+2j+2 and indices 2i+1 for i + j <= max_sum
  const int top = 2 * max_sum + 1;
  const TruncationSpec qt{2 * max_sum + 2, top, top};
  const TruncationSpec tt{2 * max_sum + 2, top, max_sum};
  Report r = compare_operators("prop-quadratic", "Q^W in q vs odd part of Q+", convert_t_to_q(build_QtW(tt)),
                               odd_part(build_Qplus(qt)));
  r.u_max = qt.u_max;
  r.weight_max = qt.weight_max;
  return r;
}

Report check_zassenhaus_w(const TruncationSpec& trunc, std::uint64_t seed, int samples, Kernel k) {
  Report r = empty_report("zassenhaus-w", Alphabet::t, trunc.u_max, trunc.weight_max);
  r.seed = static_cast<long long>(seed);
  const DiffOperator w = build_W(trunc);
  const DiffOperator bt = build_Bt(trunc);
  const DiffOperator half_q = build_QtW(trunc).scaled(make_rational(1, 2));
  const DiffOperator pt = build_Pt(trunc);
  r.absorb(compare_operators(r.name, "P_t closed vs nested", pt, build_Pt_nested(trunc)));
  r.absorb(compare_operators(r.name, "Q_t^W closed vs nested", build_QtW(trunc), build_QtW_nested(trunc)));
  std::mt19937_64 rng = make_rng(seed, 7);
  for (int s = 0; s < samples; ++s) {
    const GradedPoly p = random_poly(Alphabet::t, trunc, rng, 6);
    const GradedPoly lhs = exp_apply(w, p, k);
    const GradedPoly rhs = exp_apply(bt, exp_apply(half_q, exp_apply(pt, p, k), k), k);
    r = apply_and_compare(std::move(r), "exp W vs exp B exp Q/2 exp P, sample " + std::to_string(s), lhs, rhs);
  }
  return r;
}

Report check_zassenhaus_l(const TruncationSpec& trunc, std::uint64_t seed, int samples, Kernel k) {
  Report r = empty_report("zassenhaus-l", Alphabet::q, trunc.u_max, trunc.weight_max);
  r.seed = static_cast<long long>(seed);
  const std::map<int, Rational> a = indexed(a_coefficients(trunc.u_max).coeffs);
  const DiffOperator sum_l = u_weighted_sum(a, trunc);
  const DiffOperator sum_x = u_weighted_sum(a, trunc, VirasoroPart::first_order);
  const DiffOperator qplus = build_Qplus(trunc);
  r.absorb(compare_operators(r.name, "Q+ closed vs nested", qplus, build_Qplus_nested(trunc)));
  const DiffOperator half_q = qplus.scaled(make_rational(1, 2));
  std::mt19937_64 rng = make_rng(seed, 11);
  for (int s = 0; s < samples; ++s) {
    const GradedPoly p = random_poly(Alphabet::q, trunc, rng, 6);
    const GradedPoly lhs = exp_apply(sum_l, p, k);
    const GradedPoly rhs = exp_apply(sum_x, exp_apply(half_q, p, k), k);
    r = apply_and_compare(std::move(r), "exp aL vs exp aX exp Q+/2, sample " + std::to_string(s), lhs, rhs);
  }
  r.absorb(check_virasoro_brackets(trunc.weight_max, seed, 4));
  return r;
}

Report check_virasoro_brackets(int weight_max, std::uint64_t seed, int samples) {
  const TruncationSpec wide{0, weight_max + 6, weight_max + 6};
  const TruncationSpec trunc{0, weight_max, weight_max};
  Report r = empty_report("zassenhaus-l", Alphabet::q, 0, weight_max);
  r.seed = static_cast<long long>(seed);
  std::mt19937_64 rng = make_rng(seed, 13);
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      if (m == n) continue;
      const std::string label = "[L_" + std::to_string(m) + ",L_" + std::to_string(n) + "] = (m-n) L_m+n";
      const DiffOperator lhs = commutator(build_Lm(m, wide), build_Lm(n, wide)).pruned(trunc);
      const DiffOperator rhs = build_Lm(m + n, wide).scaled(Rational(m - n)).pruned(trunc);
      r.absorb(compare_operators(r.name, label, lhs, rhs));
      for (int s = 0; s < samples; ++s) {
        const GradedPoly p = random_poly(Alphabet::q, trunc, rng, 6);
        r = apply_and_compare(std::move(r), label + " on sample " + std::to_string(s), apply_operator(lhs, p),
                              apply_operator(rhs, p));
      }
    }
  }
  return r;
}

Report check_prop_p4(const TruncationSpec& trunc, Kernel k) {
  Report r = empty_report("prop-p4", Alphabet::q, trunc.u_max, trunc.weight_max);
  const int k_max = (trunc.weight_max - 1) / 2;
  const TruncationSpec tt{trunc.u_max, trunc.weight_max, k_max};
  const SubstitutionMap odd = odd_substitution(k_max, trunc);
  const SubstitutionMap phi = phi_substitution(k_max, trunc);
  const DiffOperator bt = build_Bt(tt);
  const DiffOperator sum_x = sum_a_first_order(trunc);
  const std::vector<std::pair<std::string, Monomial>> samples{{"t0", index_monomial({0})},
                                                               {"t1", index_monomial({1})},
                                                               {"t2", index_monomial({2})},
                                                               {"t0*t1", index_monomial({0, 1})}};
  for (const auto& [name, m] : samples) {
    GradedPoly g(Alphabet::t, tt);
    g.add(m, 1);
    const GradedPoly lhs = exp_apply(sum_x, substitute(g, odd, trunc), k);
    const GradedPoly rhs = substitute(exp_apply(bt, g, k), phi, trunc);
    r = apply_and_compare(std::move(r), "G = " + name, lhs, rhs);
  }
  r.absorb(check_bridge(3, k));
  return r;
}

Report check_bridge(int n_max, Kernel k) {
  const int w = 2 * n_max + 1;
  const TruncationSpec trunc{w - 1, w, w};
  Report r = empty_report("prop-p4", Alphabet::q, trunc.u_max, trunc.weight_max);
  const DiffOperator sum_x = sum_a_first_order(trunc);
  const std::vector<GradedPoly> phi = phi_polynomials(n_max, trunc);
  for (int n = 0; n <= n_max; ++n) {
    const GradedPoly lhs = exp_apply(sum_x, GradedPoly::variable(Alphabet::q, trunc, 2 * n + 1), k);
    GradedPoly rhs(Alphabet::q, trunc);
    for (int i = 0; i <= n; ++i) {
      GradedPoly term(Alphabet::q, trunc);
      Monomial ui;
      ui.u = static_cast<std::uint8_t>(2 * i);
      term.add(ui, C_coefficient(i));
      rhs += term * phi[static_cast<std::size_t>(n - i)];
    }
    rhs *= Rational(1) / Rational(double_factorial(2 * n - 1));
    r.absorb(compare_window(r.name, "exp(aX) q_" + std::to_string(2 * n + 1), lhs, rhs, trunc.u_max,
                            trunc.weight_max));
  }
  return r;
}

Report check_virasoro_anchors(int weight_bound) {
  Report r = empty_report("virasoro", Alphabet::t, 0, weight_bound);
  const CorrelatorTable table = solve_fk(weight_bound);
  check_value(r, "<tau_0^3>", "anchor", table.at({0, 0, 0}), Rational(1));
  check_value(r, "<tau_1>", "anchor", table.at({1}), make_rational(1, 24));
  check_value(r, "<tau_0^3 tau_1>", "anchor", table.at({0, 0, 0, 1}), Rational(1));

  const CorrelatorTable other = solve_fk(weight_bound, SolverChoice::second_largest_index);
  ++r.checked;
  if (!(other == table)) {
    for (const auto& [d, v] : table.entries()) {
      std::string where = "<";
      for (int x : d) where += "tau_" + std::to_string(x) + " ";
      where.back() = '>';
      check_value(r, "solver independence", where, other.at(d), v);
    }
  }
  for (const auto& [d, v] : table.entries()) {
    ++r.checked;
    if (correlator_genus(d) < 0) {
      r.mismatches.push_back({"dimension filter", Monomial{}, v, Rational(0), "weight " + std::to_string(insertion_weight(d))});
    }
  }
  const TruncationSpec trunc{0, weight_bound, weight_bound};
  for (Alphabet a : {Alphabet::t, Alphabet::q}) {
    const TauSeries fk = fk_series(table, a, trunc);
    r.absorb(compare_window(r.name, "log exp F_K(" + to_string(a) + ")", fk.exp_part.log(), fk.log_part, 0,
                            weight_bound));
  }
  return r;
}

Report check_eta_pde(int bivariate_order) {
  Report r = empty_report("eta-pde", Alphabet::q, bivariate_order, bivariate_order);
  const int n = bivariate_order;
  const LaurentSeries eta1 = series_eta1(n + 1);
  // eta(u, z) = sum_k c_k u^{k-1} z^k; residual indexed by (u-power, z-power).
  std::map<std::pair<int, int>, Rational> res;
  for (int k = 1; 2 * k - 1 <= n + 1; ++k) {
    const Rational c = eta1.coeff(k);
    if (k >= 2) res[{k - 2, k}] += (k - 1) * c;
    for (int m = 2; 2 * (m + k) - 4 <= n; ++m) res[{m + k - 3, m + k - 1}] -= d_coefficient(1 - m) * k * c;
  }
  for (int deg = 0; deg <= n; ++deg) {
    for (int a = 0; a <= deg; ++a) {
      const auto it = res.find({a, deg - a});
      const Rational v = it == res.end() ? Rational(0) : it->second;
      check_value(r, "d_u eta - (sum d u^{n-2} z^n) d_z eta",
                  "u^" + std::to_string(a) + "*z^" + std::to_string(deg - a), v, Rational(0));
    }
  }
  return r;
}

Report check_xi(std::uint64_t seed, int pairs) {
  const TruncationSpec trunc{0, 12, 12};
  Report r = empty_report("xi-iso", Alphabet::q, 0, trunc.weight_max);
  r.seed = static_cast<long long>(seed);
  std::mt19937_64 rng = make_rng(seed, 17);
  std::uniform_int_distribution<int> small(1, 3);
  std::uniform_int_distribution<int> coin(0, 2);
  auto first_order = [&](std::string& name) {
    const int i = small(rng);
    const int j = small(rng);
    DiffOperator g(Alphabet::q);
    g.add_term(1, 0, {i + j}, {i});
    name = "q" + std::to_string(i + j) + "*dq" + std::to_string(i);
    return g;
  };
  auto quadratic = [&](std::string& name) {
    const int a = small(rng);
    const int b = small(rng) + 1;
    DiffOperator g(Alphabet::q);
    g.add_term(1, 0, {a, b}, {});
    name = "q" + std::to_string(a) + "*q" + std::to_string(b);
    return g;
  };
  for (int s = 0; s < pairs; ++s) {
    std::string n1, n2;
    const DiffOperator g1 = first_order(n1);
    const DiffOperator g2 = coin(rng) == 0 ? first_order(n2) : quadratic(n2);
    const std::string label = "Xi[" + n1 + ", " + n2 + "]";
    const DiffOperator lhs = xi(commutator(g1, g2));
    const DiffOperator rhs = commutator(xi(g1), xi(g2));
    r.absorb(compare_operators(r.name, label, lhs, rhs));
    for (int t = 0; t < 2; ++t) {
      const GradedPoly p = random_poly(Alphabet::q, trunc, rng, 6);
      r = apply_and_compare(std::move(r), label + " on sample " + std::to_string(t), apply_operator(lhs, p),
                            apply_operator(rhs, p));
    }
  }
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma-c",      "lemma5",  "functional", "prop-quadratic",
                                              "zassenhaus-w", "zassenhaus-l", "prop-p4", "virasoro",
                                              "thm1",         "cor2",    "stability",  "eta-pde",
                                              "xi-iso"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

Verifier::Verifier(RunConfig cfg) : cfg_(cfg) {
  if (cfg_.u_max < 1 || cfg_.weight_max < 1 || cfg_.order < 1) throw PreconditionError("bounds must be positive");
  if (cfg_.margin_extra < 0) throw PreconditionError("margin_extra must be nonnegative");
}

Verifier::~Verifier() = default;

const TheoremSides& Verifier::base() {
  if (!base_) base_ = theorem_sides(cfg_.u_max, cfg_.weight_max, cfg_.margin_extra, cfg_.kernel);
  return *base_;
}

const TheoremSides& Verifier::wider() {
  if (!wider_) wider_ = theorem_sides(cfg_.u_max, cfg_.weight_max, cfg_.margin_extra + 3, cfg_.kernel);
  return *wider_;
}

Report Verifier::run(const std::string& suite) {
  const TruncationSpec trunc{cfg_.u_max, cfg_.weight_max, cfg_.weight_max};
  Report r;
  if (suite == "lemma-c") {
    r = check_lemma_c(10);
  } else if (suite == "lemma5") {
    r = check_lemma_power(5);
    r.absorb(check_a_uniqueness(2));
    r.absorb(check_derivation_round_trip(cfg_.seed, 5, cfg_.order));
    r.seed = static_cast<long long>(cfg_.seed);
  } else if (suite == "functional") {
    r = check_functional_equations(cfg_.order);
  } else if (suite == "prop-quadratic") {
    r = check_link_table(4);
    r.absorb(check_quadratic_operators(4));
  } else if (suite == "zassenhaus-w") {
    r = check_zassenhaus_w(trunc, cfg_.seed, 20, cfg_.kernel);
  } else if (suite == "zassenhaus-l") {
    r = check_zassenhaus_l(trunc, cfg_.seed, 20, cfg_.kernel);
  } else if (suite == "prop-p4") {
    r = check_prop_p4(TruncationSpec{6, 7, 7}, cfg_.kernel);
  } else if (suite == "virasoro") {
    const int wb = margin_truncation(cfg_.u_max, cfg_.weight_max, cfg_.margin_extra).weight_max;
    r = verify_virasoro(wb);
    r.absorb(check_virasoro_anchors(wb));
  } else if (suite == "thm1") {
    r = verify_theorem1(base(), cfg_.u_max, cfg_.weight_max);
  } else if (suite == "cor2") {
    r = verify_corollary2(base(), cfg_.u_max, cfg_.weight_max);
  } else if (suite == "stability") {
    r = verify_stability(base(), wider(), cfg_.u_max, cfg_.weight_max);
  } else if (suite == "eta-pde") {
    r = check_eta_pde(10);
  } else if (suite == "xi-iso") {
    r = check_xi(cfg_.seed, 12);
  } else {
    throw PreconditionError("unknown suite \"" + suite + "\"");
  }
  r.name = suite;
  return r;
}

}  // namespace taulink
