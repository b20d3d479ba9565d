#include "taulink/tau.hpp"

#include "taulink/named_series.hpp"
#include "taulink/sequences.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace taulink {
namespace {

Rational dfact(int n) { return Rational(double_factorial(n)); }

class Solver {
 public:
  explicit Solver(SolverChoice choice) : choice_(choice) {}

  Rational value(Insertion d) {
    std::sort(d.begin(), d.end());
    if (correlator_genus(d) < 0) return 0;
    if (auto it = memo_.find(d); it != memo_.end()) return it->second;
    Rational v = d.back() == 0 ? string_step(d) : constraint_step(d);
    memo_.emplace(d, v);
    return v;
  }

 private:
  // <tau_0 S> = sum_{s in S, s >= 1} <tau_{s-1} S\s> + [S = {0,0}]
  Rational string_step(const Insertion& d) {
    Insertion s(d.begin() + 1, d.end());
    Rational r = s == Insertion{0, 0} ? 1 : 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == 0) continue;
      Insertion next = s;
      --next[i];
      r += value(next);
    }
    return r;
  }

  std::size_t pick(const Insertion& d) const {
    const std::size_t n = d.size();
    if (choice_ == SolverChoice::second_largest_index && n >= 2 && d[n - 2] >= 1) return n - 2;
    return n - 1;
  }

  // Coefficient of t^S / |Aut S| in exp(-F) Lhat_m exp(F) = 0, m = d_p - 1,
  // solved for the -(2m+3)!! d_{t_{m+1}} term.
  Rational constraint_step(const Insertion& d) {
    const std::size_t p = pick(d);
    const int m = d[p] - 1;
    Insertion s = d;
    s.erase(s.begin() + static_cast<long>(p));

    Rational r = (m == 0 && s.empty()) ? make_rational(1, 8) : Rational(0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      Insertion next = s;
      next[i] += m;
      r += dfact(2 * s[i] + 2 * m + 1) / dfact(2 * s[i] - 1) * value(next);
    }
    for (int k = 0; k <= m - 1; ++k) {
      const int l = m - 1 - k;
      Insertion joined = s;
      joined.push_back(k);
      joined.push_back(l);
      Rational inner = value(joined);
      const unsigned long subsets = 1UL << s.size();
      for (unsigned long mask = 0; mask < subsets; ++mask) {
        Insertion a{k};
        Insertion b{l};
        for (std::size_t i = 0; i < s.size(); ++i) ((mask >> i) & 1UL ? a : b).push_back(s[i]);
        if (correlator_genus(a) < 0 || correlator_genus(b) < 0) continue;
        inner += value(a) * value(b);
      }
      r += dfact(2 * k + 1) * dfact(2 * l + 1) * inner / 2;
    }
    return r / dfact(2 * m + 3);
  }

  SolverChoice choice_;
  std::map<Insertion, Rational> memo_;
};

void enumerate(int weight_left, int min_index, Insertion& cur, std::vector<Insertion>& out) {
  if (!cur.empty()) out.push_back(cur);
  for (int d = min_index; 2 * d + 1 <= weight_left; ++d) {
    cur.push_back(d);
    enumerate(weight_left - (2 * d + 1), d, cur, out);
    cur.pop_back();
  }
}

GradedPoly log_from_table(const CorrelatorTable& table, const TruncationSpec& trunc) {
  GradedPoly f(Alphabet::t, trunc);
  for (const auto& [d, v] : table.entries()) {
    Monomial m;
    for (int x : d) {
      if (x >= kSlots) throw PreconditionError("fk_series: index beyond the variable slots");
      ++m.e[static_cast<std::size_t>(x)];
    }
    Integer aut = 1;
    for (auto e : m.e) aut *= factorial(e);
    f.add(m, v / Rational(aut));
  }
  return f;
}

// u^a coefficients are compared only when u <= u_max; weight includes u.
bool in_window(const Monomial& m, Alphabet a, int u_max, int weight_max) {
  return m.u <= u_max && m.weight(a) <= weight_max;
}

void compositions(int k, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (k == 0) out.push_back(cur);
    return;
  }
  for (int first = 1; first <= k - (parts - 1); ++first) {
    cur.push_back(first);
    compositions(k - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

int insertion_weight(const Insertion& d) {
  int w = 0;
  for (int x : d) w += 2 * x + 1;
  return w;
}

int correlator_genus(const Insertion& d) {
  if (d.empty()) return -1;
  const int n = static_cast<int>(d.size());
  for (int x : d) {
    if (x < 0) return -1;
  }
  const int top = std::accumulate(d.begin(), d.end(), 0) - n + 3;
  if (top < 0 || top % 3 != 0) return -1;
  const int g = top / 3;
  return 2 * g - 2 + n > 0 ? g : -1;
}

Rational CorrelatorTable::at(Insertion d) const {
  std::sort(d.begin(), d.end());
  if (insertion_weight(d) > weight_bound_) {
    throw PreconditionError("correlator beyond the table's weight bound " + std::to_string(weight_bound_));
  }
  const auto it = entries_.find(d);
  return it == entries_.end() ? Rational(0) : it->second;
}

CorrelatorTable solve_fk(int weight_bound, SolverChoice choice) {
  if (weight_bound < 3) throw PreconditionError("solve_fk: weight bound must be >= 3");
  std::vector<Insertion> all;
  Insertion cur;
  enumerate(weight_bound, 0, cur, all);
  Solver solver(choice);
  std::map<Insertion, Rational> entries;
  for (const auto& d : all) {
    if (correlator_genus(d) < 0) continue;
    entries.emplace(d, solver.value(d));
  }
  return CorrelatorTable(weight_bound, std::move(entries));
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::FK_t: return "FK_t";
    case Provenance::FK_q: return "FK_q";
    case Provenance::FH_t: return "FH_t";
    case Provenance::FH_q: return "FH_q";
  }
  return "?";
}

TauSeries fk_series(const CorrelatorTable& table, Alphabet a, const TruncationSpec& trunc) {
  if (table.weight_bound() < trunc.weight_max) {
    throw PreconditionError("fk_series: table weight bound " + std::to_string(table.weight_bound()) +
                            " below the truncation weight " + std::to_string(trunc.weight_max));
  }
  GradedPoly f = log_from_table(table, trunc);
  if (a == Alphabet::q) {
    f = substitute(f, odd_substitution((trunc.weight_max - 1) / 2, trunc), trunc);
    return {f, f.exp(), Provenance::FK_q};
  }
  return {f, f.exp(), Provenance::FK_t};
}

HodgeSeries build_fh(const CorrelatorTable& table, const TruncationSpec& trunc, Kernel k) {
  const TauSeries fk = fk_series(table, Alphabet::t, trunc);
  const GradedPoly exp_t = exp_apply(build_W(trunc), fk.exp_part, k);
  const GradedPoly exp_q = substitute(exp_t, phi_substitution((trunc.weight_max - 1) / 2, trunc), trunc);
  return {{exp_t.log(), exp_t, Provenance::FH_t}, {exp_q.log(), exp_q, Provenance::FH_q}};
}

std::vector<Rational> solve_l_from_btilde(int count) {
  if (count < 0) throw PreconditionError("solve_l_from_btilde: count must be >= 0");
  std::vector<Rational> l;
  for (int k = 1; k <= count; ++k) {
    Rational rest = 0;
    Rational fact = 1;
    for (int n = 2; n <= k; ++n) {
      fact *= n;
      std::vector<std::vector<int>> parts;
      std::vector<int> cur;
      compositions(k, n, cur, parts);
      for (const auto& ms : parts) {
        Rational prod = l[static_cast<std::size_t>(ms[0] - 1)];
        int partial = ms[0];
        for (std::size_t j = 1; j < ms.size(); ++j) {
          prod *= l[static_cast<std::size_t>(ms[j] - 1)] * (3 + 2 * partial);
          partial += ms[j];
        }
        rest += prod / fact;
      }
    }
    l.push_back(b_coefficient(2 * k + 1) / (2 * k + 3) - rest);
  }
  return l;
}

std::vector<Rational> l_from_theta(int count) {
  if (count < 0) throw PreconditionError("l_from_theta: count must be >= 0");
  if (count == 0) return {};
  const DerivationCoeffs d = solve_derivation_coeffs(series_theta(2 * count + 1), Direction::lowering);
  std::vector<Rational> l;
  for (int m = 1; m <= count; ++m) {
    if (!is_zero(d.at(2 * m - 1))) throw ConsistencyError("theta has an odd lowering coefficient");
    l.push_back(-d.at(2 * m));
  }
  return l;
}

std::vector<Rational> e_sequence(int count) {
  if (count < 0) throw PreconditionError("e_sequence: count must be >= 0");
  if (count == 0) return {};
  return e_coefficients(count).coeffs;
}

void Report::absorb(const Report& other) {
  checked += other.checked;
  mismatches.insert(mismatches.end(), other.mismatches.begin(), other.mismatches.end());
}

long window_size(Alphabet a, int u_max, int weight_max) {
  if (weight_max < 0) return 0;
  std::vector<long> ways(static_cast<std::size_t>(weight_max) + 1, 0);
  ways[0] = 1;
  for (int i = 0; variable_weight(a, i) <= weight_max; ++i) {
    const int w = variable_weight(a, i);
    if (a == Alphabet::q && i == 0) continue;
    for (int x = w; x <= weight_max; ++x) ways[static_cast<std::size_t>(x)] += ways[static_cast<std::size_t>(x - w)];
  }
  long total = 0;
  for (int u = 0; u <= u_max && u <= weight_max; ++u) {
    for (int x = 0; x <= weight_max - u; ++x) total += ways[static_cast<std::size_t>(x)];
  }
  return total;
}

Report compare_window(std::string name, std::string label, const GradedPoly& lhs, const GradedPoly& rhs, int u_max,
                      int weight_max) {
  if (lhs.alphabet() != rhs.alphabet()) throw PreconditionError("compare_window: alphabet mismatch");
  Report r;
  r.name = std::move(name);
  r.alphabet = lhs.alphabet();
  r.u_max = u_max;
  r.weight_max = weight_max;
  r.checked = window_size(lhs.alphabet(), u_max, weight_max);
  std::set<Monomial> support;
  for (const auto& [m, c] : lhs.terms()) {
    if (in_window(m, lhs.alphabet(), u_max, weight_max)) support.insert(m);
  }
  for (const auto& [m, c] : rhs.terms()) {
    if (in_window(m, rhs.alphabet(), u_max, weight_max)) support.insert(m);
  }
  for (const auto& m : support) {
    Rational a = lhs.coeff(m);
    Rational b = rhs.coeff(m);
    if (a != b) r.mismatches.push_back({label, m, std::move(a), std::move(b), format_monomial(m, lhs.alphabet())});
  }
  return r;
}

TheoremSides theorem_sides(int u_cmp, int weight_cmp, int margin_extra, Kernel k) {
  if (u_cmp < 1 || weight_cmp < 1) throw PreconditionError("theorem_sides: window bounds must be positive");
  const TruncationSpec trunc = margin_truncation(u_cmp, weight_cmp, margin_extra);
  const CorrelatorTable table = solve_fk(trunc.weight_max);
  const HodgeSeries fh = build_fh(table, trunc, k);
  const GradedPoly fk = fk_series(table, Alphabet::q, trunc).exp_part;

  const GradedPoly via_p = exp_apply(build_P(trunc), fk, k);
  const DiffOperator sum_a = u_weighted_sum(indexed(a_coefficients(u_cmp).coeffs), trunc);
  const DiffOperator sum_e = u_weighted_sum(indexed(e_sequence(u_cmp)), trunc);
  std::map<int, Rational> minus_l;
  const std::vector<Rational> l = solve_l_from_btilde(u_cmp / 2);
  for (std::size_t m = 0; m < l.size(); ++m) minus_l.emplace(2 * (static_cast<int>(m) + 1), -l[m]);
  const DiffOperator sum_l = u_weighted_sum(minus_l, trunc);

  TheoremSides s{trunc, fh.q.exp_part, fk, exp_apply(sum_a, via_p, k), exp_apply(sum_e, fk, k), via_p,
                 GradedPoly(Alphabet::q, trunc)};
  s.via_l = sum_l.is_zero() ? fk : exp_apply(sum_l, fk, k);
  return s;
}

Report verify_theorem1(const TheoremSides& s, int u_cmp, int weight_cmp) {
  return compare_window("thm1", "exp(F_H) vs exp(aL) exp(P) exp(F_K)", s.hodge, s.via_a, u_cmp, weight_cmp);
}

Report verify_corollary2(const TheoremSides& s, int u_cmp, int weight_cmp) {
  Report r = compare_window("cor2", "exp(F_H) vs exp(eL) exp(F_K)", s.hodge, s.via_e, u_cmp, weight_cmp);
  r.absorb(compare_window("cor2", "exp(P) exp(F_K) vs exp(-lL) exp(F_K)", s.via_p, s.via_l, u_cmp, weight_cmp));
  return r;
}

Report verify_stability(const TheoremSides& base, const TheoremSides& wider, int u_cmp, int weight_cmp) {
  Report r = compare_window("stability", "exp(F_H)", base.hodge, wider.hodge, u_cmp, weight_cmp);
  r.absorb(compare_window("stability", "exp(aL) exp(P) exp(F_K)", base.via_a, wider.via_a, u_cmp, weight_cmp));
  r.absorb(compare_window("stability", "exp(eL) exp(F_K)", base.via_e, wider.via_e, u_cmp, weight_cmp));
  r.absorb(compare_window("stability", "exp(-lL) exp(F_K)", base.via_l, wider.via_l, u_cmp, weight_cmp));
  return r;
}

Report verify_virasoro(int weight_bound) {
  const CorrelatorTable table = solve_fk(weight_bound);
  const TruncationSpec trunc{0, weight_bound, weight_bound};
  const GradedPoly exp_t = fk_series(table, Alphabet::t, trunc).exp_part;
  const GradedPoly exp_q = fk_series(table, Alphabet::q, trunc).exp_part;
  Report r;
  r.name = "virasoro";
  r.alphabet = Alphabet::t;
  r.weight_max = weight_bound;
  for (int m = -1; m <= 3; ++m) {
    const int window = weight_bound - (2 * m + 3);
    if (window < 0) continue;
    const GradedPoly res = apply_operator(build_Vhat(m, trunc), exp_t);
    r.absorb(compare_window("virasoro", "Lhat_" + std::to_string(m), res, GradedPoly(Alphabet::t, trunc), 0, window));
  }
  for (int m = 1; m <= 2; ++m) {
    const int window = weight_bound - (2 * m + 3);
    if (window < 0) continue;
    const GradedPoly res = apply_operator(build_Vtilde(m, trunc), exp_q);
    r.absorb(
        compare_window("virasoro", "Vtilde_" + std::to_string(2 * m), res, GradedPoly(Alphabet::q, trunc), 0, window));
  }
  return r;
}

}  // namespace taulink
