#include "taulink/operators.hpp"

#include "taulink/bivariate.hpp"
#include "taulink/named_series.hpp"
#include "taulink/sequences.hpp"

#include <algorithm>

namespace taulink {
namespace {

constexpr Alphabet kQ = Alphabet::q;
constexpr Alphabet kT = Alphabet::t;

// Largest t-index whose weight fits.
int t_index_limit(const TruncationSpec& trunc) { return std::min(trunc.index_max, (trunc.weight_max - 1) / 2); }
int q_index_limit(const TruncationSpec& trunc) { return std::min(trunc.index_max, trunc.weight_max); }

Rational dfact(int n) { return Rational(double_factorial(n)); }

// sum_m ((-1)^{m-1}/m!) ad_x^{m-1} y, stopped once the nested bracket leaves
// the truncation.
DiffOperator nested_series(const DiffOperator& x, const DiffOperator& y, const TruncationSpec& trunc) {
  DiffOperator sum(y.alphabet());
  DiffOperator term = y.pruned(trunc);
  Rational fact = 1;
  for (int m = 1; !term.is_zero(); ++m) {
    fact *= m;
    sum += term.scaled((m % 2 == 1 ? Rational(1) : Rational(-1)) / fact);
    term = commutator(x, term).pruned(trunc);
  }
  return sum;
}

void require_alphabet(const DiffOperator& d, Alphabet a, const char* what) {
  if (d.alphabet() != a) throw PreconditionError(std::string(what) + ": wrong alphabet");
}

}  // namespace

DiffOperator build_Xm(int m, const TruncationSpec& trunc) {
  DiffOperator out(kQ);
  const int top = q_index_limit(trunc);
  for (int k = 1; k <= top; ++k) {
    const int target = k + m;
    if (target < 1 || target > top) continue;
    out.add_term(target, 0, {k}, {target});
  }
  return out.pruned(trunc);
}

DiffOperator build_Ym(int m, const TruncationSpec& trunc) {
  if (m < 1) throw PreconditionError("build_Ym: m must be >= 1");
  DiffOperator out(kQ);
  for (int a = 1; 2 * a <= m; ++a) {
    const int b = m - a;
    // Ordered pairs (a,b), (b,a) collapse to one normal-ordered term.
    out.add_term(a == b ? make_rational(a * a, 2) : Rational(a * b), 0, {}, {a, b});
  }
  return out.pruned(trunc);
}

DiffOperator build_Lm(int m, const TruncationSpec& trunc) {
  if (m < 1) throw PreconditionError("build_Lm: m must be >= 1");
  return build_Xm(m, trunc) + build_Ym(m, trunc);
}

std::map<int, Rational> indexed(const std::vector<Rational>& c) {
  std::map<int, Rational> out;
  for (std::size_t i = 0; i < c.size(); ++i) out.emplace(static_cast<int>(i) + 1, c[i]);
  return out;
}

DiffOperator u_weighted_sum(const std::map<int, Rational>& c, const TruncationSpec& trunc, VirasoroPart part) {
  DiffOperator out(kQ);
  for (const auto& [m, v] : c) {
    if (m < 1) throw PreconditionError("u_weighted_sum: indices must be >= 1");
    if (m > trunc.u_max) continue;
    DiffOperator op = part == VirasoroPart::first_order    ? build_Xm(m, trunc)
                      : part == VirasoroPart::second_order ? build_Ym(m, trunc)
                                                           : build_Lm(m, trunc);
    out += op.scaled(v, m);
  }
  return out;
}

DiffOperator build_Bt(const TruncationSpec& trunc) {
  DiffOperator out(kT);
  const int top = t_index_limit(trunc);
  for (int k = 1; 2 * (2 * k - 1) <= trunc.u_max; ++k) {
    const Rational bt = bernoulli_tilde(k);
    for (int i = 0; i + 2 * k - 1 <= top; ++i) out.add_term(bt, 2 * (2 * k - 1), {i}, {i + 2 * k - 1});
  }
  return out.pruned(trunc);
}

DiffOperator build_P0(const TruncationSpec& trunc) {
  DiffOperator out(kT);
  for (int k = 1; 2 * (2 * k - 1) <= trunc.u_max; ++k) out.add_term(-bernoulli_tilde(k), 2 * (2 * k - 1), {}, {2 * k});
  return out.pruned(trunc);
}

DiffOperator build_Q0W(const TruncationSpec& trunc) {
  DiffOperator out(kT);
  for (int k = 1; 2 * (2 * k - 1) <= trunc.u_max; ++k) {
    const Rational bt = bernoulli_tilde(k);
    for (int i = 0; i <= 2 * k - 2; ++i) {
      const int j = 2 * k - 2 - i;
      out.add_term(i % 2 == 0 ? Rational(-bt) : bt, 2 * (2 * k - 1), {}, {i, j});
    }
  }
  return out.pruned(trunc);
}

DiffOperator build_W(const TruncationSpec& trunc) {
  return build_Bt(trunc) + build_Q0W(trunc).scaled(make_rational(1, 2)) + build_P0(trunc);
}

DiffOperator build_Pt(const TruncationSpec& trunc) {
  DiffOperator out(kT);
  for (int i = 1; 2 * i <= trunc.u_max; ++i) out.add_term(-C_coefficient(i), 2 * i, {}, {i + 1});
  return out.pruned(trunc);
}

DiffOperator build_Pt_nested(const TruncationSpec& trunc) {
  return nested_series(build_Bt(trunc), build_P0(trunc), trunc);
}

DiffOperator build_P(const TruncationSpec& trunc) {
  DiffOperator out(kQ);
  for (int k = 1; 2 * k <= trunc.u_max; ++k) out.add_term(-b_coefficient(2 * k + 1), 2 * k, {}, {2 * k + 3});
  return out.pruned(trunc);
}

DiffOperator build_QtW(const TruncationSpec& trunc) {
  DiffOperator out(kT);
  if (trunc.u_max < 2) return out;
  const int max_sum = (trunc.u_max - 2) / 2;
  const SymBivariate qb = series_QB(max_sum);
  for (const auto& [ij, v] : qb.coeffs) {
    const auto [i, j] = ij;
    out.add_term(i == j ? v : Rational(2 * v), 2 * (i + j) + 2, {}, {i, j});
  }
  return out.pruned(trunc);
}

DiffOperator build_QtW_nested(const TruncationSpec& trunc) {
  return nested_series(build_Bt(trunc), build_Q0W(trunc), trunc);
}

DiffOperator build_Qplus(const TruncationSpec& trunc) {
  DiffOperator out(kQ);
  if (trunc.u_max < 2) return out;
  const SymBivariate q = series_Q(std::max(2, trunc.u_max));
  for (const auto& [ij, v] : q.coeffs) {
    const auto [i, j] = ij;
    if (i + j > trunc.u_max) continue;
    const Rational c = v * (i * j);
    out.add_term(i == j ? c : Rational(2 * c), i + j, {}, {i, j});
  }
  return out.pruned(trunc);
}

DiffOperator build_Qplus_nested(const TruncationSpec& trunc) {
  const std::map<int, Rational> a = indexed(a_coefficients(std::max(1, trunc.u_max)).coeffs);
  const DiffOperator x = u_weighted_sum(a, trunc, VirasoroPart::first_order);
  const DiffOperator y = u_weighted_sum(a, trunc, VirasoroPart::second_order);
  return nested_series(x, y, trunc).scaled(2);
}

DiffOperator build_Vhat(int m, const TruncationSpec& trunc) {
  if (m < -1) throw PreconditionError("build_Vhat: m must be >= -1");
  DiffOperator out(kT);
  const int top = t_index_limit(trunc);
  for (int k = std::max(m, 0); k <= top; ++k) {
    if (k - m > top) continue;
    out.add_term(dfact(2 * k + 1) / dfact(2 * k - 2 * m - 1), 0, {k - m}, {k});
  }
  for (int k = 0; k <= m - 1; ++k) {
    const int l = m - 1 - k;
    if (k > l) break;
    const Rational c = dfact(2 * k + 1) * dfact(2 * l + 1);
    out.add_term(k == l ? Rational(c / 2) : c, 0, {}, {k, l});
  }
  out.add_term(-dfact(2 * m + 3), 0, {}, {m + 1});
  if (m == -1) out.add_term(make_rational(1, 2), 0, {0, 0}, {});
  if (m == 0) out.add_term(make_rational(1, 8), 0, {}, {});
  return out.pruned(trunc);
}

DiffOperator build_Vtilde(int m, const TruncationSpec& trunc) {
  if (m < 1) throw PreconditionError("build_Vtilde: m must be >= 1");
  DiffOperator out = build_Lm(2 * m, trunc);
  out.add_term(-(2 * m + 3), 0, {}, {2 * m + 3});
  return out.pruned(trunc);
}

DiffOperator convert_t_to_q(const DiffOperator& d) {
  require_alphabet(d, kT, "convert_t_to_q");
  DiffOperator out(kQ);
  for (const auto& [key, c] : d.terms()) {
    Monomial mult;
    mult.u = key.mult.u;
    Monomial deriv;
    Rational coeff = c;
    for (int k = 0; k < kSlots; ++k) {
      const auto s = static_cast<std::size_t>(k);
      const int em = key.mult.e[s];
      const int ed = key.deriv.e[s];
      if (em == 0 && ed == 0) continue;
      if (2 * k + 1 >= kSlots) throw PreconditionError("convert_t_to_q: index out of range");
      const Rational f = dfact(2 * k - 1);
      const auto target = static_cast<std::size_t>(2 * k + 1);
      mult.e[target] = static_cast<std::uint8_t>(em);
      deriv.e[target] = static_cast<std::uint8_t>(ed);
      coeff *= pow(f, static_cast<unsigned>(em));
      coeff /= pow(f, static_cast<unsigned>(ed));
    }
    out.add_term(coeff, mult, deriv);
  }
  return out;
}

DiffOperator odd_part(const DiffOperator& d) {
  DiffOperator out(d.alphabet());
  for (const auto& [key, c] : d.terms()) {
    bool odd = true;
    for (int i = 0; i < kSlots && odd; i += 2) {
      const auto s = static_cast<std::size_t>(i);
      odd = key.mult.e[s] == 0 && key.deriv.e[s] == 0;
    }
    if (odd) out.add_term(c, key.mult, key.deriv);
  }
  return out;
}

DiffOperator xi(const DiffOperator& d) {
  require_alphabet(d, kQ, "xi");
  DiffOperator out(kQ);
  for (const auto& [key, c] : d.terms()) {
    Monomial bare = key.mult;
    bare.u = 0;
    std::vector<int> vars;
    for (int i = 0; i < kSlots; ++i) {
      for (int r = 0; r < bare.e[static_cast<std::size_t>(i)]; ++r) vars.push_back(i);
    }
    if (key.deriv.degree() == 1 && vars.size() == 1) {
      const int dd = key.deriv.max_index();
      const int cc = vars[0];
      if (cc <= dd) throw PreconditionError("xi: first-order term must lower the index");
      out.add_term(-c * make_rational(cc, dd), index_monomial({dd}, key.mult.u), index_monomial({cc}));
    } else if (key.deriv.degree() == 0 && vars.size() == 2) {
      out.add_term(-c * (vars[0] * vars[1]), index_monomial({}, key.mult.u), index_monomial({vars[0], vars[1]}));
    } else {
      throw PreconditionError("xi: term outside the domain");
    }
  }
  return out;
}

SubstitutionMap::SubstitutionMap(Alphabet from, std::map<int, GradedPoly> images)
    : from_(from), images_(std::move(images)) {
  for (const auto& [idx, img] : images_) {
    const int w = variable_weight(from_, idx);
    for (const auto& [m, c] : img.terms()) {
      if (m.weight(img.alphabet()) != w) {
        throw PreconditionError("substitution image of " + to_string(from_) + std::to_string(idx) +
                                " is not homogeneous of weight " + std::to_string(w));
      }
    }
  }
  if (!images_.empty()) {
    const Alphabet target = images_.begin()->second.alphabet();
    for (const auto& [idx, img] : images_) {
      if (img.alphabet() != target) throw PreconditionError("substitution images over mixed alphabets");
    }
  }
}

GradedPoly substitute(const GradedPoly& p, const SubstitutionMap& s, const TruncationSpec& trunc) {
  if (p.alphabet() != s.from()) throw PreconditionError("substitute: alphabet mismatch");
  const Alphabet target = s.images().empty() ? p.alphabet() : s.images().begin()->second.alphabet();
  std::map<std::pair<int, int>, GradedPoly> powers;
  auto power = [&](int idx, int e) -> const GradedPoly& {
    auto it = powers.find({idx, e});
    if (it != powers.end()) return it->second;
    const auto img = s.images().find(idx);
    if (img == s.images().end()) {
      throw PreconditionError("substitute: no image for " + to_string(s.from()) + std::to_string(idx));
    }
    const GradedPoly base = img->second.with_trunc(trunc);
    GradedPoly r = base;
    for (int n = 2; n <= e; ++n) r = r * base;
    return powers.emplace(std::make_pair(idx, e), std::move(r)).first->second;
  };
  GradedPoly out(target, trunc);
  for (const auto& [m, c] : p.terms()) {
    Monomial um;
    um.u = m.u;
    GradedPoly term(target, trunc);
    term.add(um, c);
    for (int i = 0; i < kSlots && !term.is_zero(); ++i) {
      const int e = m.e[static_cast<std::size_t>(i)];
      if (e > 0) term = term * power(i, e);
    }
    out += term;
  }
  return out;
}

std::vector<GradedPoly> phi_polynomials(int k_max, const TruncationSpec& trunc) {
  if (k_max < 0) throw PreconditionError("phi_polynomials: k_max must be >= 0");
  // (u-power, z-power) -> coefficient
  std::map<std::pair<int, int>, Integer> phi{{{0, 1}, Integer(1)}};
  std::vector<GradedPoly> out;
  for (int k = 0; k <= k_max; ++k) {
    GradedPoly p(kQ, trunc);
    for (const auto& [uz, c] : phi) {
      Monomial m = Monomial::var(uz.second);
      m.u = static_cast<std::uint8_t>(std::min(uz.first, 255));
      if (uz.first <= trunc.u_max) p.add(m, Rational(c));
    }
    out.push_back(std::move(p));
    // (u^2 z + 2 u z^2 + z^3) d/dz
    std::map<std::pair<int, int>, Integer> next;
    for (const auto& [uz, c] : phi) {
      const auto [a, j] = uz;
      next[{a + 2, j}] += c * j;
      next[{a + 1, j + 1}] += 2 * c * j;
      next[{a, j + 2}] += c * j;
    }
    phi = std::move(next);
  }
  return out;
}

SubstitutionMap phi_substitution(int k_max, const TruncationSpec& trunc) {
  std::vector<GradedPoly> phis = phi_polynomials(k_max, trunc);
  std::map<int, GradedPoly> images;
  for (int k = 0; k <= k_max; ++k) images.emplace(k, std::move(phis[static_cast<std::size_t>(k)]));
  return SubstitutionMap(kT, std::move(images));
}

SubstitutionMap odd_substitution(int k_max, const TruncationSpec& trunc) {
  std::map<int, GradedPoly> images;
  for (int k = 0; k <= k_max; ++k) images.emplace(k, GradedPoly::variable(kQ, trunc, 2 * k + 1, dfact(2 * k - 1)));
  return SubstitutionMap(kT, std::move(images));
}

}  // namespace taulink
