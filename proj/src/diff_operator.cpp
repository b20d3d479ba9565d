#include "taulink/diff_operator.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>
#include <vector>

namespace taulink {
namespace {

// n (n-1) ... (n-k+1)
Integer falling(int n, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

Integer binom(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

bool var_in_range(const Monomial& m, Alphabet a, const TruncationSpec& trunc) {
  for (int i = 0; i < kSlots; ++i) {
    if (m.e[static_cast<std::size_t>(i)] == 0) continue;
    if (i > trunc.index_max || variable_weight(a, i) > trunc.weight_max) return false;
    if (a == Alphabet::q && i == 0) return false;
  }
  return true;
}

struct FlatTerm {
  Monomial mult;
  Monomial deriv;
  Rational coeff;
  int shift;  // weight change
};

std::vector<FlatTerm> flatten(const DiffOperator& d) {
  std::vector<FlatTerm> out;
  out.reserve(d.size());
  for (const auto& [k, c] : d.terms()) {
    out.push_back({k.mult, k.deriv, c, k.mult.weight(d.alphabet()) - k.deriv.weight(d.alphabet())});
  }
  return out;
}

// Adds term * (every term of p) into acc.
void act(const FlatTerm& t, const std::vector<std::pair<Monomial, Rational>>& p, const std::vector<int>& weights,
         Alphabet a, const TruncationSpec& trunc, GradedPoly::Terms& acc) {
  for (std::size_t n = 0; n < p.size(); ++n) {
    const Monomial& m = p[n].first;
    if (weights[n] + t.shift > trunc.weight_max || m.u + t.mult.u > trunc.u_max) continue;
    if (!t.deriv.divides(m)) continue;
    Monomial out = m;
    Integer f = 1;
    for (std::size_t i = 0; i < m.e.size(); ++i) {
      const int k = t.deriv.e[i];
      if (k == 0) continue;
      f *= falling(m.e[i], k);
      out.e[i] = static_cast<std::uint8_t>(m.e[i] - k);
    }
    out = out * t.mult;
    if (!trunc.admits(out, a)) continue;
    Rational c = p[n].second * t.coeff;
    c *= f;
    auto [it, inserted] = acc.try_emplace(out, c);
    if (!inserted) it->second += c;
  }
}

void check_apply(const DiffOperator& d, const GradedPoly& p) {
  if (d.alphabet() != p.alphabet()) throw PreconditionError("apply_operator: alphabet mismatch");
}

std::vector<int> poly_weights(const std::vector<std::pair<Monomial, Rational>>& p, Alphabet a) {
  std::vector<int> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = p[i].first.weight(a);
  return w;
}

GradedPoly collect(Alphabet a, const TruncationSpec& trunc, const std::vector<GradedPoly::Terms>& parts) {
  GradedPoly out(a, trunc);
  for (const auto& part : parts) {
    for (const auto& [m, c] : part) out.add(m, c);
  }
  return out;
}

}  // namespace

Monomial index_monomial(std::initializer_list<int> indices, int u_pow) {
  Monomial m;
  m.u = static_cast<std::uint8_t>(u_pow);
  for (int i : indices) m = m * Monomial::var(i);
  return m;
}

void DiffOperator::add_term(const Rational& c, const Monomial& mult, const Monomial& deriv) {
  if (taulink::is_zero(c)) return;
  Monomial d = deriv;
  d.u = 0;
  auto [it, inserted] = terms_.try_emplace(OpKey{mult, d}, c);
  if (!inserted) {
    it->second += c;
    if (taulink::is_zero(it->second)) terms_.erase(it);
  }
}

void DiffOperator::add_term(const Rational& c, int u_pow, std::initializer_list<int> mult,
                            std::initializer_list<int> deriv) {
  add_term(c, index_monomial(mult, u_pow), index_monomial(deriv));
}

DiffOperator DiffOperator::scaled(const Rational& c, int u_pow) const {
  DiffOperator out(alphabet_);
  if (taulink::is_zero(c)) return out;
  Monomial shift;
  shift.u = static_cast<std::uint8_t>(u_pow);
  for (const auto& [k, v] : terms_) out.terms_.emplace(OpKey{k.mult * shift, k.deriv}, v * c);
  return out;
}

DiffOperator DiffOperator::pruned(const TruncationSpec& trunc) const {
  DiffOperator out(alphabet_);
  for (const auto& [k, v] : terms_) {
    if (k.mult.u > trunc.u_max) continue;
    if (!var_in_range(k.mult, alphabet_, trunc) || !var_in_range(k.deriv, alphabet_, trunc)) continue;
    out.terms_.emplace(k, v);
  }
  return out;
}

DiffOperator DiffOperator::truncated_u(int u_max) const {
  DiffOperator out(alphabet_);
  for (const auto& [k, v] : terms_) {
    if (k.mult.u <= u_max) out.terms_.emplace(k, v);
  }
  return out;
}

void DiffOperator::check_compatible(const DiffOperator& rhs) const {
  if (alphabet_ != rhs.alphabet_) throw PreconditionError("operators over different alphabets");
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& rhs) {
  check_compatible(rhs);
  for (const auto& [k, v] : rhs.terms_) add_term(v, k.mult, k.deriv);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& rhs) {
  check_compatible(rhs);
  for (const auto& [k, v] : rhs.terms_) add_term(-v, k.mult, k.deriv);
  return *this;
}

// (x^a d^b)(x^c d^e) = sum_k prod_i C(b_i,k_i) c_i!/(c_i-k_i)! x^{a+c-k} d^{b-k+e}
DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  a.check_compatible(b);
  DiffOperator out(a.alphabet_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      std::vector<int> slots;
      for (int i = 0; i < kSlots; ++i) {
        const auto s = static_cast<std::size_t>(i);
        if (ka.deriv.e[s] > 0 && kb.mult.e[s] > 0) slots.push_back(i);
      }
      std::vector<int> kappa(slots.size(), 0);
      while (true) {
        Rational c = ca * cb;
        Monomial mult = ka.mult * kb.mult;
        Monomial deriv = ka.deriv * kb.deriv;
        for (std::size_t n = 0; n < slots.size(); ++n) {
          const auto s = static_cast<std::size_t>(slots[n]);
          const int k = kappa[n];
          c *= binom(ka.deriv.e[s], k) * falling(kb.mult.e[s], k);
          mult.e[s] = static_cast<std::uint8_t>(mult.e[s] - k);
          deriv.e[s] = static_cast<std::uint8_t>(deriv.e[s] - k);
        }
        out.add_term(c, mult, deriv);
        std::size_t n = 0;
        for (; n < slots.size(); ++n) {
          const auto s = static_cast<std::size_t>(slots[n]);
          if (kappa[n] < std::min(ka.deriv.e[s], kb.mult.e[s])) {
            ++kappa[n];
            break;
          }
          kappa[n] = 0;
        }
        if (n == slots.size()) break;
      }
    }
  }
  return out;
}

int DiffOperator::max_order() const {
  int r = -1;
  for (const auto& [k, v] : terms_) r = std::max(r, k.deriv.degree());
  return r;
}

int DiffOperator::min_u_pow() const {
  int r = -1;
  for (const auto& [k, v] : terms_) r = r < 0 ? k.mult.u : std::min<int>(r, k.mult.u);
  return r;
}

std::set<int> DiffOperator::term_weights() const {
  std::set<int> w;
  for (const auto& [k, v] : terms_) w.insert(k.mult.weight(alphabet_) - k.deriv.weight(alphabet_));
  return w;
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) { return a * b - b * a; }

GradedPoly apply_operator_serial(const DiffOperator& d, const GradedPoly& p) {
  check_apply(d, p);
  const std::vector<FlatTerm> terms = flatten(d);
  const std::vector<std::pair<Monomial, Rational>> poly(p.terms().begin(), p.terms().end());
  const std::vector<int> weights = poly_weights(poly, p.alphabet());
  std::vector<GradedPoly::Terms> acc(1);
  for (const auto& t : terms) act(t, poly, weights, p.alphabet(), p.trunc(), acc[0]);
  return collect(p.alphabet(), p.trunc(), acc);
}

GradedPoly apply_operator_parallel(const DiffOperator& d, const GradedPoly& p) {
  check_apply(d, p);
  const std::vector<FlatTerm> terms = flatten(d);
  const std::vector<std::pair<Monomial, Rational>> poly(p.terms().begin(), p.terms().end());
  const std::vector<int> weights = poly_weights(poly, p.alphabet());
  const long n = static_cast<long>(terms.size());
  std::vector<GradedPoly::Terms> acc(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    GradedPoly::Terms& local = acc[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) act(terms[static_cast<std::size_t>(i)], poly, weights, p.alphabet(), p.trunc(), local);
  }
  // Exact sums, so the merge order cannot change the result.
  return collect(p.alphabet(), p.trunc(), acc);
}

GradedPoly apply_operator(const DiffOperator& d, const GradedPoly& p, Kernel k) {
  return k == Kernel::serial ? apply_operator_serial(d, p) : apply_operator_parallel(d, p);
}

GradedPoly exp_apply(const DiffOperator& d, const GradedPoly& p, Kernel k) {
  for (const auto& [key, v] : d.terms()) {
    if (key.mult.u == 0) throw PreconditionError("exp_apply: operator term without a positive u-power");
  }
  GradedPoly out = p;
  GradedPoly term = p;
  for (int n = 1; n <= p.trunc().u_max && !term.is_zero(); ++n) {
    term = apply_operator(d, term, k) * make_rational(1, n);
    out += term;
  }
  return out;
}

std::string format_operator(const DiffOperator& d) {
  if (d.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : d.terms()) {
    if (!first) out << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) out << '-';
    first = false;
    std::string factors;
    if (k.mult != Monomial{}) factors = format_monomial(k.mult, d.alphabet());
    for (int i = 0; i < kSlots; ++i) {
      const int e = k.deriv.e[static_cast<std::size_t>(i)];
      for (int r = 0; r < e; ++r) factors += (factors.empty() ? "d" : "*d") + to_string(d.alphabet()) + std::to_string(i);
    }
    const std::string mag = to_string(abs(c));
    if (factors.empty()) out << mag;
    else if (mag == "1") out << factors;
    else out << mag << '*' << factors;
  }
  return out.str();
}

}  // namespace taulink
