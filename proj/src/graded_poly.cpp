#include "taulink/graded_poly.hpp"

#include <sstream>

namespace taulink {

std::string to_string(Alphabet a) { return a == Alphabet::q ? "q" : "t"; }

int Monomial::degree() const {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

int Monomial::max_index() const {
  for (int i = kSlots - 1; i >= 0; --i) {
    if (e[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

int Monomial::weight(Alphabet a) const {
  int w = u;
  for (int i = 0; i < kSlots; ++i) w += e[static_cast<std::size_t>(i)] * variable_weight(a, i);
  return w;
}

bool Monomial::divides(const Monomial& m) const {
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > m.e[i]) return false;
  }
  return true;
}

Monomial Monomial::var(int index, int power) {
  if (index < 0 || index >= kSlots) throw PreconditionError("variable index " + std::to_string(index) + " out of range");
  Monomial m;
  m.e[static_cast<std::size_t>(index)] = static_cast<std::uint8_t>(power);
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.u = static_cast<std::uint8_t>(a.u + b.u);
  for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] = static_cast<std::uint8_t>(a.e[i] + b.e[i]);
  return m;
}

bool TruncationSpec::admits(const Monomial& m, Alphabet a) const {
  return m.u <= u_max && m.max_index() <= index_max && m.weight(a) <= weight_max;
}

TruncationSpec margin_truncation(int u_cmp, int weight_cmp, int margin_extra) {
  if (u_cmp < 0 || weight_cmp < 0 || margin_extra < 0) throw PreconditionError("negative truncation bound");
  const int w = weight_cmp + 3 * ((u_cmp + 1) / 2) + margin_extra;
  if (w >= kSlots) throw PreconditionError("weight bound " + std::to_string(w) + " exceeds the variable slots");
  return {u_cmp, w, w};
}

GradedPoly GradedPoly::constant(Alphabet a, TruncationSpec trunc, const Rational& c) {
  GradedPoly p(a, trunc);
  p.add(Monomial{}, c);
  return p;
}

GradedPoly GradedPoly::variable(Alphabet a, TruncationSpec trunc, int index, const Rational& c) {
  GradedPoly p(a, trunc);
  p.add(Monomial::var(index), c);
  return p;
}

void GradedPoly::add(const Monomial& m, const Rational& c) {
  if (taulink::is_zero(c) || !trunc_.admits(m, alphabet_)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (taulink::is_zero(it->second)) terms_.erase(it);
  }
}

Rational GradedPoly::coeff(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GradedPoly::check_compatible(const GradedPoly& rhs) const {
  if (alphabet_ != rhs.alphabet_) throw PreconditionError("polynomials over different alphabets");
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [m, c] : rhs.terms_) add(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [m, c] : rhs.terms_) add(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
  if (taulink::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  a.check_compatible(b);
  GradedPoly out(a.alphabet_, a.trunc_);
  const Alphabet al = a.alphabet_;
  for (const auto& [ma, ca] : a.terms_) {
    const int wa = ma.weight(al);
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.u + mb.u > out.trunc_.u_max || wa + mb.weight(al) > out.trunc_.weight_max) continue;
      out.add(ma * mb, ca * cb);
    }
  }
  return out;
}

GradedPoly GradedPoly::exp() const {
  if (terms_.count(Monomial{})) throw PreconditionError("exp: polynomial has a constant term");
  GradedPoly out = constant(alphabet_, trunc_, 1);
  GradedPoly term = out;
  // Every monomial has weight >= 1, so powers beyond weight_max vanish.
  for (int n = 1; n <= trunc_.weight_max && !term.is_zero(); ++n) {
    term = term * *this * make_rational(1, n);
    out += term;
  }
  return out;
}

GradedPoly GradedPoly::log() const {
  if (coeff(Monomial{}) != 1) throw PreconditionError("log: constant term must be 1");
  GradedPoly g = *this;
  g.terms_.erase(Monomial{});
  GradedPoly out(alphabet_, trunc_);
  GradedPoly power = g;
  for (int n = 1; n <= trunc_.weight_max && !power.is_zero(); ++n) {
    out += power * make_rational(n % 2 == 1 ? 1 : -1, n);
    power = power * g;
  }
  return out;
}

GradedPoly GradedPoly::restricted(int u_max, int weight_max) const {
  GradedPoly out(alphabet_, trunc_);
  for (const auto& [m, c] : terms_) {
    if (m.u <= u_max && m.weight(alphabet_) <= weight_max) out.terms_.emplace(m, c);
  }
  return out;
}

GradedPoly GradedPoly::with_trunc(TruncationSpec trunc) const {
  GradedPoly out(alphabet_, trunc);
  for (const auto& [m, c] : terms_) out.add(m, c);
  return out;
}

GradedPoly GradedPoly::u_slice(int power) const {
  GradedPoly out(alphabet_, trunc_);
  for (const auto& [m, c] : terms_) {
    if (m.u != power) continue;
    Monomial k = m;
    k.u = 0;
    out.terms_.emplace(k, c);
  }
  return out;
}

GradedPoly random_poly(Alphabet a, TruncationSpec trunc, std::mt19937_64& rng, int n_terms) {
  GradedPoly p(a, trunc);
  const int first = a == Alphabet::q ? 1 : 0;
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> u_pow(0, trunc.u_max);
  std::uniform_int_distribution<int> n_vars(0, 3);
  for (int t = 0; t < n_terms; ++t) {
    Monomial m;
    m.u = static_cast<std::uint8_t>(u_pow(rng));
    const int vars = n_vars(rng);
    for (int v = 0; v < vars; ++v) {
      const int room = trunc.weight_max - m.weight(a);
      int top = a == Alphabet::q ? room : (room - 1) / 2;
      top = std::min(top, trunc.index_max);
      if (top < first) break;
      std::uniform_int_distribution<int> idx(first, top);
      m = m * Monomial::var(idx(rng));
    }
    int c = 0;
    while (c == 0) c = coeff(rng);
    p.add(m, c);
  }
  return p;
}

std::string format_monomial(const Monomial& m, Alphabet a) {
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << '*';
    first = false;
  };
  if (m.u > 0) {
    sep();
    out << 'u';
    if (m.u > 1) out << '^' << int(m.u);
  }
  for (int i = 0; i < kSlots; ++i) {
    const int e = m.e[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    sep();
    out << to_string(a) << i;
    if (e > 1) out << '^' << e;
  }
  if (first) out << '1';
  return out.str();
}

std::string format_poly(const GradedPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) out << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) out << '-';
    first = false;
    const Rational mag = abs(c);
    const bool unit = mag == 1;
    const bool bare = m == Monomial{};
    if (!unit || bare) out << to_string(mag);
    if (!bare) out << (unit ? "" : "*") << format_monomial(m, p.alphabet());
  }
  return out.str();
}

}  // namespace taulink
