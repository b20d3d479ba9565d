#include "taulink/series.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace taulink {
namespace {

constexpr int kExact = LaurentSeries::kExact;

// Precision arithmetic that keeps kExact absorbing.
int prec_add(int offset, int prec) { return prec >= kExact ? kExact : offset + prec; }
int prec_mul(int factor, int prec) {
  if (prec >= kExact) return kExact;
  const long long p = static_cast<long long>(factor) * prec;
  return p >= kExact ? kExact : static_cast<int>(p);
}

const Rational& zero_rational() {
  static const Rational z = 0;
  return z;
}

}  // namespace

LaurentSeries::LaurentSeries(Expansion e, int lead, int prec, std::vector<Rational> c)
    : expansion_(e), lead_(lead), prec_(prec), c_(std::move(c)) {
  normalize();
}

void LaurentSeries::normalize() {
  if (prec_ < kExact && lead_ + static_cast<int>(c_.size()) > prec_) {
    c_.resize(static_cast<std::size_t>(std::max(0, prec_ - lead_)));
  }
  while (!c_.empty() && taulink::is_zero(c_.back())) c_.pop_back();
  std::size_t skip = 0;
  while (skip < c_.size() && taulink::is_zero(c_[skip])) ++skip;
  if (skip > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(skip));
    lead_ += static_cast<int>(skip);
  }
  if (c_.empty()) lead_ = prec_;
}

LaurentSeries LaurentSeries::from_coefficients(Expansion e, int first_exponent, std::vector<Rational> coeffs) {
  const int n = static_cast<int>(coeffs.size());
  if (n == 0) throw PreconditionError("from_coefficients: empty window");
  if (e == Expansion::at_zero) return LaurentSeries(e, first_exponent, first_exponent + n, std::move(coeffs));
  return LaurentSeries(e, -first_exponent, -first_exponent + n, std::move(coeffs));
}

LaurentSeries LaurentSeries::from_terms(Expansion e, const std::map<int, Rational>& terms, int last_known) {
  const int sign = e == Expansion::at_zero ? 1 : -1;
  const int prec = sign * last_known + 1;
  int lead = prec;
  for (const auto& [z, c] : terms) {
    if (!taulink::is_zero(c)) lead = std::min(lead, sign * z);
  }
  std::vector<Rational> c(static_cast<std::size_t>(prec - lead));
  for (const auto& [z, v] : terms) {
    const int s = sign * z;
    if (s < prec) c[static_cast<std::size_t>(s - lead)] = v;
  }
  return LaurentSeries(e, lead, prec, std::move(c));
}

LaurentSeries LaurentSeries::exact_polynomial(Expansion e, const std::map<int, Rational>& terms) {
  const int sign = e == Expansion::at_zero ? 1 : -1;
  if (terms.empty()) return LaurentSeries(e, kExact, kExact, {});
  int lo = kExact, hi = -kExact;
  for (const auto& [z, c] : terms) {
    lo = std::min(lo, sign * z);
    hi = std::max(hi, sign * z);
  }
  std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [z, v] : terms) c[static_cast<std::size_t>(sign * z - lo)] = v;
  return LaurentSeries(e, lo, kExact, std::move(c));
}

LaurentSeries LaurentSeries::monomial(Expansion e, int exponent, Rational coeff) {
  return exact_polynomial(e, {{exponent, std::move(coeff)}});
}

LaurentSeries LaurentSeries::zero(Expansion e, int last_known) {
  const int prec = (e == Expansion::at_zero ? last_known : -last_known) + 1;
  return LaurentSeries(e, prec, prec, {});
}

int LaurentSeries::last_known() const {
  if (is_exact()) throw PreconditionError("last_known: series is exact");
  return z_of(prec_ - 1);
}

int LaurentSeries::order() const {
  if (is_exact()) return static_cast<int>(c_.size());
  return prec_ - lead_;
}

const Rational& LaurentSeries::sc(int k) const {
  if (k < lead_ || k >= lead_ + static_cast<int>(c_.size())) return zero_rational();
  return c_[static_cast<std::size_t>(k - lead_)];
}

Rational LaurentSeries::coeff(int exponent) const {
  const int k = s_of(exponent);
  if (k >= prec_) {
    throw PreconditionError("coefficient of z^" + std::to_string(exponent) + " is outside the known window");
  }
  return sc(k);
}

std::vector<std::pair<int, Rational>> LaurentSeries::terms() const {
  std::vector<std::pair<int, Rational>> out;
  const int end = is_exact() ? lead_ + static_cast<int>(c_.size()) : prec_;
  for (int k = lead_; k < end; ++k) out.emplace_back(z_of(k), sc(k));
  return out;
}

void LaurentSeries::require_finite(const char* op) const {
  if (is_exact()) {
    throw PreconditionError(std::string(op) + ": exact polynomial needs an explicit truncation first");
  }
}

std::vector<Rational> LaurentSeries::dense(int n) const {
  std::vector<Rational> out(static_cast<std::size_t>(std::max(0, n)));
  for (int i = 0; i < n && i < static_cast<int>(c_.size()); ++i) out[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)];
  return out;
}

LaurentSeries LaurentSeries::truncated(int order) const {
  if (order < 0) throw PreconditionError("truncated: negative order");
  const int base = is_zero() ? (is_exact() ? 0 : lead_) : lead_;
  LaurentSeries out = *this;
  out.prec_ = std::min(prec_, base + order);
  out.normalize();
  return out;
}

LaurentSeries LaurentSeries::known_through(int last) const {
  LaurentSeries out = *this;
  out.prec_ = std::min(prec_, s_of(last) + 1);
  out.normalize();
  return out;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& rhs) {
  if (expansion_ != rhs.expansion_) throw PreconditionError("series with different expansions");
  const int prec = std::min(prec_, rhs.prec_);
  const int lead = std::min(lead_, rhs.lead_);
  int end = lead;
  if (!c_.empty()) end = std::max(end, lead_ + static_cast<int>(c_.size()));
  if (!rhs.c_.empty()) end = std::max(end, rhs.lead_ + static_cast<int>(rhs.c_.size()));
  end = std::min(end, prec);
  std::vector<Rational> c;
  if (end > lead) {
    c.resize(static_cast<std::size_t>(end - lead));
    for (int k = lead; k < end; ++k) c[static_cast<std::size_t>(k - lead)] = sc(k) + rhs.sc(k);
  }
  lead_ = std::min(lead, prec);
  prec_ = prec;
  c_ = std::move(c);
  if (lead > prec) c_.clear();
  normalize();
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& rhs) { return *this += -rhs; }

LaurentSeries& LaurentSeries::operator*=(const LaurentSeries& rhs) {
  if (expansion_ != rhs.expansion_) throw PreconditionError("series with different expansions");
  const int prec = std::min(prec_add(lead_, rhs.prec_), prec_add(rhs.lead_, prec_));
  if (is_zero() || rhs.is_zero()) {
    c_.clear();
    prec_ = prec;
    lead_ = prec;
    return *this;
  }
  const int lead = lead_ + rhs.lead_;
  const int full = static_cast<int>(c_.size() + rhs.c_.size()) - 1;
  const int n = std::min(full, prec - lead);
  std::vector<Rational> c(static_cast<std::size_t>(std::max(0, n)));
  for (int i = 0; i < static_cast<int>(c_.size()) && i < n; ++i) {
    if (taulink::is_zero(c_[static_cast<std::size_t>(i)])) continue;
    for (int j = 0; j < static_cast<int>(rhs.c_.size()) && i + j < n; ++j) {
      c[static_cast<std::size_t>(i + j)] += c_[static_cast<std::size_t>(i)] * rhs.c_[static_cast<std::size_t>(j)];
    }
  }
  lead_ = lead;
  prec_ = prec;
  c_ = std::move(c);
  normalize();
  return *this;
}

LaurentSeries& LaurentSeries::operator*=(const Rational& k) {
  if (taulink::is_zero(k)) {
    c_.clear();
    lead_ = prec_;
    return *this;
  }
  for (auto& c : c_) c *= k;
  return *this;
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  return a.expansion_ == b.expansion_ && a.lead_ == b.lead_ && a.prec_ == b.prec_ && a.c_ == b.c_;
}

bool LaurentSeries::first_nonzero(int& exponent, Rational& value) const {
  if (c_.empty()) return false;
  exponent = z_of(lead_);
  value = c_.front();
  return true;
}

LaurentSeries LaurentSeries::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of a series with no known nonzero term");
  if (is_exact()) {
    if (c_.size() == 1) return LaurentSeries(expansion_, -lead_, kExact, {1 / c_[0]});
    require_finite("inverse");
  }
  const int n = prec_ - lead_;
  std::vector<Rational> u(static_cast<std::size_t>(n));
  const Rational inv0 = 1 / c_[0];
  u[0] = inv0;
  for (int i = 1; i < n; ++i) {
    Rational acc = 0;
    for (int k = 1; k <= i && k < static_cast<int>(c_.size()); ++k) {
      acc += c_[static_cast<std::size_t>(k)] * u[static_cast<std::size_t>(i - k)];
    }
    u[static_cast<std::size_t>(i)] = -inv0 * acc;
  }
  return LaurentSeries(expansion_, -lead_, -lead_ + n, std::move(u));
}

LaurentSeries LaurentSeries::exp() const {
  if (is_zero() && is_exact()) return monomial(expansion_, 0);
  require_finite("exp");
  if (lead_ < 1) throw PreconditionError("exp: series must have no constant or negative-degree terms");
  const int n = prec_;
  std::vector<Rational> g(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = sc(k);
  e[0] = 1;
  for (int i = 1; i < n; ++i) {
    Rational acc = 0;
    for (int k = 1; k <= i; ++k) {
      if (taulink::is_zero(g[static_cast<std::size_t>(k)])) continue;
      acc += k * g[static_cast<std::size_t>(k)] * e[static_cast<std::size_t>(i - k)];
    }
    e[static_cast<std::size_t>(i)] = acc / i;
  }
  return LaurentSeries(expansion_, 0, n, std::move(e));
}

LaurentSeries LaurentSeries::log() const {
  if (lead_ != 0 || c_.empty() || c_[0] != 1) {
    throw PreconditionError("log: series must be 1 + higher-order terms");
  }
  if (is_exact() && c_.size() == 1) return LaurentSeries(expansion_, kExact, kExact, {});
  require_finite("log");
  const int n = prec_;
  std::vector<Rational> a(static_cast<std::size_t>(n)), l(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = sc(k);
  for (int i = 1; i < n; ++i) {
    Rational acc = i * a[static_cast<std::size_t>(i)];
    for (int k = 1; k < i; ++k) acc -= k * l[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(i - k)];
    l[static_cast<std::size_t>(i)] = acc / i;
  }
  return LaurentSeries(expansion_, 0, n, std::move(l));
}

LaurentSeries LaurentSeries::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  LaurentSeries result = monomial(expansion_, 0);
  LaurentSeries base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

LaurentSeries LaurentSeries::pow(const Rational& alpha) const {
  if (alpha.get_den() == 1) {
    if (!alpha.get_num().fits_sint_p()) throw PreconditionError("pow: exponent too large");
    return pow(static_cast<int>(alpha.get_num().get_si()));
  }
  if (is_zero() || c_[0] != 1) throw PreconditionError("pow: fractional power needs leading coefficient 1");
  const Rational lead_alpha = alpha * lead_;
  if (lead_alpha.get_den() != 1) throw PreconditionError("pow: fractional power of the leading monomial");
  if (is_exact() && c_.size() == 1) {
    return LaurentSeries(expansion_, static_cast<int>(lead_alpha.get_num().get_si()), kExact, {1});
  }
  require_finite("pow");
  const int n = prec_ - lead_;
  const std::vector<Rational> u = dense(n);
  std::vector<Rational> p(static_cast<std::size_t>(n));
  p[0] = 1;
  const Rational alpha1 = alpha + 1;
  for (int i = 1; i < n; ++i) {
    Rational acc = 0;
    for (int k = 1; k <= i; ++k) {
      if (taulink::is_zero(u[static_cast<std::size_t>(k)])) continue;
      acc += (alpha1 * k - i) * u[static_cast<std::size_t>(k)] * p[static_cast<std::size_t>(i - k)];
    }
    p[static_cast<std::size_t>(i)] = acc / i;
  }
  const int lead = static_cast<int>(lead_alpha.get_num().get_si());
  return LaurentSeries(expansion_, lead, lead + n, std::move(p));
}

LaurentSeries LaurentSeries::nth_root(int n) const {
  if (n < 1) throw PreconditionError("nth_root: n must be positive");
  return pow(make_rational(1, n));
}

LaurentSeries LaurentSeries::derivative() const {
  std::vector<Rational> c(c_.size());
  if (expansion_ == Expansion::at_zero) {
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * (lead_ + static_cast<int>(i));
    return LaurentSeries(expansion_, lead_ - 1, prec_add(-1, prec_), std::move(c));
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i] * (lead_ + static_cast<int>(i));
  return LaurentSeries(expansion_, lead_ + 1, prec_add(1, prec_), std::move(c));
}

LaurentSeries LaurentSeries::shift(int k) const {
  const int ds = expansion_ == Expansion::at_zero ? k : -k;
  return LaurentSeries(expansion_, lead_ + ds, prec_add(ds, prec_), c_);
}

LaurentSeries LaurentSeries::compose(const LaurentSeries& inner) const {
  if (expansion_ != inner.expansion_) throw PreconditionError("compose: different expansions");
  if (inner.is_zero()) throw PreconditionError("compose: inner series has no known nonzero term");
  const LaurentSeries r = expansion_ == Expansion::at_zero ? inner : inner.inverse();
  const int lr = r.lead_;
  if (lr < 1) throw PreconditionError("compose: inner series must vanish at the expansion point");
  const int k_r = r.is_exact() ? kExact : r.prec_ - lr;
  const int prec = is_zero() ? prec_mul(lr, prec_)
                             : std::min(prec_mul(lr, prec_), prec_add(lead_ * lr, k_r));
  if (is_zero()) return LaurentSeries(expansion_, prec, prec, {});
  if (prec >= kExact && lead_ < 0 && r.c_.size() > 1) {
    throw PreconditionError("compose: negative powers of an exact inner series need a truncation");
  }
  auto cap = [prec](LaurentSeries s) {
    if (s.prec_ > prec) {
      s.prec_ = prec;
      s.normalize();
    }
    return s;
  };
  LaurentSeries acc(expansion_, prec, prec, {});
  const int last = lead_ + static_cast<int>(c_.size()) - 1;
  // R^j for j from lead_ upward.
  LaurentSeries power = lead_ >= 0 ? cap(r.pow(lead_)) : cap(cap(r.inverse()).pow(-lead_));
  for (int j = lead_; j <= last; ++j) {
    const Rational& p = sc(j);
    if (!taulink::is_zero(p)) acc += power * p;
    if (j < last) power = cap(power * r);
  }
  acc.expansion_ = expansion_;
  return cap(acc);
}

LaurentSeries LaurentSeries::reversion() const {
  if (expansion_ == Expansion::at_infinity) {
    if (lead_ != -1) throw PreconditionError("reversion at infinity needs top exponent 1");
    LaurentSeries q = inverse();
    q.expansion_ = Expansion::at_zero;
    LaurentSeries r = q.reversion();
    r.expansion_ = Expansion::at_infinity;
    return r.inverse();
  }
  if (lead_ != 1) throw PreconditionError("reversion needs valuation exactly 1");
  if (is_exact() && c_.size() == 1) return LaurentSeries(expansion_, 1, kExact, {1 / c_[0]});
  require_finite("reversion");
  // Lagrange inversion: [z^n] G = (1/n) [z^{n-1}] (z / Q)^n.
  const LaurentSeries phi = shift(-1).inverse();
  const int n_max = prec_ - 1;
  std::vector<Rational> g(static_cast<std::size_t>(n_max));
  LaurentSeries power = phi;
  for (int n = 1; n <= n_max; ++n) {
    g[static_cast<std::size_t>(n - 1)] = power.sc(n - 1) / n;
    if (n < n_max) power *= phi;
  }
  return LaurentSeries(expansion_, 1, 1 + n_max, std::move(g));
}

LaurentSeries LaurentSeries::plus_part() const {
  if (expansion_ == Expansion::at_infinity) {
    if (prec_ < 0) throw PreconditionError("plus_part: window does not reach z^1");
    std::vector<Rational> c;
    for (int k = lead_; k <= -1; ++k) c.push_back(sc(k));
    if (c.empty()) return LaurentSeries(expansion_, kExact, kExact, {});
    return LaurentSeries(expansion_, lead_, kExact, std::move(c));
  }
  std::vector<Rational> c;
  const int start = std::max(lead_, 1);
  for (int k = start; k < lead_ + static_cast<int>(c_.size()); ++k) c.push_back(sc(k));
  return LaurentSeries(expansion_, start, std::max(prec_, start), std::move(c));
}

const Rational& DerivationCoeffs::at(int k) const {
  if (k < 1 || k > length()) throw PreconditionError("derivation coefficient index out of range");
  return coeffs[static_cast<std::size_t>(k - 1)];
}

namespace {

Expansion expansion_for(Direction d) {
  return d == Direction::lowering ? Expansion::at_infinity : Expansion::at_zero;
}

void check_length(const DerivationCoeffs& d, int order) {
  if (order < 1) throw PreconditionError("apply_derivation_exp: order must be positive");
  if (d.length() < order - 1) {
    throw PreconditionError("apply_derivation_exp: need " + std::to_string(order - 1) +
                            " coefficients, have " + std::to_string(d.length()));
  }
}

}  // namespace

LaurentSeries apply_derivation_exp(const DerivationCoeffs& d, int n, int order) {
  check_length(d, order);
  const int step = d.direction == Direction::lowering ? -1 : 1;
  std::vector<Rational> total(static_cast<std::size_t>(order)), term(static_cast<std::size_t>(order));
  total[0] = 1;
  term[0] = 1;
  for (int m = 1; m < order; ++m) {
    std::vector<Rational> next(static_cast<std::size_t>(order));
    bool any = false;
    for (int j = 0; j < order; ++j) {
      const Rational& t = term[static_cast<std::size_t>(j)];
      if (taulink::is_zero(t)) continue;
      const int e = n + step * j;
      if (e == 0) continue;
      for (int k = 1; j + k < order; ++k) {
        next[static_cast<std::size_t>(j + k)] += e * d.at(k) * t;
        any = true;
      }
    }
    if (!any) break;
    for (int j = 0; j < order; ++j) {
      term[static_cast<std::size_t>(j)] = next[static_cast<std::size_t>(j)] / m;
      total[static_cast<std::size_t>(j)] += term[static_cast<std::size_t>(j)];
    }
  }
  return LaurentSeries::from_coefficients(expansion_for(d.direction), n, std::move(total));
}

LaurentSeries apply_derivation_exp_nested(const DerivationCoeffs& d, int n, int order) {
  check_length(d, order);
  const int step = d.direction == Direction::lowering ? -1 : 1;
  std::vector<Rational> total(static_cast<std::size_t>(order));
  // offset = k_1 + ... + k_m, product = prod_i (n +- sum_{j<i} k_j) a_{k_i}
  std::function<void(int, int, const Rational&)> walk = [&](int offset, int m, const Rational& product) {
    total[static_cast<std::size_t>(offset)] += product / Rational(factorial(static_cast<unsigned>(m)));
    const int e = n + step * offset;
    for (int k = 1; offset + k < order; ++k) {
      const Rational next = product * e * d.at(k);
      if (taulink::is_zero(next)) continue;
      walk(offset + k, m + 1, next);
    }
  };
  walk(0, 0, Rational(1));
  return LaurentSeries::from_coefficients(expansion_for(d.direction), n, std::move(total));
}

DerivationCoeffs solve_derivation_coeffs(const LaurentSeries& target, Direction direction) {
  if (target.expansion() != expansion_for(direction)) {
    throw PreconditionError("solve_derivation_coeffs: target expansion does not match the direction");
  }
  if (target.is_zero() || target.leading_exponent() != 1 || target.coeff(1) != 1) {
    throw PreconditionError("solve_derivation_coeffs: target must start with z");
  }
  if (target.is_exact()) throw PreconditionError("solve_derivation_coeffs: truncate the target first");
  const int step = direction == Direction::lowering ? -1 : 1;
  const int order = target.order();
  DerivationCoeffs d{direction, {}};
  for (int k = 1; k < order; ++k) {
    d.coeffs.emplace_back(0);
    const LaurentSeries partial = apply_derivation_exp(d, 1, k + 1);
    const int e = 1 + step * k;
    d.coeffs.back() = target.coeff(e) - partial.coeff(e);
  }
  return d;
}

LaurentSeries compose_via_powers(const LaurentSeries& outer, const DerivationCoeffs& d) {
  if (outer.expansion() != Expansion::at_infinity || d.direction != Direction::lowering) {
    throw PreconditionError("compose_via_powers: needs a series at infinity and lowering coefficients");
  }
  if (outer.is_exact()) throw PreconditionError("compose_via_powers: truncate the outer series first");
  if (outer.is_zero()) return outer;
  const int top = outer.top();
  const int order = outer.order();
  const int bottom = top - order + 1;
  std::vector<Rational> total(static_cast<std::size_t>(order));
  for (const auto& [e, c] : outer.terms()) {
    if (taulink::is_zero(c)) continue;
    const LaurentSeries power = apply_derivation_exp(d, e, e - bottom + 1);
    for (const auto& [pe, pc] : power.terms()) {
      total[static_cast<std::size_t>(top - pe)] += c * pc;
    }
  }
  return LaurentSeries::from_coefficients(Expansion::at_infinity, top, std::move(total));
}

LaurentSeries D_power_of_z(int n) {
  if (n < 0) throw PreconditionError("D_power_of_z: n must be nonnegative");
  std::map<int, Rational> p{{1, Rational(1)}};
  for (int i = 0; i < n; ++i) {
    std::map<int, Rational> next;
    for (const auto& [e, c] : p) {
      next[e] += e * c;
      next[e + 1] += 2 * e * c;
      next[e + 2] += e * c;
    }
    p = std::move(next);
  }
  return LaurentSeries::exact_polynomial(Expansion::at_infinity, p);
}

LaurentSeries apply_D(const LaurentSeries& s) {
  const LaurentSeries poly = LaurentSeries::exact_polynomial(
      s.expansion(), {{1, Rational(1)}, {2, Rational(2)}, {3, Rational(1)}});
  return poly * s.derivative();
}

}  // namespace taulink
