#pragma once

#include <map>
#include <utility>
#include <vector>

#include "taulink/rational.hpp"

namespace taulink {

// at_infinity: a Laurent series in descending powers of z (f, psi, theta, ...).
// at_zero: an ascending power series (w, v, h, eta, ...).
enum class Expansion { at_infinity, at_zero };

// Truncated series with unknown-beyond-window semantics.
//
// Internally every series is stored in a small variable s, with s = z at zero
// and s = 1/z at infinity. Coefficients of s^lead .. s^(prec-1) are known;
// entries past the stored vector but below prec are known zeros, everything at
// s^prec or beyond is unknown. A series whose precision is kExact is a
// polynomial known to all orders.
class LaurentSeries {
 public:
  static constexpr int kExact = 1 << 28;

  LaurentSeries() = default;

  // coeffs[i] is the coefficient of z^(first - i) at infinity, z^(first + i) at
  // zero; the window ends with the last entry.
  static LaurentSeries from_coefficients(Expansion e, int first_exponent, std::vector<Rational> coeffs);
  // Exponent -> coefficient, known through z^last_known (in the expansion's
  // direction). Pass kExact-style exactness through exact_polynomial instead.
  static LaurentSeries from_terms(Expansion e, const std::map<int, Rational>& terms, int last_known);
  static LaurentSeries exact_polynomial(Expansion e, const std::map<int, Rational>& terms);
  static LaurentSeries monomial(Expansion e, int exponent, Rational coeff = 1);
  static LaurentSeries zero(Expansion e, int last_known);

  Expansion expansion() const { return expansion_; }
  bool is_exact() const { return prec_ >= kExact; }
  bool is_zero() const { return c_.empty(); }

  // Leading stored exponent: the top at infinity, the valuation at zero.
  // For a zero series this is the first unknown exponent.
  int leading_exponent() const { return z_of(lead_); }
  int top() const { return leading_exponent(); }
  // Last exponent whose coefficient is known. Undefined for exact series.
  int last_known() const;
  // Number of known coefficients from the leading exponent on.
  int order() const;

  bool is_known(int exponent) const { return s_of(exponent) < prec_; }
  // Zero before the leading exponent, throws PreconditionError past the window.
  Rational coeff(int exponent) const;
  // Known coefficients in expansion order (descending z at infinity).
  std::vector<std::pair<int, Rational>> terms() const;

  // Keep `order` known coefficients from the leading exponent.
  LaurentSeries truncated(int order) const;
  // Forget everything beyond z^last (in the expansion's direction).
  LaurentSeries known_through(int last) const;

  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& rhs);
  LaurentSeries& operator-=(const LaurentSeries& rhs);
  LaurentSeries& operator*=(const LaurentSeries& rhs);
  LaurentSeries& operator*=(const Rational& c);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(LaurentSeries a, const LaurentSeries& b) { return a *= b; }
  friend LaurentSeries operator*(LaurentSeries a, const Rational& c) { return a *= c; }
  friend LaurentSeries operator*(const Rational& c, LaurentSeries a) { return a *= c; }

  // Same representation, coefficient for coefficient and window for window.
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

  LaurentSeries inverse() const;
  // Requires a zero constant term and nonnegative valuation in s.
  LaurentSeries exp() const;
  // Requires the series to be 1 + (terms of positive s-degree).
  LaurentSeries log() const;
  // Integer exponents allow any nonzero series; fractional ones need a leading
  // coefficient of 1 and lead * alpha integral. The branch is the one with
  // leading coefficient +1.
  LaurentSeries pow(const Rational& alpha) const;
  LaurentSeries nth_root(int n) const;
  LaurentSeries pow(int k) const;

  // d/dz.
  LaurentSeries derivative() const;
  // Multiply by z^k.
  LaurentSeries shift(int k) const;
  // this(inner(z)). Both must share the expansion; inner must be z^{+-1}-like
  // in s (valuation >= 1 at zero, top >= 1 at infinity).
  LaurentSeries compose(const LaurentSeries& inner) const;
  // Compositional inverse. Needs z + ... with nonzero linear coefficient at
  // zero, and top exactly 1 at infinity.
  LaurentSeries reversion() const;
  // Exponents >= 1 only. The window must reach z^1.
  LaurentSeries plus_part() const;

  // First known nonzero coefficient, if any, as (exponent, value).
  bool first_nonzero(int& exponent, Rational& value) const;

 private:
  LaurentSeries(Expansion e, int lead, int prec, std::vector<Rational> c);

  int z_of(int s) const { return expansion_ == Expansion::at_zero ? s : -s; }
  int s_of(int z) const { return expansion_ == Expansion::at_zero ? z : -z; }
  // Coefficient of s^k; zero below lead or past the stored tail.
  const Rational& sc(int k) const;
  void normalize();
  void require_finite(const char* op) const;
  // Unit part (leading coefficient divided out not included): coefficients
  // c_0..c_{n-1} of s^{-lead} * this.
  std::vector<Rational> dense(int n) const;

  Expansion expansion_ = Expansion::at_infinity;
  int lead_ = 0;
  int prec_ = kExact;
  std::vector<Rational> c_;
};

enum class Direction { lowering, raising };

// Coefficients a_1..a_length of Phi = sum a_k z^{1 -+ k} d/dz.
struct DerivationCoeffs {
  Direction direction = Direction::lowering;
  std::vector<Rational> coeffs;  // coeffs[k-1] = a_k

  int length() const { return static_cast<int>(coeffs.size()); }
  const Rational& at(int k) const;
};

// e^Phi z^n with top n (leading exponent n), `order` known terms.
// Throws PreconditionError if d.length() < order - 1.
LaurentSeries apply_derivation_exp(const DerivationCoeffs& d, int n, int order);
// Same value by expanding the nested sum over compositions k_1 + ... + k_m.
LaurentSeries apply_derivation_exp_nested(const DerivationCoeffs& d, int n, int order);

// Unique d with apply_derivation_exp(d, 1, K) matching target on its window.
// target must start with exactly 1*z; lowering wants an at-infinity series and
// raising an at-zero series.
DerivationCoeffs solve_derivation_coeffs(const LaurentSeries& target, Direction direction);

// sum_e outer_e * (e^Phi z)^e using e^Phi z^e for each retained exponent.
// outer is at infinity and d lowering; the window is the outer's window.
LaurentSeries compose_via_powers(const LaurentSeries& outer, const DerivationCoeffs& d);

// D^n z as an exact polynomial, D = (1+z)^2 z d/dz.
LaurentSeries D_power_of_z(int n);
// D applied to a series (either expansion).
LaurentSeries apply_D(const LaurentSeries& s);

}  // namespace taulink
