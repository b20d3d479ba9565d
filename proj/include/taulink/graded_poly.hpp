#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "taulink/rational.hpp"

namespace taulink {

enum class Alphabet { q, t };

std::string to_string(Alphabet a);

// Variable indices 0..kSlots-1. q uses 1.., t uses 0...
inline constexpr int kSlots = 32;

// deg q_j = j, deg t_k = 2k + 1.
inline int variable_weight(Alphabet a, int index) { return a == Alphabet::q ? index : 2 * index + 1; }

// u^u_pow * prod x_i^{e[i]}. Ordered by u-power, then exponent vector.
struct Monomial {
  std::uint8_t u = 0;
  std::array<std::uint8_t, kSlots> e{};

  auto operator<=>(const Monomial&) const = default;

  int degree() const;  // sum of variable exponents, u excluded
  int max_index() const;  // -1 if no variable
  int weight(Alphabet a) const;  // includes u
  bool divides(const Monomial& m) const;  // variables only

  static Monomial var(int index, int power = 1);
};

Monomial operator*(const Monomial& a, const Monomial& b);

struct TruncationSpec {
  int u_max = 4;
  int weight_max = 9;
  int index_max = 9;

  bool admits(const Monomial& m, Alphabet a) const;
  bool operator==(const TruncationSpec&) const = default;
};

// Certifying a window (u <= U, weight <= W) uses weight_max = W + 3 ceil(U/2)
// plus any extra margin; index_max follows weight_max.
TruncationSpec margin_truncation(int u_cmp, int weight_cmp, int margin_extra = 0);

class GradedPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  GradedPoly(Alphabet a, TruncationSpec trunc) : alphabet_(a), trunc_(trunc) {}

  static GradedPoly constant(Alphabet a, TruncationSpec trunc, const Rational& c);
  static GradedPoly variable(Alphabet a, TruncationSpec trunc, int index, const Rational& c = 1);

  Alphabet alphabet() const { return alphabet_; }
  const TruncationSpec& trunc() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Adds c * m; monomials outside the truncation are dropped silently.
  void add(const Monomial& m, const Rational& c);
  Rational coeff(const Monomial& m) const;

  GradedPoly& operator+=(const GradedPoly& rhs);
  GradedPoly& operator-=(const GradedPoly& rhs);
  GradedPoly& operator*=(const Rational& c);
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  bool operator==(const GradedPoly& rhs) const = default;

  // exp of a series without constant term / log of 1 + (no constant term).
  GradedPoly exp() const;
  GradedPoly log() const;

  // Same terms with tighter bounds.
  GradedPoly restricted(int u_max, int weight_max) const;
  GradedPoly with_trunc(TruncationSpec trunc) const;
  // Terms with the given u-power, u removed.
  GradedPoly u_slice(int power) const;

 private:
  void check_compatible(const GradedPoly& rhs) const;

  Alphabet alphabet_;
  TruncationSpec trunc_;
  Terms terms_;
};

// Random polynomial with `n_terms` attempted monomials and coefficients in
// -3..3 (nonzero). Monomials use u-powers <= u_max and variable indices that
// keep the weight within the truncation.
GradedPoly random_poly(Alphabet a, TruncationSpec trunc, std::mt19937_64& rng, int n_terms);

std::string format_monomial(const Monomial& m, Alphabet a);
std::string format_poly(const GradedPoly& p);

}  // namespace taulink
