#pragma once

#include <initializer_list>
#include <map>
#include <set>
#include <string>

#include "taulink/graded_poly.hpp"

namespace taulink {

// Exponent vector from a list of indices, repeats allowed: {1, 1, 3} = x1^2 x3.
Monomial index_monomial(std::initializer_list<int> indices, int u_pow = 0);

// One normal-ordered term: coeff * u^mult.u * x^mult * d^deriv.
struct OpKey {
  Monomial mult;
  Monomial deriv;  // u field unused

  auto operator<=>(const OpKey&) const = default;
};

class DiffOperator {
 public:
  using Terms = std::map<OpKey, Rational>;

  explicit DiffOperator(Alphabet a) : alphabet_(a) {}

  Alphabet alphabet() const { return alphabet_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Rational& c, const Monomial& mult, const Monomial& deriv);
  void add_term(const Rational& c, int u_pow, std::initializer_list<int> mult, std::initializer_list<int> deriv);

  // c * u^u_pow * this
  DiffOperator scaled(const Rational& c, int u_pow = 0) const;
  // Drops terms that cannot act within the truncation: u-power above u_max,
  // derivatives or multipliers on variables the truncation never stores.
  DiffOperator pruned(const TruncationSpec& trunc) const;
  DiffOperator truncated_u(int u_max) const;

  DiffOperator& operator+=(const DiffOperator& rhs);
  DiffOperator& operator-=(const DiffOperator& rhs);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);
  bool operator==(const DiffOperator& rhs) const = default;

  int max_order() const;  // largest derivative degree, -1 when empty
  int min_u_pow() const;  // -1 when empty
  // weight(u^a x^mult) - weight(d^deriv) for every term
  std::set<int> term_weights() const;

 private:
  void check_compatible(const DiffOperator& rhs) const;

  Alphabet alphabet_;
  Terms terms_;
};

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b);

enum class Kernel { serial, parallel };

GradedPoly apply_operator_serial(const DiffOperator& d, const GradedPoly& p);
GradedPoly apply_operator_parallel(const DiffOperator& d, const GradedPoly& p);
GradedPoly apply_operator(const DiffOperator& d, const GradedPoly& p, Kernel k = Kernel::parallel);

// sum_{n <= u_max} D^n p / n!; every term of D must carry u.
GradedPoly exp_apply(const DiffOperator& d, const GradedPoly& p, Kernel k = Kernel::parallel);

std::string format_operator(const DiffOperator& d);

}  // namespace taulink
