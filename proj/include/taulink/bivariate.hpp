#pragma once

#include <map>
#include <utility>
#include <vector>

#include "taulink/rational.hpp"

namespace taulink {

// Dense polynomial in x, y with every monomial of total degree > cutoff
// discarded.
class BiPoly {
 public:
  explicit BiPoly(int cutoff);

  int cutoff() const { return cutoff_; }
  Rational& at(int i, int j);
  const Rational& at(int i, int j) const;

  BiPoly& operator+=(const BiPoly& rhs);
  BiPoly& operator-=(const BiPoly& rhs);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(BiPoly a, const Rational& c);

  // Need a zero constant term.
  BiPoly exp() const;
  // Needs constant term 1.
  BiPoly log() const;

 private:
  std::size_t index(int i, int j) const;
  int cutoff_;
  std::vector<Rational> c_;
};

// Symmetric table c_{ij} = c_{ji}; pairs min_index <= i <= j, i + j <= cutoff.
struct SymBivariate {
  int min_index = 0;
  int cutoff = 0;
  std::map<std::pair<int, int>, Rational> coeffs;

  const Rational& at(int i, int j) const;
};

// (1 - exp(B(1/x) + B(1/y))) / (x + y), remainder checked per homogeneous
// degree.
SymBivariate series_QB(int cutoff);
// log(1 + sum_{i>=3} (-1)^i i b_i sum_{m=1}^{i-2} x^m y^{i-1-m})
SymBivariate series_Q(int cutoff);
// log((1/h(x) - 1/h(y)) xy / (y - x)) with 1/h inverted from series_h.
SymBivariate series_Q_from_h(int cutoff);
// sum_{n>=3} (1/2) d_{-n+1} sum_{i=1}^{n-2} x^i y^{n-1-i}
SymBivariate series_T(int cutoff);
// Expansion of the closed form of T, via g(x) = -(1+x)^2 log(1+x)/x^3 + 1/x^2 + 3/(2x).
SymBivariate series_T_closed_form(int cutoff);

// sum_{i+j=d} n_{ij} (-1)^j for the numerator of Q^B, d = 0..cutoff+1.
std::vector<Rational> qb_numerator_on_antidiagonal(int cutoff);

struct LinkEntry {
  int i = 0;
  int j = 0;
  Rational qb;      // Q^B_{ij}
  Rational scaled;  // (2i+1)!! (2j+1)!! Q_{2i+1,2j+1}
  bool pass() const { return qb == scaled; }
};

std::vector<LinkEntry> check_double_factorial_link(int max_sum);

// Pairs whose entries differ, as (i, j).
std::vector<std::pair<int, int>> differing_entries(const SymBivariate& a, const SymBivariate& b);

}  // namespace taulink
