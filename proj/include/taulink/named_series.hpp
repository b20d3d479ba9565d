#pragma once

#include <string>
#include <vector>

#include "taulink/series.hpp"

namespace taulink {

// Truncation conventions. Laurent series at infinity with top 1 (f, psi,
// theta, theta_of_f) keep `order` terms from z down. Power series at zero keep
// everything through z^order. The Stirling exponential keeps 1..z^{-order}.
LaurentSeries series_f(int order);
LaurentSeries series_w(int order);
LaurentSeries series_v(int order);
LaurentSeries series_h(int order);
// sum_{i>=1} (-1)^{i-1} i b_i z^{i-2}, through z^order
LaurentSeries series_inv_h(int order);
LaurentSeries series_psi(int order);
LaurentSeries series_eta1(int order);
LaurentSeries series_theta(int order);
// 3 sum_k b_{2k+1}/(2k+3) z^{-2k-3}, `order` terms from z^{-3}
LaurentSeries series_theta_inv_cube(int order);
LaurentSeries series_stirling(int order);
LaurentSeries series_theta_of_f(int order);

// a_1..a_count from e^{Phi^-} z = f.
DerivationCoeffs a_coefficients(int count);
// e_1..e_count from e^{Phi^-} z = theta(f).
DerivationCoeffs e_coefficients(int count);

// d_m for m <= -1 from d_{-n+1} = (-1)^{n-1} 4 / ((n+1) n (n-1)).
Rational d_coefficient(int m);

// A named identity whose residual must vanish on its window.
struct IdentityCheck {
  std::string name;
  LaurentSeries residual;
  int first_exponent = 0;  // leading exponent of the left-hand side

  bool vanishes() const { return residual.is_zero(); }
  // Number of coefficients compared, from first_exponent through the last
  // known one.
  int compared() const;
};

IdentityCheck make_check(std::string name, const LaurentSeries& lhs, const LaurentSeries& rhs);

// Functional equations of the named series at truncation `order`.
std::vector<IdentityCheck> functional_equation_checks(int order);

// (f^{2n+1})_+ - (1/(2n-1)!!) sum_i C_i D^{n-i} z, for f^k = e^{Phi^-} z^k.
LaurentSeries lemma_power_residual(const DerivationCoeffs& a, int n);

}  // namespace taulink
