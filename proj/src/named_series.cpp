#include "taulink/named_series.hpp"

#include "taulink/sequences.hpp"

#include <algorithm>

namespace taulink {
namespace {

constexpr Expansion kInf = Expansion::at_infinity;
constexpr Expansion kZero = Expansion::at_zero;

void require_order(int order, int minimum, const char* name) {
  if (order < minimum) {
    throw PreconditionError(std::string(name) + ": order must be >= " + std::to_string(minimum));
  }
}

Rational signed_b(int i) { return i % 2 == 0 ? b_coefficient(i) : Rational(-b_coefficient(i)); }

}  // namespace

LaurentSeries series_f(int order) {
  require_order(order, 1, "series_f");
  // f^2 / z^2 = 1 / (1 - 2 sum_{n>=3} (-1)^{n-1} ((n-1)/n) z^{2-n})
  std::vector<Rational> denom(static_cast<std::size_t>(order));
  denom[0] = 1;
  for (int n = 3; n - 2 < order; ++n) {
    const Rational term = make_rational(2 * (n - 1), n);
    denom[static_cast<std::size_t>(n - 2)] = (n % 2 == 0) ? term : Rational(-term);
  }
  const LaurentSeries g = LaurentSeries::from_coefficients(kInf, 0, std::move(denom));
  return g.pow(make_rational(-1, 2)).shift(1);
}

LaurentSeries series_v(int order) {
  require_order(order, 1, "series_v");
  std::vector<Rational> c{Rational(1)};
  for (int i = 1; i <= order; ++i) c.push_back(b_coefficient(i));
  return LaurentSeries::from_coefficients(kZero, 0, std::move(c));
}

LaurentSeries series_w(int order) {
  require_order(order, 1, "series_w");
  std::vector<Rational> c{Rational(1)};
  for (int i = 1; i <= order; ++i) c.push_back(signed_b(i));
  return LaurentSeries::from_coefficients(kZero, 0, std::move(c));
}

LaurentSeries series_h(int order) {
  require_order(order, 1, "series_h");
  return series_w(order).inverse() - LaurentSeries::monomial(kZero, 0);
}

LaurentSeries series_inv_h(int order) {
  require_order(order, -1, "series_inv_h");
  std::vector<Rational> c;
  for (int i = 1; i - 2 <= order; ++i) {
    const Rational term = i * b_coefficient(i);
    c.push_back(i % 2 == 1 ? term : Rational(-term));
  }
  return LaurentSeries::from_coefficients(kZero, -1, std::move(c));
}

LaurentSeries series_psi(int order) {
  require_order(order, 1, "series_psi");
  std::vector<Rational> c;
  for (int i = 1; i <= order; ++i) {
    const Rational term = i * b_coefficient(i);
    c.push_back(i % 2 == 1 ? term : Rational(-term));
  }
  return LaurentSeries::from_coefficients(kInf, 1, std::move(c));
}

LaurentSeries series_eta1(int order) {
  require_order(order, 1, "series_eta1");
  const LaurentSeries one_plus_z =
      LaurentSeries::exact_polynomial(kZero, {{0, Rational(1)}, {1, Rational(1)}}).known_through(order + 1);
  // 2 log(1+z) - 2 + 2/(1+z) = z^2 - (4/3) z^3 + ...
  const LaurentSeries inner = Rational(2) * one_plus_z.log() - LaurentSeries::monomial(kZero, 0, 2) +
                              Rational(2) * one_plus_z.inverse();
  return inner.nth_root(2);
}

LaurentSeries series_theta_inv_cube(int order) {
  require_order(order, 1, "series_theta_inv_cube");
  std::vector<Rational> c(static_cast<std::size_t>(order));
  for (int j = 0; j < order; j += 2) {
    const int k = j / 2;
    c[static_cast<std::size_t>(j)] = 3 * b_coefficient(2 * k + 1) / (2 * k + 3);
  }
  return LaurentSeries::from_coefficients(kInf, -3, std::move(c));
}

LaurentSeries series_theta(int order) {
  require_order(order, 1, "series_theta");
  return series_theta_inv_cube(order).pow(make_rational(-1, 3));
}

LaurentSeries series_stirling(int order) {
  require_order(order, 0, "series_stirling");
  std::map<int, Rational> bern;
  for (int k = 1; 1 - 2 * k >= -order; ++k) bern[1 - 2 * k] = bernoulli_tilde(k);
  return LaurentSeries::from_terms(kInf, bern, -order).exp();
}

LaurentSeries series_theta_of_f(int order) {
  require_order(order, 1, "series_theta_of_f");
  return compose_via_powers(series_theta(order), a_coefficients(order - 1));
}

DerivationCoeffs a_coefficients(int count) {
  require_order(count, 0, "a_coefficients");
  return solve_derivation_coeffs(series_f(count + 1), Direction::lowering);
}

DerivationCoeffs e_coefficients(int count) {
  require_order(count, 0, "e_coefficients");
  return solve_derivation_coeffs(series_theta_of_f(count + 1), Direction::lowering);
}

Rational d_coefficient(int m) {
  if (m > -1) throw PreconditionError("d_coefficient: index must be <= -1");
  const int n = 1 - m;
  const Rational v = make_rational(4, static_cast<long>(n + 1) * n * (n - 1));
  return n % 2 == 0 ? Rational(-v) : v;
}

int IdentityCheck::compared() const {
  if (residual.is_exact()) return 0;
  const int last = residual.last_known();
  const int span = residual.expansion() == Expansion::at_zero ? last - first_exponent : first_exponent - last;
  return std::max(0, span + 1);
}

IdentityCheck make_check(std::string name, const LaurentSeries& lhs, const LaurentSeries& rhs) {
  return {std::move(name), lhs - rhs, lhs.leading_exponent()};
}

std::vector<IdentityCheck> functional_equation_checks(int order) {
  require_order(order, 2, "functional_equation_checks");
  using LS = LaurentSeries;
  const LS z_inf = LS::monomial(kInf, 1);
  const LS z_zero = LS::monomial(kZero, 1);
  const LS one_inf = LS::monomial(kInf, 0);
  const LS one_zero = LS::monomial(kZero, 0);
  const LS gauss = LS::monomial(kZero, 2, make_rational(-1, 2)).known_through(order).exp();

  std::vector<IdentityCheck> out;
  const LS f = series_f(order);
  out.push_back(make_check("D f - f^3", apply_D(f), f.pow(3)));

  const LS v = series_v(order);
  out.push_back(make_check("v exp(1 - v) - exp(-x^2/2)", v * (one_zero - v).exp(), gauss));

  const LS w = series_w(order);
  out.push_back(make_check("w' (w - 1) - x w", w.derivative() * (w - one_zero), w.shift(1)));

  const LS h = series_h(order);
  const LS g = (one_zero + h).inverse();
  // Both sides of (1/(1+h)) e^{-1/(1+h)} = e^{-z^2/2 - 1} multiplied by e.
  out.push_back(make_check("(1/(1+h)) exp(1 - 1/(1+h)) - exp(-z^2/2)", g * (one_zero - g).exp(), gauss));
  out.push_back(make_check("1/h - sum (-1)^(i-1) i b_i z^(i-2)", h.inverse(), series_inv_h(order)));

  const LS psi = series_psi(order);
  out.push_back(make_check("psi(f) - z", psi.compose(f), z_inf));
  out.push_back(make_check("psi - reversion(f)", psi, f.reversion()));

  const LS eta = series_eta1(order);
  out.push_back(make_check("h(eta) - z", h.compose(eta), z_zero));
  out.push_back(make_check("eta(h) - z", eta.compose(h), z_zero));

  out.push_back(make_check("theta^-3 - 3 sum b_(2k+1)/(2k+3) z^(-2k-3)", series_theta(order).pow(-3),
                            series_theta_inv_cube(order)));

  const LS st = series_stirling(order);
  std::vector<Rational> cs;
  for (int i = 0; i <= order; ++i) cs.push_back(C_coefficient(i));
  out.push_back(make_check("exp(B(z)) - sum C_i z^-i", st, LS::from_coefficients(kInf, 0, std::move(cs))));
  out.push_back(make_check("exp(B(z)) exp(B(-z)) - 1", st * st.compose(LS::monomial(kInf, 1, -1)), one_inf));

  // f = z - sum (2i+1) b_{2i+1} f^{1-2i} + sum 2i b_{2i} f^{2-2i}
  LS rhs = z_inf;
  const int bottom = 2 - order;
  for (int i = 1; 1 - 2 * i >= bottom; ++i) rhs -= (2 * i + 1) * b_coefficient(2 * i + 1) * f.pow(1 - 2 * i);
  for (int i = 1; 2 - 2 * i >= bottom; ++i) rhs += 2 * i * b_coefficient(2 * i) * f.pow(2 - 2 * i);
  out.push_back(make_check("f - z + sum (2i+1) b f^(1-2i) - sum 2i b f^(2-2i)", f, rhs));

  DerivationCoeffs a = a_coefficients(order - 1);
  out.push_back(make_check("e^(Phi-) z^-1 - 1/f", apply_derivation_exp(a, -1, order), f.inverse()));
  out.push_back(make_check("e^(Phi-) z^3 iterated - nested", apply_derivation_exp(a, 3, order),
                            apply_derivation_exp_nested(a, 3, order)));
  a.direction = Direction::raising;
  out.push_back(make_check("e^(Phi+) z - h", apply_derivation_exp(a, 1, order), h));
  return out;
}

LaurentSeries lemma_power_residual(const DerivationCoeffs& a, int n) {
  if (n < 0) throw PreconditionError("lemma_power_residual: n must be nonnegative");
  const LaurentSeries lhs = apply_derivation_exp(a, 2 * n + 1, 2 * n + 1).plus_part();
  LaurentSeries rhs = LaurentSeries::exact_polynomial(Expansion::at_infinity, {});
  for (int i = 0; i <= n; ++i) rhs += C_coefficient(i) * D_power_of_z(n - i);
  rhs *= Rational(1) / Rational(double_factorial(2 * n - 1));
  return lhs - rhs;
}

}  // namespace taulink
