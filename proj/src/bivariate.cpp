#include "taulink/bivariate.hpp"

#include <string>

#include "taulink/named_series.hpp"
#include "taulink/sequences.hpp"

namespace taulink {

BiPoly::BiPoly(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 0) throw PreconditionError("BiPoly: negative cutoff");
  c_.resize(static_cast<std::size_t>((cutoff + 1) * (cutoff + 2) / 2));
}

std::size_t BiPoly::index(int i, int j) const {
  if (i < 0 || j < 0 || i + j > cutoff_) throw PreconditionError("BiPoly: index outside the cutoff");
  const int d = i + j;
  return static_cast<std::size_t>(d * (d + 1) / 2 + i);
}

Rational& BiPoly::at(int i, int j) { return c_[index(i, j)]; }
const Rational& BiPoly::at(int i, int j) const { return c_[index(i, j)]; }

BiPoly& BiPoly::operator+=(const BiPoly& rhs) {
  if (rhs.cutoff_ != cutoff_) throw PreconditionError("BiPoly: cutoff mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += rhs.c_[k];
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& rhs) {
  if (rhs.cutoff_ != cutoff_) throw PreconditionError("BiPoly: cutoff mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= rhs.c_[k];
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.cutoff_ != b.cutoff_) throw PreconditionError("BiPoly: cutoff mismatch");
  const int n = a.cutoff_;
  BiPoly out(n);
  for (int d1 = 0; d1 <= n; ++d1) {
    for (int i1 = 0; i1 <= d1; ++i1) {
      const Rational& x = a.at(i1, d1 - i1);
      if (is_zero(x)) continue;
      for (int d2 = 0; d1 + d2 <= n; ++d2) {
        for (int i2 = 0; i2 <= d2; ++i2) {
          const Rational& y = b.at(i2, d2 - i2);
          if (is_zero(y)) continue;
          out.at(i1 + i2, d1 + d2 - i1 - i2) += x * y;
        }
      }
    }
  }
  return out;
}

BiPoly operator*(BiPoly a, const Rational& c) {
  for (auto& v : a.c_) v *= c;
  return a;
}

BiPoly BiPoly::exp() const {
  if (!is_zero(at(0, 0))) throw PreconditionError("BiPoly::exp: nonzero constant term");
  BiPoly out(cutoff_), term(cutoff_);
  out.at(0, 0) = 1;
  term.at(0, 0) = 1;
  for (int n = 1; n <= cutoff_; ++n) {
    term = term * *this * make_rational(1, n);
    out += term;
  }
  return out;
}

BiPoly BiPoly::log() const {
  if (at(0, 0) != 1) throw PreconditionError("BiPoly::log: constant term must be 1");
  BiPoly g = *this;
  g.at(0, 0) = 0;
  BiPoly out(cutoff_), power = g;
  for (int n = 1; n <= cutoff_; ++n) {
    out += power * make_rational(n % 2 == 1 ? 1 : -1, n);
    power = power * g;
  }
  return out;
}

const Rational& SymBivariate::at(int i, int j) const {
  if (i > j) std::swap(i, j);
  const auto it = coeffs.find({i, j});
  if (it == coeffs.end()) {
    throw PreconditionError("SymBivariate: (" + std::to_string(i) + "," + std::to_string(j) + ") not stored");
  }
  return it->second;
}

namespace {

SymBivariate to_symmetric(const BiPoly& p, int min_index, int cutoff) {
  SymBivariate out{min_index, cutoff, {}};
  for (int i = min_index; 2 * i <= cutoff; ++i) {
    for (int j = i; i + j <= cutoff; ++j) {
      if (p.at(i, j) != p.at(j, i)) {
        throw ConsistencyError("bivariate series is not symmetric at (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
      }
      out.coeffs[{i, j}] = p.at(i, j);
    }
  }
  // Nothing may live below min_index.
  for (int d = 0; d <= cutoff; ++d) {
    for (int i = 0; i <= d; ++i) {
      if ((i < min_index || d - i < min_index) && !is_zero(p.at(i, d - i))) {
        throw ConsistencyError("bivariate series has a term below its minimal index");
      }
    }
  }
  return out;
}

BiPoly qb_numerator(int cutoff) {
  const int n = cutoff + 1;
  BiPoly exponent(n);
  for (int k = 1; 2 * k - 1 <= n; ++k) {
    exponent.at(2 * k - 1, 0) += bernoulli_tilde(k);
    exponent.at(0, 2 * k - 1) += bernoulli_tilde(k);
  }
  BiPoly one(n);
  one.at(0, 0) = 1;
  return one - exponent.exp();
}

void require_cutoff(int cutoff, int minimum, const char* name) {
  if (cutoff < minimum) {
    throw PreconditionError(std::string(name) + ": cutoff must be >= " + std::to_string(minimum));
  }
}

// xy (g(x) - g(y)) / (x - y) for a power series g with known coefficients g[0..].
BiPoly divided_difference_times_xy(const std::vector<Rational>& g, int cutoff) {
  BiPoly out(cutoff);
  for (int e = 1; e + 1 <= cutoff && e < static_cast<int>(g.size()); ++e) {
    for (int m = 0; m <= e - 1; ++m) out.at(m + 1, e - m) += g[static_cast<std::size_t>(e)];
  }
  return out;
}

}  // namespace

SymBivariate series_QB(int cutoff) {
  require_cutoff(cutoff, 0, "series_QB");
  const BiPoly num = qb_numerator(cutoff);
  BiPoly quotient(cutoff);
  for (int d = 0; d <= cutoff + 1; ++d) {
    // (x + y) sum q_i x^i y^{d-1-i}: coefficient of x^i y^{d-i} is q_{i-1} + q_i.
    Rational prev = 0;
    for (int i = 0; i < d; ++i) {
      const Rational q = num.at(i, d - i) - prev;
      quotient.at(i, d - 1 - i) = q;
      prev = q;
    }
    if (num.at(d, 0) != prev) {
      throw ConsistencyError("Q^B numerator not divisible by x + y in degree " + std::to_string(d));
    }
  }
  return to_symmetric(quotient, 0, cutoff);
}

std::vector<Rational> qb_numerator_on_antidiagonal(int cutoff) {
  const BiPoly num = qb_numerator(cutoff);
  std::vector<Rational> out;
  for (int d = 0; d <= cutoff + 1; ++d) {
    Rational acc = 0;
    for (int j = 0; j <= d; ++j) {
      if (j % 2 == 0) acc += num.at(d - j, j); else acc -= num.at(d - j, j);
    }
    out.push_back(acc);
  }
  return out;
}

SymBivariate series_Q(int cutoff) {
  require_cutoff(cutoff, 2, "series_Q");
  BiPoly arg(cutoff);
  arg.at(0, 0) = 1;
  for (int i = 3; i - 1 <= cutoff; ++i) {
    const Rational c = i * b_coefficient(i);
    for (int m = 1; m <= i - 2; ++m) {
      if (i % 2 == 0) arg.at(m, i - 1 - m) += c; else arg.at(m, i - 1 - m) -= c;
    }
  }
  return to_symmetric(arg.log(), 1, cutoff);
}

SymBivariate series_Q_from_h(int cutoff) {
  require_cutoff(cutoff, 2, "series_Q_from_h");
  // 1/h = sum_{e>=-1} c_e x^e; need c_e for e <= cutoff - 1.
  const LaurentSeries inv_h = series_h(cutoff + 1).inverse();
  if (inv_h.leading_exponent() != -1 || inv_h.coeff(-1) != 1) {
    throw ConsistencyError("1/h does not start with 1/x");
  }
  std::vector<Rational> c;
  for (int e = 0; e <= cutoff - 1; ++e) c.push_back(inv_h.coeff(e));
  // The e = -1 term gives 1, e = 0 cancels, e >= 1 gives -c_e xy sum x^m y^{e-1-m}.
  BiPoly arg = divided_difference_times_xy(c, cutoff) * Rational(-1);
  arg.at(0, 0) += 1;
  return to_symmetric(arg.log(), 1, cutoff);
}

SymBivariate series_T(int cutoff) {
  require_cutoff(cutoff, 2, "series_T");
  BiPoly t(cutoff);
  for (int n = 3; n - 1 <= cutoff; ++n) {
    const Rational c = d_coefficient(1 - n) / 2;
    for (int i = 1; i <= n - 2; ++i) t.at(i, n - 1 - i) += c;
  }
  return to_symmetric(t, 1, cutoff);
}

SymBivariate series_T_closed_form(int cutoff) {
  require_cutoff(cutoff, 2, "series_T_closed_form");
  using LS = LaurentSeries;
  const Expansion z = Expansion::at_zero;
  // g needs coefficients through x^{cutoff-1}; the x^{-3} shift eats three orders.
  const LS one_plus_x = LS::exact_polynomial(z, {{0, Rational(1)}, {1, Rational(1)}});
  const LS log1p = one_plus_x.known_through(cutoff + 2).log();
  const LS g = -(one_plus_x.pow(2) * log1p).shift(-3) + LS::monomial(z, -2) + LS::monomial(z, -1, make_rational(3, 2));
  if (!g.is_zero() && g.leading_exponent() < 0) throw ConsistencyError("closed form of T has a pole");
  std::vector<Rational> c;
  for (int e = 0; e <= cutoff - 1; ++e) c.push_back(g.coeff(e));
  return to_symmetric(divided_difference_times_xy(c, cutoff), 1, cutoff);
}

std::vector<LinkEntry> check_double_factorial_link(int max_sum) {
  require_cutoff(max_sum, 0, "check_double_factorial_link");
  const SymBivariate qb = series_QB(max_sum);
  const SymBivariate q = series_Q(2 * max_sum + 2);
  std::vector<LinkEntry> out;
  for (int i = 0; 2 * i <= max_sum; ++i) {
    for (int j = i; i + j <= max_sum; ++j) {
      const Rational scale = Rational(double_factorial(2 * i + 1) * double_factorial(2 * j + 1));
      out.push_back({i, j, qb.at(i, j), scale * q.at(2 * i + 1, 2 * j + 1)});
    }
  }
  return out;
}

std::vector<std::pair<int, int>> differing_entries(const SymBivariate& a, const SymBivariate& b) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [key, v] : a.coeffs) {
    const auto it = b.coeffs.find(key);
    if (it == b.coeffs.end() || it->second != v) out.push_back(key);
  }
  for (const auto& [key, v] : b.coeffs) {
    if (!a.coeffs.count(key)) out.push_back(key);
  }
  return out;
}

}  // namespace taulink
