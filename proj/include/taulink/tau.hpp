#pragma once

#include <map>
#include <string>
#include <vector>

#include "taulink/operators.hpp"

namespace taulink {

// Sorted multiset d_1 <= ... <= d_n of psi-class exponents.
using Insertion = std::vector<int>;

// Genus from sum d = 3g - 3 + n when it is a nonnegative integer with
// 2g - 2 + n > 0; -1 otherwise.
int correlator_genus(const Insertion& d);
int insertion_weight(const Insertion& d);  // sum (2 d_i + 1)

class CorrelatorTable {
 public:
  CorrelatorTable() = default;
  CorrelatorTable(int weight_bound, std::map<Insertion, Rational> entries)
      : weight_bound_(weight_bound), entries_(std::move(entries)) {}

  int weight_bound() const { return weight_bound_; }
  const std::map<Insertion, Rational>& entries() const { return entries_; }
  // Zero for anything not stored; throws if the weight exceeds the bound.
  Rational at(Insertion d) const;
  bool operator==(const CorrelatorTable&) const = default;

 private:
  int weight_bound_ = 0;
  std::map<Insertion, Rational> entries_;
};

enum class SolverChoice { largest_index, second_largest_index };

// Every admissible correlator of weight <= weight_bound, from the constraint
// family Lhat_m exp(F) = 0, m >= -1. No values are seeded.
CorrelatorTable solve_fk(int weight_bound, SolverChoice choice = SolverChoice::largest_index);

enum class Provenance { FK_t, FK_q, FH_t, FH_q };
std::string to_string(Provenance p);

struct TauSeries {
  GradedPoly log_part;
  GradedPoly exp_part;
  Provenance provenance;
};

// F_K in t (or q through t_k = (2k-1)!! q_{2k+1}) and its exponential.
TauSeries fk_series(const CorrelatorTable& table, Alphabet a, const TruncationSpec& trunc);

struct HodgeSeries {
  TauSeries t;
  TauSeries q;
};

// exp(F_H(u,t)) = exp(W) exp(F_K(t)); the q-form through t_k = phi_k(u,q).
HodgeSeries build_fh(const CorrelatorTable& table, const TruncationSpec& trunc, Kernel k = Kernel::parallel);

// l_1..l_count from b_{2k+1} = (2k+3) [l_k + sum_{n>=2} (1/n!) sum l_{m_1}
// prod_{j>=2} l_{m_j} (3 + 2(m_1 + ... + m_{j-1}))].
std::vector<Rational> solve_l_from_btilde(int count);
// Same numbers read off theta = exp(-sum l_m z^{1-2m} d/dz) z.
std::vector<Rational> l_from_theta(int count);
std::vector<Rational> e_sequence(int count);

struct Mismatch {
  std::string label;
  Monomial monomial;
  Rational lhs;
  Rational rhs;
  std::string where;  // set when the location is not a monomial
};

struct Report {
  std::string name;
  Alphabet alphabet = Alphabet::q;
  int u_max = 0;
  int weight_max = 0;
  long checked = 0;
  long long seed = -1;  // random inputs were drawn from this seed when >= 0
  std::vector<Mismatch> mismatches;

  bool pass() const { return mismatches.empty(); }
  void absorb(const Report& other);
};

// Monomials with u-power <= u_max and weight <= weight_max.
long window_size(Alphabet a, int u_max, int weight_max);

// Every coefficient of the window, lhs against rhs.
Report compare_window(std::string name, std::string label, const GradedPoly& lhs, const GradedPoly& rhs, int u_max,
                      int weight_max);

// Both sides of the Hodge / Kontsevich-Witten relation on the margin
// truncation for (U, W).
struct TheoremSides {
  TruncationSpec trunc;
  GradedPoly hodge;        // exp(F_H(u,q))
  GradedPoly fk;           // exp(F_K(q))
  GradedPoly via_a;        // exp(sum a_m u^m L_m) exp(P) exp(F_K(q))
  GradedPoly via_e;        // exp(sum e_m u^m L_m) exp(F_K(q))
  GradedPoly via_p;        // exp(P) exp(F_K(q))
  GradedPoly via_l;        // exp(-sum l_m u^{2m} L_{2m}) exp(F_K(q))
};

TheoremSides theorem_sides(int u_cmp, int weight_cmp, int margin_extra, Kernel k = Kernel::parallel);

Report verify_theorem1(const TheoremSides& s, int u_cmp, int weight_cmp);
Report verify_corollary2(const TheoremSides& s, int u_cmp, int weight_cmp);
// Certified windows of two runs with different margins must agree exactly.
Report verify_stability(const TheoremSides& base, const TheoremSides& wider, int u_cmp, int weight_cmp);

// Lhat_m exp(F_K(t)), -1 <= m <= 3, and Vtilde_{2m} exp(F_K(q)), m = 1, 2,
// each on the window its weight shift certifies.
Report verify_virasoro(int weight_bound);

}  // namespace taulink
