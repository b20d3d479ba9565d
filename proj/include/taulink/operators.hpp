#pragma once

#include <map>
#include <vector>

#include "taulink/diff_operator.hpp"

namespace taulink {

// Virasoro-type operators in q (no u attached).
// X_m = sum_{k>0, k+m>0} (k+m) q_k d_{k+m}
DiffOperator build_Xm(int m, const TruncationSpec& trunc);
// Y_m = (1/2) sum_{a+b=m} a b d_a d_b, m >= 1
DiffOperator build_Ym(int m, const TruncationSpec& trunc);
DiffOperator build_Lm(int m, const TruncationSpec& trunc);

enum class VirasoroPart { full, first_order, second_order };

// sum_m c_m u^m (L_m | X_m | Y_m) for the keys m >= 1 with m <= u_max.
DiffOperator u_weighted_sum(const std::map<int, Rational>& c, const TruncationSpec& trunc,
                            VirasoroPart part = VirasoroPart::full);
// Keys 1..n from a coefficient list.
std::map<int, Rational> indexed(const std::vector<Rational>& c);

// Hodge transport operator in t and its pieces W = Bt + (1/2) Q0W + P0.
DiffOperator build_W(const TruncationSpec& trunc);
DiffOperator build_Bt(const TruncationSpec& trunc);
DiffOperator build_P0(const TruncationSpec& trunc);
DiffOperator build_Q0W(const TruncationSpec& trunc);

// -sum_{i>=1} C_i u^{2i} d_{t_{i+1}}
DiffOperator build_Pt(const TruncationSpec& trunc);
// sum_m ((-1)^{m-1}/m!) ad_{Bt}^{m-1} P0 by explicit commutators.
DiffOperator build_Pt_nested(const TruncationSpec& trunc);
// -sum_{k>=1} b_{2k+1} u^{2k} d_{q_{2k+3}}
DiffOperator build_P(const TruncationSpec& trunc);

// sum over ordered (i, j) of QB_ij u^{2i+2j+2} d_{t_i} d_{t_j}
DiffOperator build_QtW(const TruncationSpec& trunc);
// sum_n ((-1)^{n-1}/n!) ad_{Bt}^{n-1} Q0W
DiffOperator build_QtW_nested(const TruncationSpec& trunc);
// sum over ordered (i, j) of Q_ij u^{i+j} i j d_{q_i} d_{q_j}
DiffOperator build_Qplus(const TruncationSpec& trunc);
// 2 sum_n ((-1)^{n-1}/n!) ad_{X+}^{n-1} Y+ with X+, Y+ from the a-coefficients
DiffOperator build_Qplus_nested(const TruncationSpec& trunc);

// Constraint operators for exp(F_K): hatted L_m in t for m >= -1, and the
// odd-variable reduction L_{2m} - (2m+3) d_{q_{2m+3}} in q for m >= 1.
DiffOperator build_Vhat(int m, const TruncationSpec& trunc);
DiffOperator build_Vtilde(int m, const TruncationSpec& trunc);

// t_k -> (2k-1)!! q_{2k+1} on multipliers, d_{t_k} -> d_{q_{2k+1}} / (2k-1)!!.
DiffOperator convert_t_to_q(const DiffOperator& d);
// Terms whose variables all have odd index.
DiffOperator odd_part(const DiffOperator& d);

// q_c d_d (c > d) -> -(c/d) q_d d_c and q_a q_b -> -a b d_a d_b; anything else
// is outside the domain and throws.
DiffOperator xi(const DiffOperator& d);

// Variable images for a substitution. Images must be homogeneous of the
// weight of the variable they replace.
class SubstitutionMap {
 public:
  SubstitutionMap(Alphabet from, std::map<int, GradedPoly> images);

  Alphabet from() const { return from_; }
  const std::map<int, GradedPoly>& images() const { return images_; }

 private:
  Alphabet from_;
  std::map<int, GradedPoly> images_;
};

// p with every variable replaced; u is kept. The result uses the images'
// alphabet and the truncation `trunc`.
GradedPoly substitute(const GradedPoly& p, const SubstitutionMap& s, const TruncationSpec& trunc);

// phi_k = Dhat^k z with Dhat = (u + z)^2 z d/dz, z^m -> q_m.
std::vector<GradedPoly> phi_polynomials(int k_max, const TruncationSpec& trunc);
SubstitutionMap phi_substitution(int k_max, const TruncationSpec& trunc);
// t_k -> (2k-1)!! q_{2k+1}
SubstitutionMap odd_substitution(int k_max, const TruncationSpec& trunc);

}  // namespace taulink
