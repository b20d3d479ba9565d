#pragma once

#include <string_view>
#include <vector>

#include "taulink/rational.hpp"

namespace taulink {

enum class SequenceName { bernoulli, b, C, double_factorial };

std::string_view name_of(SequenceName name);

// Values for indices first_index .. computed_up_to(). Extending a table never
// changes entries that were already present.
struct SequenceTable {
  SequenceName name;
  int first_index = 0;
  std::vector<Rational> values;

  int computed_up_to() const { return first_index + static_cast<int>(values.size()) - 1; }
  const Rational& at(int index) const;
};

/// B_n from the expansion of t/(e^t - 1). Memoized; safe to call concurrently.
Rational bernoulli(int n);

/// B_{2k} / (2k (2k-1)), the coefficient of z^{1-2k} in the Stirling series.
Rational bernoulli_tilde(int k);

/// n!! with (-1)!! = 0!! = 1.
Integer double_factorial(int n);

/// b_1..b_K from (n+1) b_n = b_{n-1} - sum_{k=2}^{n-1} k b_k b_{n+1-k},
/// b_1 = 1, b_2 = 1/3.
SequenceTable b_sequence(int count);

/// C_0..C_K summed over compositions of Bernoulli products. Every entry is
/// checked against C_i = (2i+1)!! b_{2i+1}; a disagreement throws
/// ConsistencyError.
SequenceTable C_sequence(int max_index);

// Single-entry accessors backed by the same caches.
Rational b_coefficient(int n);
Rational C_coefficient(int i);

/// sum_{i=0}^{k} (-1)^i C_i C_{k-i}
Rational alternating_C_convolution(int k);

}  // namespace taulink
