#include "taulink/sequences.hpp"

#include <mutex>
#include <string>

namespace taulink {
namespace {

// Append-only memo table. `extend(values, n)` must push entries until
// values.size() > n, reading only entries already present.
template <typename Extend>
class MemoTable {
 public:
  explicit MemoTable(Extend extend) : extend_(std::move(extend)) {}

  Rational get(int n) {
    std::lock_guard lock(mutex_);
    if (n >= static_cast<int>(values_.size())) extend_(values_, n);
    return values_[static_cast<std::size_t>(n)];
  }

 private:
  std::mutex mutex_;
  std::vector<Rational> values_;
  Extend extend_;
};

void extend_bernoulli(std::vector<Rational>& c, int n) {
  // c holds the coefficients of (e^t - 1)/t inverted: t/(e^t-1) = sum c_k t^k.
  // Stored as B_k = k! c_k, so recover c_k on the fly.
  std::vector<Rational> series;
  series.reserve(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    series.emplace_back(c[k] / Rational(factorial(static_cast<unsigned>(k))));
  }
  while (static_cast<int>(series.size()) <= n) {
    const int m = static_cast<int>(series.size());
    Rational acc = 0;
    if (m > 0) {
      for (int k = 1; k <= m; ++k) {
        acc -= series[static_cast<std::size_t>(m - k)] / Rational(factorial(static_cast<unsigned>(k + 1)));
      }
    } else {
      acc = 1;
    }
    series.push_back(acc);
    c.emplace_back(acc * Rational(factorial(static_cast<unsigned>(m))));
  }
}

void extend_b(std::vector<Rational>& b, int n) {
  // b[0] is a placeholder so that b[i] = b_i.
  if (b.empty()) {
    b.emplace_back(0);
    b.emplace_back(1);
    b.emplace_back(make_rational(1, 3));
  }
  while (static_cast<int>(b.size()) <= n) {
    const int m = static_cast<int>(b.size());
    Rational rhs = b[static_cast<std::size_t>(m - 1)];
    for (int k = 2; k <= m - 1; ++k) {
      rhs -= k * b[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(m + 1 - k)];
    }
    b.emplace_back(rhs / (m + 1));
  }
}

// C_i = sum_{m=1}^{i} 1/m! sum_{k_1..k_m >= 1, sum 2k_j = i+m} prod Btilde_{k_j}.
// ways[m][s] accumulates the inner sum over compositions of s into m parts.
void extend_C(std::vector<Rational>& C, int n) {
  C.clear();
  const int max_parts = n;
  const int max_sum = n;  // (i + m)/2 <= i <= n
  std::vector<std::vector<Rational>> ways(static_cast<std::size_t>(max_parts) + 1,
                                          std::vector<Rational>(static_cast<std::size_t>(max_sum) + 1));
  if (max_parts >= 0) ways[0][0] = 1;
  for (int m = 1; m <= max_parts; ++m) {
    for (int s = m; s <= max_sum; ++s) {
      Rational acc = 0;
      for (int k = 1; k <= s - (m - 1); ++k) {
        acc += bernoulli_tilde(k) * ways[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(s - k)];
      }
      ways[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)] = acc;
    }
  }
  C.emplace_back(1);
  for (int i = 1; i <= n; ++i) {
    Rational acc = 0;
    for (int m = 1; m <= i; ++m) {
      if ((i + m) % 2 != 0) continue;
      acc += ways[static_cast<std::size_t>(m)][static_cast<std::size_t>((i + m) / 2)] /
             Rational(factorial(static_cast<unsigned>(m)));
    }
    const Rational linked = Rational(double_factorial(2 * i + 1)) * b_coefficient(2 * i + 1);
    if (acc != linked) {
      throw ConsistencyError("C_" + std::to_string(i) + " = " + to_string(acc) +
                             " disagrees with (2i+1)!! b_{2i+1} = " + to_string(linked));
    }
    C.push_back(acc);
  }
}

auto& bernoulli_table() {
  static MemoTable table(extend_bernoulli);
  return table;
}
auto& b_table() {
  static MemoTable table(extend_b);
  return table;
}
auto& C_table() {
  static MemoTable table(extend_C);
  return table;
}

}  // namespace

std::string_view name_of(SequenceName name) {
  switch (name) {
    case SequenceName::bernoulli: return "B";
    case SequenceName::b: return "b";
    case SequenceName::C: return "C";
    case SequenceName::double_factorial: return "dblfact";
  }
  return "?";
}

const Rational& SequenceTable::at(int index) const {
  if (index < first_index || index > computed_up_to()) {
    throw PreconditionError("index " + std::to_string(index) + " outside table " +
                            std::string(name_of(name)));
  }
  return values[static_cast<std::size_t>(index - first_index)];
}

Rational bernoulli(int n) {
  if (n < 0) throw PreconditionError("bernoulli: negative index");
  return bernoulli_table().get(n);
}

Rational bernoulli_tilde(int k) {
  if (k < 1) throw PreconditionError("bernoulli_tilde: index must be >= 1");
  return bernoulli(2 * k) / (2 * k * (2 * k - 1));
}

Integer double_factorial(int n) {
  if (n < -1) throw PreconditionError("double_factorial: n must be >= -1");
  Integer out = 1;
  for (int k = n; k > 1; k -= 2) out *= k;
  return out;
}

Rational b_coefficient(int n) {
  if (n < 1) throw PreconditionError("b: index must be >= 1");
  return b_table().get(n);
}

Rational C_coefficient(int i) {
  if (i < 0) throw PreconditionError("C: index must be >= 0");
  return C_table().get(i);
}

SequenceTable b_sequence(int count) {
  if (count < 1) throw PreconditionError("b_sequence: count must be >= 1");
  SequenceTable table{SequenceName::b, 1, {}};
  for (int n = 1; n <= count; ++n) table.values.push_back(b_coefficient(n));
  return table;
}

SequenceTable C_sequence(int max_index) {
  if (max_index < 0) throw PreconditionError("C_sequence: index must be >= 0");
  SequenceTable table{SequenceName::C, 0, {}};
  for (int i = 0; i <= max_index; ++i) table.values.push_back(C_coefficient(i));
  return table;
}

Rational alternating_C_convolution(int k) {
  Rational acc = 0;
  for (int i = 0; i <= k; ++i) {
    const Rational term = C_coefficient(i) * C_coefficient(k - i);
    if (i % 2 == 0) acc += term; else acc -= term;
  }
  return acc;
}

}  // namespace taulink
