#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "taulink/tau.hpp"

namespace taulink {

struct RunConfig {
  int u_max = 4;
  int weight_max = 9;
  int order = 12;
  std::uint64_t seed = 0;
  int margin_extra = 0;
  Kernel kernel = Kernel::parallel;
};

// Every suite known to run_suite, in the order `all` runs them.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Runs named suites against one configuration. The two theorem runs (base and
// margin + 3) are computed on first use and shared between suites.
class Verifier {
 public:
  explicit Verifier(RunConfig cfg);
  ~Verifier();

  const RunConfig& config() const { return cfg_; }
  // Throws PreconditionError for an unknown suite.
  Report run(const std::string& suite);

 private:
  const TheoremSides& base();
  const TheoremSides& wider();

  RunConfig cfg_;
  std::optional<TheoremSides> base_;
  std::optional<TheoremSides> wider_;
};

// Individual checks, exposed for the tests.
Report check_lemma_c(int k_max);
Report check_lemma_power(int n_max);
// a_k + 1 in place of a_k must break the power identity at n = 1.
Report check_a_uniqueness(int k_max);
Report check_derivation_round_trip(std::uint64_t seed, int samples, int order);
Report check_functional_equations(int order);
Report check_link_table(int max_sum);
Report check_quadratic_operators(int max_sum);
Report check_zassenhaus_w(const TruncationSpec& trunc, std::uint64_t seed, int samples, Kernel k = Kernel::parallel);
Report check_zassenhaus_l(const TruncationSpec& trunc, std::uint64_t seed, int samples, Kernel k = Kernel::parallel);
Report check_virasoro_brackets(int weight_max, std::uint64_t seed, int samples);
Report check_prop_p4(const TruncationSpec& trunc, Kernel k = Kernel::parallel);
Report check_bridge(int n_max, Kernel k = Kernel::parallel);
Report check_virasoro_anchors(int weight_bound);
Report check_eta_pde(int bivariate_order);
Report check_xi(std::uint64_t seed, int pairs);

// Operator identity term by term; mismatches name the differing terms.
Report compare_operators(std::string name, std::string label, const DiffOperator& lhs, const DiffOperator& rhs);

}  // namespace taulink
