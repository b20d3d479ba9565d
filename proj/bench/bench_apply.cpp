#include <benchmark/benchmark.h>

#include "taulink/named_series.hpp"
#include "taulink/tau.hpp"

using namespace taulink;

namespace {

// exp(F_K(q)) and sum a_m u^m L_m on the margin truncation of (U, W).
struct Workload {
  GradedPoly tau;
  DiffOperator op;
};

const Workload& workload(int u, int w) {
  static std::map<std::pair<int, int>, Workload> cache;
  auto it = cache.find({u, w});
  if (it == cache.end()) {
    const TruncationSpec trunc = margin_truncation(u, w);
    Workload load{fk_series(solve_fk(trunc.weight_max), Alphabet::q, trunc).exp_part,
                  u_weighted_sum(indexed(a_coefficients(u).coeffs), trunc)};
    it = cache.emplace(std::make_pair(u, w), std::move(load)).first;
  }
  return it->second;
}

void BM_apply(benchmark::State& state, Kernel k) {
  const Workload& load = workload(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_operator(load.op, load.tau, k));
  state.counters["terms"] = static_cast<double>(load.tau.size());
}

void BM_exp_apply(benchmark::State& state, Kernel k) {
  const Workload& load = workload(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(exp_apply(load.op, load.tau, k));
  state.counters["terms"] = static_cast<double>(load.tau.size());
}

}  // namespace

BENCHMARK_CAPTURE(BM_apply, serial, Kernel::serial)->Args({4, 9})->Args({6, 12})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_apply, parallel, Kernel::parallel)->Args({4, 9})->Args({6, 12})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_exp_apply, serial, Kernel::serial)->Args({4, 9})->Args({6, 12})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_exp_apply, parallel, Kernel::parallel)->Args({4, 9})->Args({6, 12})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
