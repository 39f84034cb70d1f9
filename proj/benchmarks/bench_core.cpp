#include <benchmark/benchmark.h>

#include "nlpsel/glm.hpp"
#include "nlpsel/screening.hpp"
#include "nlpsel/selection.hpp"
#include "nlpsel/simulate.hpp"

using namespace nlpsel;

namespace {

Dataset make_data(int n, int p, int n_causal, std::uint64_t seed) {
  SimSpec spec;
  spec.n = n;
  spec.p = p;
  spec.block_size = 10;
  spec.rho = 0.5;
  spec.n_causal = n_causal;
  spec.seed = seed;
  Dataset ds;
  ds.X = simulate_genotypes(spec);
  auto [causal, effects] = sample_causal_effects(spec);
  ds.y = simulate_phenotype(ds.X, causal, effects, seed);
  for (int j = 0; j < p; ++j) ds.names.push_back("x" + std::to_string(j));
  return standardize(ds);
}

}  // namespace

static void BM_FitLogistic(benchmark::State& state) {
  const Dataset ds = make_data(static_cast<int>(state.range(0)), 4, 2, 1);
  Eigen::MatrixXd X(ds.n(), 5);
  X.col(0).setOnes();
  X.rightCols(4) = ds.X;
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_logistic(X, ds.y, Eigen::VectorXd::Zero(5)));
}
BENCHMARK(BM_FitLogistic)->Arg(500)->Arg(2000);

static void BM_ScreenPass(benchmark::State& state) {
  const Dataset ds = make_data(500, static_cast<int>(state.range(0)), 5, 1);
  std::vector<int> all(ds.p());
  for (int j = 0; j < ds.p(); ++j) all[j] = j;
  const VariableSet candidates(all);
  for (auto _ : state)
    benchmark::DoNotOptimize(screen(ds, candidates, VariableSet{}, 1, 0.3));
}
BENCHMARK(BM_ScreenPass)->Arg(500)->Arg(2000);

static void BM_LaplaceEvidence(benchmark::State& state) {
  const Dataset ds = make_data(500, 16, 4, 1);
  PriorConfig prior;
  const VariableSet model(std::vector<int>{0, 3, 7, 11});
  for (auto _ : state)
    benchmark::DoNotOptimize(
        laplace_log_evidence(model, VariableSet{}, ds, prior));
}
BENCHMARK(BM_LaplaceEvidence);

static void BM_HppmExhaustive(benchmark::State& state) {
  const Dataset ds = make_data(300, static_cast<int>(state.range(0)), 2, 1);
  std::vector<int> all(ds.p());
  for (int j = 0; j < ds.p(); ++j) all[j] = j;
  const VariableSet candidates(all);
  PriorConfig prior;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        search_hppm(candidates, VariableSet{}, ds, prior, 12));
}
BENCHMARK(BM_HppmExhaustive)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
