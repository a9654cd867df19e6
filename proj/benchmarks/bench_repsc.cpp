#include <benchmark/benchmark.h>

#include "repsc/algorithms.hpp"
#include "repsc/metrics.hpp"
#include "repsc/rng.hpp"
#include "repsc/rsbm.hpp"
#include "repsc/spectral.hpp"

using namespace repsc;

namespace {

struct Instance {
  ClusterAssignment ground_truth;
  Graph representation;
  Graph similarity;
};

Instance make_instance(int n, int k, int d, std::uint64_t seed) {
  auto gt = ground_truth_assignment(n, k);
  Graph rep = make_d_regular_representation(n, k, d, gt);
  Graph sim = sample_rsbm(rep, gt, RsbmParams{}, seed);
  return Instance{std::move(gt), std::move(rep), std::move(sim)};
}

void BM_SampleRsbm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto gt = ground_truth_assignment(n, 4);
  Graph rep = make_d_regular_representation(n, 4, 12, gt);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Graph g = sample_rsbm(rep, gt, RsbmParams{}, seed++);
    benchmark::DoNotOptimize(g.adjacency().data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SampleRsbm)->Arg(240)->Arg(480)->Arg(960)->Complexity(benchmark::oNSquared);

void BM_Laplacian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto instance = make_instance(n, 4, 12, 1);
  for (auto _ : state) {
    auto bundle = laplacian(instance.similarity);
    benchmark::DoNotOptimize(bundle.laplacian.data());
  }
}
BENCHMARK(BM_Laplacian)->Arg(240)->Arg(960);

void BM_NullBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto instance = make_instance(n, 4, 12, 2);
  for (auto _ : state) {
    auto basis = constraint_null_basis(instance.representation);
    benchmark::DoNotOptimize(basis.basis.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_NullBasis)->Arg(120)->Arg(240)->Arg(480)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SmallestEigenpairs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto instance = make_instance(n, 4, 12, 3);
  auto bundle = laplacian(instance.similarity);
  for (auto _ : state) {
    auto pairs = smallest_eigenpairs(bundle.laplacian, 5);
    benchmark::DoNotOptimize(pairs.values.data());
  }
}
BENCHMARK(BM_SmallestEigenpairs)->Arg(240)->Arg(480)->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State& state) {
  Rng rng(9);
  const int n = 1024, dims = 8;
  Eigen::MatrixXd points(n, dims);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < dims; ++j) points(i, j) = rng.uniform() + (i % 8) * 3.0;
  KMeansConfig cfg;
  cfg.n_clusters = 8;
  cfg.n_restarts = 10;
  cfg.seed = 5;
  for (auto _ : state) {
    auto result = cluster_rows(points, cfg);
    benchmark::DoNotOptimize(result.inertia);
  }
}
BENCHMARK(BM_KMeans)->Unit(benchmark::kMillisecond);

void BM_UrepscEndToEnd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto instance = make_instance(n, 4, 12, 4);
  KMeansConfig cfg;
  cfg.seed = 6;
  cfg.n_restarts = 10;
  for (auto _ : state) {
    auto out = urepsc(instance.similarity, instance.representation, 4, cfg);
    benchmark::DoNotOptimize(out.assignment.labels().data());
  }
}
BENCHMARK(BM_UrepscEndToEnd)->Arg(240)->Arg(480)->Unit(benchmark::kMillisecond);

void BM_Misclustering(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int n = 60 * k;
  Rng rng(12);
  std::vector<int> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = static_cast<int>(rng.uniform_index(k));
    b[i] = static_cast<int>(rng.uniform_index(k));
  }
  ClusterAssignment truth(a, k), predicted(b, k);
  for (auto _ : state) {
    auto m = misclustering(truth, predicted);
    benchmark::DoNotOptimize(m.fraction);
  }
}
BENCHMARK(BM_Misclustering)->Arg(8)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
