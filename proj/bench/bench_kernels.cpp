// Serial reference kernels against their OpenMP counterparts on the same
// inputs. Run with OMP_NUM_THREADS set to the number of cores to compare.

#include <benchmark/benchmark.h>

#include <vector>

#include "wfa/kernels.hpp"
#include "wfa/metric.hpp"
#include "wfa/parallel.hpp"
#include "wfa/rng.hpp"

namespace {

using namespace wfa;

Wfa bench_wfa(Eigen::Index n, std::size_t k) {
  Rng rng(7);
  std::vector<std::string> names;
  std::vector<Matrix> t;
  for (std::size_t s = 0; s < k; ++s) {
    names.push_back(std::string(1, static_cast<char>('a' + s)));
    Matrix m = rng.matrix(n, n);
    t.push_back(m * (0.9 / m.norm()));
  }
  return Wfa(Alphabet(names), rng.vector(n), rng.vector(n), t);
}

std::vector<kernels::ProductNode> product_level(const std::vector<Matrix>& gens, int depth) {
  std::vector<kernels::ProductNode> level(1);
  level[0].m = Matrix::Identity(gens[0].rows(), gens[0].cols());
  for (int d = 0; d < depth; ++d) {
    std::vector<kernels::ProductNode> next;
    std::vector<kernels::ProductStats> stats;
    kernels::serial::expand_level(level, gens, next, stats);
    level = std::move(next);
  }
  return level;
}

template <bool Parallel>
void BM_ExpandLevel(benchmark::State& state) {
  const Wfa a = bench_wfa(state.range(0), 2);
  const auto level = product_level(a.transitions(), 10);
  std::vector<kernels::ProductNode> children;
  std::vector<kernels::ProductStats> stats;
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::omp::expand_level(level, a.transitions(), children, stats);
    else
      kernels::serial::expand_level(level, a.transitions(), children, stats);
    benchmark::DoNotOptimize(children.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(children.size()));
}

template <bool Parallel>
void BM_ExpandNodes(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const Wfa a = bench_wfa(n, 3);
  Rng rng(8);
  kernels::TailModel tm{Matrix::Identity(n, n), NormKind::L2, 1.5};
  std::vector<kernels::SearchNode> parents(4096);
  for (auto& p : parents) {
    p.u = rng.vector(n);
    p.ub = 1e300;
  }
  std::vector<kernels::SearchNode> children;
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::omp::expand_nodes(a, 0.8, tm, parents, children);
    else
      kernels::serial::expand_nodes(a, 0.8, tm, parents, children);
    benchmark::DoNotOptimize(children.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(children.size()));
}

template <bool Parallel>
void BM_TruncatedSeminorm(benchmark::State& state) {
  const Wfa a = bench_wfa(4, 2);
  const auto depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    kernels::TruncatedResult r = Parallel ? kernels::omp::truncated_seminorm(a, a.alpha(), 0.8, depth)
                                          : kernels::serial::truncated_seminorm(a, a.alpha(), 0.8, depth);
    benchmark::DoNotOptimize(r.value);
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << depth));
}

void BM_Distance(benchmark::State& state) {
  parallel::set_threads(static_cast<int>(state.range(0)));
  const Wfa a = bench_wfa(3, 2), b = bench_wfa(2, 2);
  SearchOptions opt;
  opt.batch = 256;
  for (auto _ : state) benchmark::DoNotOptimize(distance(a, b, 0.8, opt).upper);
}

}  // namespace

BENCHMARK(BM_ExpandLevel<false>)->Arg(4)->Arg(16);
BENCHMARK(BM_ExpandLevel<true>)->Arg(4)->Arg(16);
BENCHMARK(BM_ExpandNodes<false>)->Arg(4)->Arg(32);
BENCHMARK(BM_ExpandNodes<true>)->Arg(4)->Arg(32);
BENCHMARK(BM_TruncatedSeminorm<false>)->Arg(12)->Arg(16);
BENCHMARK(BM_TruncatedSeminorm<true>)->Arg(12)->Arg(16);
BENCHMARK(BM_Distance)->Arg(1)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
