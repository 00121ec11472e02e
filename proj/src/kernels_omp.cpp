#include <cmath>

#include <omp.h>

#include "wfa/kernels.hpp"

namespace wfa::kernels::omp {

void expand_level(std::span<const ProductNode> level, const std::vector<Matrix>& gens,
                  std::vector<ProductNode>& children, std::vector<ProductStats>& stats) {
  const std::size_t k = gens.size();
  const auto total = static_cast<std::int64_t>(level.size() * k);
  children.resize(level.size() * k);
  stats.resize(level.size() * k);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < total; ++j) {
    const auto i = static_cast<std::size_t>(j) / k;
    const auto s = static_cast<std::size_t>(j) % k;
    detail::product_child(level[i], gens[s], static_cast<Symbol>(s), children[j], stats[j]);
  }
}

void expand_nodes(const Wfa& a, double gamma, const TailModel& tail, std::span<const SearchNode> parents,
                  std::vector<SearchNode>& children) {
  const std::size_t k = a.alphabet().size();
  const auto total = static_cast<std::int64_t>(parents.size() * k);
  children.resize(parents.size() * k);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < total; ++j) {
    const auto i = static_cast<std::size_t>(j) / k;
    const auto s = static_cast<std::size_t>(j) % k;
    detail::search_child(a, gamma, tail, parents[i], static_cast<Symbol>(s), children[j]);
  }
}

TruncatedResult truncated_seminorm(const Wfa& a, const Vector& v, double gamma, int depth) {
  const std::size_t k = a.alphabet().size();
  // Split the tree at the first level with enough subtrees to share out.
  int split = 0;
  std::size_t tasks = 1;
  while (split < depth && tasks < 256) {
    tasks *= k;
    ++split;
  }

  std::vector<TruncatedResult> part(tasks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks); ++t) {
    Word word(split);
    auto rem = static_cast<std::size_t>(t);
    for (int i = split - 1; i >= 0; --i) {
      word[i] = static_cast<Symbol>(rem % k);
      rem /= k;
    }
    // Same sequence of operations as the serial depth-first walk.
    Vector u = v;
    double acc = std::abs(a.beta().dot(v));
    double disc = 1.0;
    for (Symbol s : word) {
      u = a.trans(s) * u;
      disc *= gamma;
      acc += disc * std::abs(a.beta().dot(u));
    }
    TruncatedResult best;
    best.value = -1.0;
    detail::truncated_dfs(a, gamma, depth, word, u, acc, disc, best);
    part[t] = std::move(best);
  }

  TruncatedResult out;
  out.value = -1.0;
  for (auto& p : part) {
    if (p.value > out.value) out = std::move(p);
  }
  return out;
}

}  // namespace wfa::kernels::omp
