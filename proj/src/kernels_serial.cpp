#include <cmath>
#include <limits>

#include "wfa/kernels.hpp"
#include "wfa/linalg.hpp"
#include "wfa/parallel.hpp"

namespace wfa::kernels {

namespace detail {

namespace {
double safe_log(double x) { return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity(); }
}  // namespace

void product_child(const ProductNode& parent, const Matrix& gen, Symbol s, ProductNode& child, ProductStats& stats) {
  Matrix p = gen * parent.m;
  const double n2 = linalg::spectral_norm(p);
  stats.log_norm2 = safe_log(n2) + parent.log_scale;
  stats.log_norm1 = safe_log(linalg::norm_l1(p)) + parent.log_scale;
  stats.log_norm_inf = safe_log(linalg::norm_inf(p)) + parent.log_scale;
  stats.log_rho = safe_log(linalg::spectral_radius(p)) + parent.log_scale;
  if (n2 > 0.0) p /= n2;
  child.m = std::move(p);
  child.log_scale = stats.log_norm2;
  child.word = parent.word;
  child.word.push_back(s);
}

double working_norm(const TailModel& tail, const Vector& u) {
  if (tail.scaling.size() == 0) return tail.norm == NormKind::L2 ? u.norm() : u.lpNorm<1>();
  const Vector su = tail.scaling * u;
  return tail.norm == NormKind::L2 ? su.norm() : su.lpNorm<1>();
}

void search_child(const Wfa& a, double gamma, const TailModel& tail, const SearchNode& parent, Symbol s,
                  SearchNode& child) {
  child.u = a.trans(s) * parent.u;
  child.disc = parent.disc * gamma;
  child.acc = parent.acc + child.disc * std::abs(a.beta().dot(child.u));
  child.tail = child.disc * tail.factor * working_norm(tail, child.u);
  child.ub = std::min(child.acc + child.tail, parent.ub);
  child.depth = parent.depth + 1;
  child.word = -1;
}

void truncated_dfs(const Wfa& a, double gamma, int depth, Word& word, const Vector& u, double acc, double disc,
                   TruncatedResult& best) {
  if (static_cast<int>(word.size()) == depth) {
    if (acc > best.value) {
      best.value = acc;
      best.witness = word;
    }
    return;
  }
  const double d = disc * gamma;
  for (Symbol s = 0; s < a.alphabet().size(); ++s) {
    const Vector next = a.trans(s) * u;
    word.push_back(s);
    truncated_dfs(a, gamma, depth, word, next, acc + d * std::abs(a.beta().dot(next)), d, best);
    word.pop_back();
  }
}

}  // namespace detail

namespace serial {

void expand_level(std::span<const ProductNode> level, const std::vector<Matrix>& gens,
                  std::vector<ProductNode>& children, std::vector<ProductStats>& stats) {
  const std::size_t k = gens.size();
  children.resize(level.size() * k);
  stats.resize(level.size() * k);
  for (std::size_t i = 0; i < level.size(); ++i)
    for (std::size_t s = 0; s < k; ++s)
      detail::product_child(level[i], gens[s], static_cast<Symbol>(s), children[i * k + s], stats[i * k + s]);
}

void expand_nodes(const Wfa& a, double gamma, const TailModel& tail, std::span<const SearchNode> parents,
                  std::vector<SearchNode>& children) {
  const std::size_t k = a.alphabet().size();
  children.resize(parents.size() * k);
  for (std::size_t i = 0; i < parents.size(); ++i)
    for (std::size_t s = 0; s < k; ++s)
      detail::search_child(a, gamma, tail, parents[i], static_cast<Symbol>(s), children[i * k + s]);
}

TruncatedResult truncated_seminorm(const Wfa& a, const Vector& v, double gamma, int depth) {
  TruncatedResult best;
  best.value = -1.0;  // any leaf beats this, so the first leaf is recorded
  Word word;
  detail::truncated_dfs(a, gamma, depth, word, v, std::abs(a.beta().dot(v)), 1.0, best);
  return best;
}

}  // namespace serial

void expand_level(std::span<const ProductNode> level, const std::vector<Matrix>& gens,
                  std::vector<ProductNode>& children, std::vector<ProductStats>& stats) {
  if (parallel::threads() > 1)
    omp::expand_level(level, gens, children, stats);
  else
    serial::expand_level(level, gens, children, stats);
}

void expand_nodes(const Wfa& a, double gamma, const TailModel& tail, std::span<const SearchNode> parents,
                  std::vector<SearchNode>& children) {
  if (parallel::threads() > 1)
    omp::expand_nodes(a, gamma, tail, parents, children);
  else
    serial::expand_nodes(a, gamma, tail, parents, children);
}

TruncatedResult truncated_seminorm(const Wfa& a, const Vector& v, double gamma, int depth) {
  if (parallel::threads() > 1) return omp::truncated_seminorm(a, v, gamma, depth);
  return serial::truncated_seminorm(a, v, gamma, depth);
}

}  // namespace wfa::kernels
