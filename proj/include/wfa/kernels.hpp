#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wfa/core.hpp"
#include "wfa/tail.hpp"

// Hot loops of the library, each in a serial reference version and an
// OpenMP version. Both versions write every output slot with the same
// floating-point operations in the same order, so their results are
// bit-identical; the tests assert this.
namespace wfa::kernels {

/// A matrix product p = exp(log_scale) * m with ||m||_2 = 1.
struct ProductNode {
  Matrix m;
  double log_scale = 0.0;
  Word word;
};

/// Logarithms of the norms and spectral radius of a product (-inf for 0).
struct ProductStats {
  double log_norm2 = 0.0;
  double log_norm1 = 0.0;
  double log_norm_inf = 0.0;
  double log_rho = 0.0;
};

/// A prefix-tree node of the seminorm branch and bound. u = tau_y v for the
/// prefix y, acc = sum_{t<=|y|} gamma^t |beta tau_{y<=t} v|, disc = gamma^|y|.
struct SearchNode {
  Vector u;
  double acc = 0.0;
  double disc = 1.0;
  double tail = 0.0;
  double ub = 0.0;
  int depth = 0;
  std::int64_t word = -1;
};

/// Working norm and the constant turning ||u|| into a tail bound:
/// tail(u at depth d) = gamma^d * factor * ||u||.
struct TailModel {
  Matrix scaling;
  NormKind norm = NormKind::L2;
  double factor = 0.0;
};

struct TruncatedResult {
  double value = 0.0;
  Word witness;
};

namespace serial {
/// Children of every node in `level`, child i*|gens|+s = gens[s] * parent i,
/// normalized; stats[i*|gens|+s] describes the unnormalized child.
void expand_level(std::span<const ProductNode> level, const std::vector<Matrix>& gens,
                  std::vector<ProductNode>& children, std::vector<ProductStats>& stats);
/// Child i*|Sigma|+s is parent i followed by symbol s; ub is clamped to the parent's.
void expand_nodes(const Wfa& a, double gamma, const TailModel& tail, std::span<const SearchNode> parents,
                  std::vector<SearchNode>& children);
/// max over words x of length T of sum_{t<=T} gamma^t |beta tau_{x<=t} v|;
/// the witness is the lexicographically first maximizer.
TruncatedResult truncated_seminorm(const Wfa& a, const Vector& v, double gamma, int depth);
}  // namespace serial

namespace omp {
void expand_level(std::span<const ProductNode> level, const std::vector<Matrix>& gens,
                  std::vector<ProductNode>& children, std::vector<ProductStats>& stats);
void expand_nodes(const Wfa& a, double gamma, const TailModel& tail, std::span<const SearchNode> parents,
                  std::vector<SearchNode>& children);
TruncatedResult truncated_seminorm(const Wfa& a, const Vector& v, double gamma, int depth);
}  // namespace omp

// Dispatch on parallel::threads(): serial when 1, OpenMP otherwise.
void expand_level(std::span<const ProductNode> level, const std::vector<Matrix>& gens,
                  std::vector<ProductNode>& children, std::vector<ProductStats>& stats);
void expand_nodes(const Wfa& a, double gamma, const TailModel& tail, std::span<const SearchNode> parents,
                  std::vector<SearchNode>& children);
TruncatedResult truncated_seminorm(const Wfa& a, const Vector& v, double gamma, int depth);

namespace detail {
// Per-slot work shared by both versions.
void product_child(const ProductNode& parent, const Matrix& gen, Symbol s, ProductNode& child, ProductStats& stats);
void search_child(const Wfa& a, double gamma, const TailModel& tail, const SearchNode& parent, Symbol s,
                  SearchNode& child);
double working_norm(const TailModel& tail, const Vector& u);
/// Depth-first maximization below a fixed prefix; `acc` already includes the
/// prefix's terms. Updates best only on strict improvement.
void truncated_dfs(const Wfa& a, double gamma, int depth, Word& word, const Vector& u, double acc, double disc,
                   TruncatedResult& best);
}  // namespace detail

}  // namespace wfa::kernels
