#pragma once

#include <cstddef>
#include <vector>

#include "wfa/core.hpp"

namespace wfa {

inline constexpr std::size_t kDefaultJsrBudget = 50000;

struct JsrBounds {
  double lower = 0.0;
  double upper = 0.0;
  int depth = 0;
  /// Product achieving `lower`: the word x with lower = rho(tau_x)^{1/|x|}.
  Word witness;
  /// False when some level had to be pruned to the budget.
  bool complete = true;
};

/// Bounds on the joint spectral radius of `mats` from products of length
/// at most `depth`:
///   lower = max_p rho(p)^{1/|p|} over explored products,
///   upper = min_t min_{k in {1,2,inf}} (max_{|p|=t} ||p||_k)^{1/t}
/// over fully enumerated levels t. Levels are enumerated breadth first and
/// pruned to the `budget` largest products (by 2-norm) when they overflow.
JsrBounds jsr_bounds(const std::vector<Matrix>& mats, int depth, std::size_t budget = kDefaultJsrBudget);

JsrBounds wfa_spectral_radius(const Wfa& a, int depth, std::size_t budget = kDefaultJsrBudget);

/// True when the unital algebra generated by `mats` is all of R^{n x n}.
/// `true` proves irreducibility; `false` may also be returned for families
/// that are irreducible over R but reducible over C.
bool is_irreducible(const std::vector<Matrix>& mats, double tol = 1e-9);
bool wfa_irreducible(const Wfa& a, double tol = 1e-9);

/// Dimension of that algebra.
Eigen::Index algebra_dimension(const std::vector<Matrix>& mats, double tol = 1e-9);

/// Hausdorff distance between two finite sets of matrices under the spectral norm.
double hausdorff_distance(const std::vector<Matrix>& m1, const std::vector<Matrix>& m2);

}  // namespace wfa
