#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wfa/core.hpp"

namespace wfa {

enum class NormKind { L2, L1 };

/// Working norm ||v|| = ||S v||_p and a growth certificate for it.
///
/// Guarantee: for every word x over the family the parameters were computed
/// for, and every vector u,
///     ||tau_x u|| <= block_const * theta^|x| * ||u||.
/// With K_r = max_{|x|=r} ||S tau_x S^{-1}||_p (K_0 = 1), theta = K_m^{1/m}
/// and block_const = max_{r<m} K_r / theta^r. Writing |x| = q m + r and
/// splitting x into q blocks of length m plus a remainder of length r,
/// submultiplicativity gives ||tau_x|| <= K_r K_m^q = (K_r/theta^r) theta^|x|.
struct TailBoundParams {
  double theta = 0.0;
  Matrix scaling;
  Matrix scaling_inv;
  NormKind norm = NormKind::L2;
  int block = 1;
  double block_const = 1.0;
  double gamma = 0.0;
  std::string method;

  double vec_norm(const Vector& v) const;
  /// Dual norm of a covector: sup |beta . v| / ||v||.
  double dual_norm(const Vector& beta) const;
  /// Induced operator norm in the working norm.
  double op_norm(const Matrix& m) const;
  double nu() const { return gamma * theta; }
};

struct TailOptions {
  int max_block = 6;
  /// Cap on the number of products enumerated per (candidate, block length).
  std::size_t product_budget = 200000;
  bool try_balanced = true;
  bool try_gramian = true;
  bool try_l1 = true;
};

/// Candidate working norms tried in order: identity l2, diagonally balanced
/// l2, observability-Gramian l2, identity l1, balanced l1. For each norm,
/// block lengths 1..max_block. Returns every certified (gamma * theta < 1)
/// candidate in that order.
std::vector<TailBoundParams> certified_tail_candidates(const std::vector<Matrix>& gens,
                                                       const std::vector<Vector>& observers, double gamma,
                                                       const TailOptions& opt);

/// Growth certificate for one fixed scaling and block length. theta may be
/// any value when gamma * theta >= 1; callers check nu().
TailBoundParams block_params(const std::vector<Matrix>& gens, const Matrix& scaling, NormKind kind, int block,
                             double gamma, std::size_t product_budget, bool* complete = nullptr);

/// Diagonal similarity D minimizing max_s ||D tau_s D^{-1}|| by coordinate
/// search over log-scales. Entries of D are kept in [1e-6, 1e6].
Matrix balance_diagonal(const std::vector<Matrix>& gens, NormKind kind);

}  // namespace wfa
