#pragma once

#include "wfa/core.hpp"

namespace wfa {

inline constexpr double kDefaultRankTol = 1e-9;

/// Linear subspace of R^n held as an orthonormal basis (n x k).
struct Subspace {
  Matrix basis;
  double tol = kDefaultRankTol;

  Eigen::Index ambient_dim() const { return basis.rows(); }
  Eigen::Index dim() const { return basis.cols(); }

  /// Orthogonal projection of v onto the subspace.
  Vector project(const Vector& v) const { return basis * (basis.transpose() * v); }
  /// Component of v orthogonal to the subspace.
  Vector residual(const Vector& v) const { return v - project(v); }
};

/// Largest linear bisimulation W_A: the largest subspace inside ker(beta)
/// that every transition maps into itself. Computed as the decreasing
/// fixed point W_0 = ker(beta), W_{k+1} = {w in W_k : tau_s w in W_k for all s}.
Subspace largest_bisimulation(const Wfa& a, double tol = kDefaultRankTol);

/// Smallest subspace containing alpha and invariant under every transition.
Subspace reachable_subspace(const Wfa& a, double tol = kDefaultRankTol);

bool is_observable(const Wfa& a, double tol = kDefaultRankTol);
bool is_reachable(const Wfa& a, double tol = kDefaultRankTol);

/// u and v realize the same function: the component of u - v orthogonal to
/// W_A is at most tol * (1 + |u - v|).
bool states_bisimilar(const Wfa& a, const Vector& u, const Vector& v, double tol = kDefaultRankTol);

/// Quotient of `a` by a bisimulation `w`, in the coordinates of the
/// orthonormal complement Q of w: alpha' = Q^T alpha, beta' = Q^T beta,
/// tau' = Q^T tau Q. Realizes the same function as `a` from every state:
/// f_{A_v} = f_{A'_{Q^T v}}.
struct Quotient {
  Wfa automaton;
  Matrix complement;  // n x (n - k), orthonormal columns
};
Quotient quotient(const Wfa& a, const Subspace& w);

/// Restriction of `a` to an invariant subspace R containing alpha, in the
/// coordinates of R's orthonormal basis.
Wfa restrict_to(const Wfa& a, const Subspace& r);

/// Reachable restriction followed by the quotient by the largest
/// bisimulation. The result is observable and reachable.
Wfa minimize(const Wfa& a, double tol = kDefaultRankTol);

}  // namespace wfa
