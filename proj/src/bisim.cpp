#include "wfa/bisim.hpp"

#include <algorithm>

#include "wfa/linalg.hpp"

namespace wfa {

namespace {

double max_transition_norm(const Wfa& a) {
  double m = 0.0;
  for (const auto& t : a.transitions()) m = std::max(m, linalg::spectral_norm(t));
  return m;
}

}  // namespace

Subspace largest_bisimulation(const Wfa& a, double tol) {
  const auto n = a.dim();
  const auto nsym = static_cast<Eigen::Index>(a.alphabet().size());
  Matrix basis = linalg::kernel_basis(a.beta().transpose(), tol);
  const double scale = max_transition_norm(a);

  // Each round keeps the part of W_k mapped back into W_k by every tau;
  // dimensions strictly decrease until stable, so at most n rounds.
  for (Eigen::Index round = 0; round <= n && basis.cols() > 0; ++round) {
    const auto k = basis.cols();
    Matrix stacked(n * nsym, k);
    for (Eigen::Index s = 0; s < nsym; ++s) {
      const Matrix image = a.trans(static_cast<Symbol>(s)) * basis;
      stacked.middleRows(s * n, n) = image - basis * (basis.transpose() * image);
    }
    const Matrix coeff = linalg::kernel_basis(stacked, tol, scale);
    if (coeff.cols() == k) break;
    basis = basis * coeff;
  }
  return Subspace{std::move(basis), tol};
}

Subspace reachable_subspace(const Wfa& a, double tol) {
  const auto n = a.dim();
  const auto nsym = static_cast<Eigen::Index>(a.alphabet().size());
  Matrix basis = linalg::range_basis(a.alpha(), tol);
  const double scale = std::max(max_transition_norm(a), 1e-300);

  for (Eigen::Index round = 0; round <= n && basis.cols() > 0 && basis.cols() < n; ++round) {
    const auto k = basis.cols();
    Matrix cand(n, k * (1 + nsym));
    cand.leftCols(k) = basis;
    for (Eigen::Index s = 0; s < nsym; ++s)
      cand.middleCols(k * (1 + s), k) = a.trans(static_cast<Symbol>(s)) * basis / scale;
    Matrix next = linalg::range_basis(cand, tol);
    if (next.cols() == k) break;
    basis = std::move(next);
  }
  return Subspace{std::move(basis), tol};
}

bool is_observable(const Wfa& a, double tol) { return largest_bisimulation(a, tol).dim() == 0; }

bool is_reachable(const Wfa& a, double tol) { return is_observable(reverse(a), tol); }

bool states_bisimilar(const Wfa& a, const Vector& u, const Vector& v, double tol) {
  if (u.size() != a.dim() || v.size() != a.dim())
    throw ValidationError("state vector length does not match automaton dimension");
  const Subspace w = largest_bisimulation(a, tol);
  const Vector d = u - v;
  return w.residual(d).norm() <= tol * (1.0 + d.norm());
}

Quotient quotient(const Wfa& a, const Subspace& w) {
  if (w.ambient_dim() != a.dim()) throw ValidationError("subspace does not live in the automaton's state space");
  Matrix q = linalg::orthogonal_complement(w.basis, a.dim());
  std::vector<Matrix> t;
  t.reserve(a.transitions().size());
  for (const auto& m : a.transitions()) t.emplace_back(q.transpose() * m * q);
  Wfa out(a.alphabet(), q.transpose() * a.alpha(), q.transpose() * a.beta(), std::move(t));
  return Quotient{std::move(out), std::move(q)};
}

Wfa restrict_to(const Wfa& a, const Subspace& r) {
  if (r.ambient_dim() != a.dim()) throw ValidationError("subspace does not live in the automaton's state space");
  const Matrix& b = r.basis;
  std::vector<Matrix> t;
  t.reserve(a.transitions().size());
  for (const auto& m : a.transitions()) t.emplace_back(b.transpose() * m * b);
  return Wfa(a.alphabet(), b.transpose() * a.alpha(), b.transpose() * a.beta(), std::move(t));
}

Wfa minimize(const Wfa& a, double tol) {
  const Wfa reach = restrict_to(a, reachable_subspace(a, tol));
  return quotient(reach, largest_bisimulation(reach, tol)).automaton;
}

}  // namespace wfa
