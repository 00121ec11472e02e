#include "wfa/jsr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wfa/kernels.hpp"
#include "wfa/linalg.hpp"

namespace wfa {

namespace {

void check_family(const std::vector<Matrix>& mats) {
  if (mats.empty()) throw ValidationError("matrix family must not be empty");
  const auto n = mats.front().rows();
  for (const auto& m : mats)
    if (m.rows() != n || m.cols() != n) throw ValidationError("matrix family must consist of square matrices of one size");
}

bool lex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

JsrBounds jsr_bounds(const std::vector<Matrix>& mats, int depth, std::size_t budget) {
  check_family(mats);
  if (depth < 1) throw ValidationError("depth must be at least 1");
  if (budget < 1) throw ValidationError("budget must be at least 1");
  const auto n = mats.front().rows();
  const double inf = std::numeric_limits<double>::infinity();

  JsrBounds out;
  out.upper = inf;
  if (n == 0) {
    out.upper = 0.0;
    return out;
  }
  double best_log_lower = -inf;
  int best_len = 1;

  std::vector<kernels::ProductNode> level(1);
  level[0].m = Matrix::Identity(n, n);
  level[0].m /= linalg::spectral_norm(level[0].m);
  level[0].log_scale = 0.0;

  std::vector<kernels::ProductNode> children;
  std::vector<kernels::ProductStats> stats;
  for (int t = 1; t <= depth; ++t) {
    kernels::expand_level(level, mats, children, stats);
    out.depth = t;

    double max_log2 = -inf, max_log1 = -inf, max_loginf = -inf;
    std::vector<std::size_t> keep;
    keep.reserve(children.size());
    for (std::size_t j = 0; j < children.size(); ++j) {
      const auto& st = stats[j];
      max_log2 = std::max(max_log2, st.log_norm2);
      max_log1 = std::max(max_log1, st.log_norm1);
      max_loginf = std::max(max_loginf, st.log_norm_inf);
      // Compare rho^{1/t} across lengths through log_rho / t. Differences at
      // rounding level count as ties, so powers of the same cycle keep the
      // shortest word.
      const double cand = st.log_rho / t;
      const double cur = best_log_lower / best_len;
      const double slack = cur > -inf ? 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(cur)) : 0.0;
      if (st.log_rho > -inf &&
          (cand > cur + slack || (cand >= cur - slack && lex_less(children[j].word, out.witness)))) {
        best_log_lower = st.log_rho;
        best_len = t;
        out.witness = children[j].word;
      }
      if (st.log_norm2 > -inf) keep.push_back(j);
    }

    if (out.complete) {
      const double lvl = std::min({max_log2, max_log1, max_loginf});
      out.upper = std::min(out.upper, lvl == -inf ? 0.0 : std::exp(lvl / t));
    }

    // Every product of this length vanished, so do all longer ones.
    if (keep.empty()) break;

    if (keep.size() > budget) {
      // Children are in lexicographic order; a stable sort keeps that order
      // among equal norms.
      std::stable_sort(keep.begin(), keep.end(),
                       [&](std::size_t x, std::size_t y) { return stats[x].log_norm2 > stats[y].log_norm2; });
      keep.resize(budget);
      std::sort(keep.begin(), keep.end());
      out.complete = false;
    }
    std::vector<kernels::ProductNode> next;
    next.reserve(keep.size());
    for (std::size_t j : keep) next.push_back(std::move(children[j]));
    level = std::move(next);
  }

  out.lower = best_log_lower == -inf ? 0.0 : std::exp(best_log_lower / best_len);
  // A single generator's joint spectral radius is its spectral radius.
  if (mats.size() == 1) out.upper = std::min(out.upper, out.lower * (1.0 + 1e-10));
  out.upper = std::max(out.upper, out.lower);
  return out;
}

JsrBounds wfa_spectral_radius(const Wfa& a, int depth, std::size_t budget) {
  return jsr_bounds(a.transitions(), depth, budget);
}

Eigen::Index algebra_dimension(const std::vector<Matrix>& mats, double tol) {
  check_family(mats);
  const auto n = mats.front().rows();
  const auto n2 = n * n;
  if (n == 0) return 0;

  std::vector<Matrix> gens;
  for (const auto& m : mats) {
    const double s = linalg::spectral_norm(m);
    if (s > 0.0) gens.push_back(m / s);
  }

  // Orthonormal (Frobenius) basis of the span, grown by closing under
  // left multiplication by the generators.
  std::vector<Vector> basis;
  auto try_add = [&](const Matrix& m) {
    Vector v = Eigen::Map<const Vector>(m.data(), n2);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(v) * b;
    const double r = v.norm();
    if (r <= tol) return false;
    basis.push_back(v / r);
    return true;
  };

  try_add(Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  for (std::size_t next = 0; next < basis.size() && static_cast<Eigen::Index>(basis.size()) < n2; ++next) {
    const Matrix b = Eigen::Map<const Matrix>(basis[next].data(), n, n);
    for (const auto& g : gens) {
      if (static_cast<Eigen::Index>(basis.size()) >= n2) break;
      try_add(g * b);
    }
  }
  return static_cast<Eigen::Index>(basis.size());
}

bool is_irreducible(const std::vector<Matrix>& mats, double tol) {
  check_family(mats);
  const auto n = mats.front().rows();
  return algebra_dimension(mats, tol) == n * n;
}

bool wfa_irreducible(const Wfa& a, double tol) { return is_irreducible(a.transitions(), tol); }

double hausdorff_distance(const std::vector<Matrix>& m1, const std::vector<Matrix>& m2) {
  check_family(m1);
  check_family(m2);
  if (m1.front().rows() != m2.front().rows()) throw ValidationError("matrix families have different dimensions");
  auto directed = [](const std::vector<Matrix>& x, const std::vector<Matrix>& y) {
    double sup = 0.0;
    for (const auto& a : x) {
      double inf = std::numeric_limits<double>::infinity();
      for (const auto& b : y) inf = std::min(inf, linalg::spectral_norm(a - b));
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(directed(m1, m2), directed(m2, m1));
}

}  // namespace wfa
