#include "wfa/tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "wfa/linalg.hpp"

namespace wfa {

namespace {

double op_norm_kind(const Matrix& m, NormKind kind) {
  return kind == NormKind::L2 ? linalg::spectral_norm(m) : linalg::norm_l1(m);
}

double family_norm(const std::vector<Matrix>& gens, const Vector& logd, NormKind kind) {
  const Vector d = logd.array().exp();
  const Vector dinv = (-logd).array().exp();
  double worst = 0.0;
  for (const auto& g : gens) worst = std::max(worst, op_norm_kind(d.asDiagonal() * g * dinv.asDiagonal(), kind));
  return worst;
}

TailBoundParams with_scaling(const Matrix& s, NormKind kind, std::string method) {
  TailBoundParams p;
  p.scaling = s;
  p.scaling_inv = s.inverse();
  p.norm = kind;
  p.method = std::move(method);
  return p;
}

// Weighted observability Gramian P = sum_o o o^T + c sum_s tau_s^T P tau_s.
// Then ||tau_s v||_P <= c^{-1/2} ||v||_P for every s, so the Cholesky factor
// gives a working norm whose one-step growth is at most c^{-1/2}.
std::vector<Matrix> gramian_scalings(const std::vector<Matrix>& gens, const std::vector<Vector>& observers,
                                     double gamma) {
  std::vector<Matrix> out;
  if (gens.empty()) return out;
  const auto n = gens.front().rows();
  if (n == 0 || n > 24 || observers.empty()) return out;
  const auto n2 = n * n;
  Matrix k = Matrix::Zero(n2, n2);
  for (const auto& g : gens) {
    const Matrix gt = g.transpose();
    // vec(G^T P G) = (G^T kron G^T) vec(P) for column-major vec.
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) k.block(i * n, j * n, n, n) += gt(i, j) * gt;
  }
  const double rho_k = linalg::spectral_radius(k);
  if (!(gamma * gamma * rho_k < 1.0)) return out;
  Matrix q = Matrix::Zero(n, n);
  for (const auto& o : observers) q += o * o.transpose();
  const Eigen::Map<const Vector> qv(q.data(), n2);

  const double lo = 0.5 * std::log(std::max(rho_k, 1e-300));
  const double hi = std::log(1.0 / gamma);
  for (double t : {0.25, 0.5, 0.75}) {
    const double r = std::exp(lo + t * (hi - lo));
    const double c = 1.0 / (r * r);
    const Matrix sys = Matrix::Identity(n2, n2) - c * k;
    const Vector pv = sys.partialPivLu().solve(qv);
    Matrix p = Eigen::Map<const Matrix>(pv.data(), n, n);
    p = 0.5 * (p + p.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(p, Eigen::EigenvaluesOnly);
    const double emin = es.eigenvalues().minCoeff();
    const double emax = es.eigenvalues().maxCoeff();
    if (!(emin > 0.0) || emax / emin > 1e12) continue;
    Eigen::LLT<Matrix> llt(p);
    if (llt.info() != Eigen::Success) continue;
    // ||v||_P^2 = v^T L L^T v = ||L^T v||^2.
    out.push_back(llt.matrixL().transpose());
  }
  return out;
}

}  // namespace

double TailBoundParams::vec_norm(const Vector& v) const {
  const Vector sv = scaling * v;
  return norm == NormKind::L2 ? sv.norm() : sv.lpNorm<1>();
}

double TailBoundParams::dual_norm(const Vector& beta) const {
  const Vector w = scaling_inv.transpose() * beta;
  return norm == NormKind::L2 ? w.norm() : w.lpNorm<Eigen::Infinity>();
}

double TailBoundParams::op_norm(const Matrix& m) const { return op_norm_kind(scaling * m * scaling_inv, norm); }

TailBoundParams block_params(const std::vector<Matrix>& gens, const Matrix& scaling, NormKind kind, int block,
                             double gamma, std::size_t product_budget, bool* complete) {
  if (block < 1) throw ValidationError("block length must be at least 1");
  TailBoundParams p = with_scaling(scaling, kind, "");
  p.gamma = gamma;
  p.block = block;
  if (complete) *complete = true;
  const auto n = scaling.rows();

  std::vector<Matrix> conj;
  for (const auto& g : gens) conj.push_back(scaling * g * p.scaling_inv);

  // K[r] = max over words of length r of the working operator norm.
  std::vector<double> k(block + 1, 0.0);
  k[0] = 1.0;
  std::vector<Matrix> level{Matrix::Identity(n, n)};
  for (int r = 1; r <= block; ++r) {
    if (level.size() * conj.size() > product_budget) {
      if (complete) *complete = false;
      p.theta = std::numeric_limits<double>::infinity();
      return p;
    }
    std::vector<Matrix> next;
    next.reserve(level.size() * conj.size());
    for (const auto& m : level)
      for (const auto& g : conj) {
        Matrix prod = g * m;
        k[r] = std::max(k[r], op_norm_kind(prod, kind));
        next.push_back(std::move(prod));
      }
    level = std::move(next);
  }

  double theta = std::pow(k[block], 1.0 / block);
  if (!(theta > 0.0)) {
    // Every product of length `block` vanishes; any positive theta works
    // for those, so pick the smallest one covering the shorter products.
    theta = 0.0;
    for (int r = 1; r < block; ++r) theta = std::max(theta, std::pow(k[r], 1.0 / r));
  }
  p.theta = theta;
  double c = 1.0;
  for (int r = 1; r < block; ++r)
    if (k[r] > 0.0) c = std::max(c, k[r] / std::pow(theta, r));
  p.block_const = c;
  return p;
}

Matrix balance_diagonal(const std::vector<Matrix>& gens, NormKind kind) {
  if (gens.empty()) return Matrix(0, 0);
  const auto n = gens.front().rows();
  Vector logd = Vector::Zero(n);
  const double bound = std::log(1e6);
  double best = family_norm(gens, logd, kind);
  for (double step = 1.0; step > 1e-3; step *= 0.5) {
    bool improved = true;
    for (int sweep = 0; sweep < 50 && improved; ++sweep) {
      improved = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        for (double dir : {1.0, -1.0}) {
          Vector trial = logd;
          trial(i) = std::clamp(trial(i) + dir * step, -bound, bound);
          const double val = family_norm(gens, trial, kind);
          if (val < best * (1.0 - 1e-12)) {
            best = val;
            logd = trial;
            improved = true;
          }
        }
      }
    }
  }
  // Normalize so the scales are centered around 1.
  logd.array() -= logd.mean();
  return Matrix(logd.array().exp().matrix().asDiagonal());
}

std::vector<TailBoundParams> certified_tail_candidates(const std::vector<Matrix>& gens,
                                                       const std::vector<Vector>& observers, double gamma,
                                                       const TailOptions& opt) {
  std::vector<TailBoundParams> out;
  if (gens.empty()) return out;
  const auto n = gens.front().rows();

  struct Norm {
    Matrix s;
    NormKind kind;
    std::string name;
  };
  std::vector<Norm> norms;
  norms.push_back({Matrix::Identity(n, n), NormKind::L2, "identity-l2"});
  if (opt.try_balanced && n > 1) norms.push_back({balance_diagonal(gens, NormKind::L2), NormKind::L2, "balanced-l2"});
  if (opt.try_gramian)
    for (auto& s : gramian_scalings(gens, observers, gamma)) norms.push_back({std::move(s), NormKind::L2, "gramian-l2"});
  if (opt.try_l1) {
    norms.push_back({Matrix::Identity(n, n), NormKind::L1, "identity-l1"});
    if (opt.try_balanced && n > 1) norms.push_back({balance_diagonal(gens, NormKind::L1), NormKind::L1, "balanced-l1"});
  }

  for (const auto& nm : norms) {
    for (int m = 1; m <= opt.max_block; ++m) {
      bool complete = true;
      TailBoundParams p = block_params(gens, nm.s, nm.kind, m, gamma, opt.product_budget, &complete);
      if (!complete) break;
      p.method = nm.name + "/m=" + std::to_string(m);
      if (gamma * p.theta < 1.0 && std::isfinite(p.block_const)) out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace wfa
