#include "wfa/umdp.hpp"

#include <cmath>

namespace wfa {

namespace {

constexpr double kStochTol = 1e-12;

void check_distribution(const Vector& p, const std::string& what) {
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!(p(i) >= -kStochTol) || p(i) > 1.0 + kStochTol)
      throw ValidationError(what + " has an entry outside [0, 1]");
  if (std::abs(p.sum() - 1.0) > kStochTol) throw ValidationError(what + " does not sum to 1");
}

Vector renormalized(const Vector& p) {
  Vector q = p.cwiseMax(0.0);
  return q / q.sum();
}

}  // namespace

Umdp::Umdp(Alphabet actions, Vector alpha, Vector beta, std::vector<Matrix> trans, double gamma)
    : actions_(std::move(actions)), alpha_(std::move(alpha)), beta_(std::move(beta)), trans_(std::move(trans)),
      gamma_(gamma) {
  if (actions_.empty()) throw ValidationError("action set must not be empty");
  const auto n = alpha_.size();
  if (n == 0) throw ValidationError("UMDP must have at least one state");
  if (beta_.size() != n) throw ValidationError("beta must have one reward per state");
  if (trans_.size() != actions_.size()) throw ValidationError("expected one transition matrix per action");
  if (!(gamma_ > 0.0 && gamma_ < 1.0)) throw ValidationError("gamma must lie in (0, 1)");
  check_distribution(alpha_, "alpha");
  alpha_ = renormalized(alpha_);
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(beta_(i) >= 0.0)) throw ValidationError("rewards must be non-negative");
  for (std::size_t s = 0; s < trans_.size(); ++s) {
    auto& t = trans_[s];
    if (t.rows() != n || t.cols() != n) throw ValidationError("transition '" + actions_[static_cast<Symbol>(s)] + "' must be |Q| x |Q|");
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::string what = "row " + std::to_string(i) + " of transition '" + actions_[static_cast<Symbol>(s)] + "'";
      check_distribution(t.row(i).transpose(), what);
      t.row(i) = renormalized(t.row(i).transpose()).transpose();
    }
  }
}

double umdp_value_truncated(const Umdp& u, std::span<const Symbol> x, int horizon) {
  if (horizon < 1) throw ValidationError("horizon must be at least 1");
  if (static_cast<int>(x.size()) < horizon - 1)
    throw ValidationError("action string is shorter than the horizon requires");
  // Row-vector distribution propagated forward: d_t = alpha^T T_{x_1} ... T_{x_t}.
  Eigen::RowVectorXd dist = u.alpha().transpose();
  double value = 0.0;
  double disc = 1.0;
  for (int t = 1; t <= horizon; ++t) {
    value += disc * dist.dot(u.beta());
    if (t == horizon) break;
    const Symbol s = x[t - 1];
    if (s >= u.actions().size()) throw ValidationError("unknown action index");
    dist = dist * u.trans(s);
    disc *= u.gamma();
  }
  return value;
}

Wfa umdp_to_wfa(const Umdp& u) {
  std::vector<Matrix> t;
  for (const auto& m : u.transitions()) t.emplace_back(m.transpose());
  return Wfa(u.actions(), u.alpha(), u.beta(), std::move(t));
}

CertifiedInterval umdp_sup_value_interval(const Umdp& u, const SearchOptions& opt) {
  const Wfa a = umdp_to_wfa(u);
  return seminorm_interval(a, a.alpha(), u.gamma(), opt);
}

}  // namespace wfa
