#pragma once

#include <span>
#include <vector>

#include "wfa/core.hpp"
#include "wfa/metric.hpp"

namespace wfa {

/// Unobservable MDP with non-negative, action-independent rewards.
/// trans(s) is row-stochastic: T_s(i, j) = P(next = j | current = i, action s).
class Umdp {
 public:
  /// Validates stochasticity to 1e-12 and renormalizes rows and alpha.
  Umdp(Alphabet actions, Vector alpha, Vector beta, std::vector<Matrix> trans, double gamma);

  const Alphabet& actions() const { return actions_; }
  Eigen::Index states() const { return alpha_.size(); }
  const Vector& alpha() const { return alpha_; }
  const Vector& beta() const { return beta_; }
  const Matrix& trans(Symbol s) const { return trans_[s]; }
  const std::vector<Matrix>& transitions() const { return trans_; }
  double gamma() const { return gamma_; }

 private:
  Alphabet actions_;
  Vector alpha_;
  Vector beta_;
  std::vector<Matrix> trans_;
  double gamma_;
};

/// sum_{t=1}^{horizon} gamma^{t-1} alpha^T T_{x_1} ... T_{x_{t-1}} beta.
double umdp_value_truncated(const Umdp& u, std::span<const Symbol> x, int horizon);

/// WFA with tau_s = T_s^T, same alpha and beta; its discounted partial sums
/// equal the UMDP's truncated values.
Wfa umdp_to_wfa(const Umdp& u);

/// Interval for sup_x V_U(x), the seminorm of alpha in the associated WFA.
CertifiedInterval umdp_sup_value_interval(const Umdp& u, const SearchOptions& opt = {});

}  // namespace wfa
