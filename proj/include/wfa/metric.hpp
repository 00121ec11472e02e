#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wfa/core.hpp"
#include "wfa/tail.hpp"

namespace wfa {

/// Bracket [lower, upper] for a seminorm or distance value.
struct CertifiedInterval {
  double lower = 0.0;
  double upper = 0.0;
  double gamma = 0.0;
  int depth_explored = 0;
  std::size_t nodes_expanded = 0;
  /// Best prefix found; lower is its discounted partial sum.
  Word witness_prefix;
  /// Budget ran out before upper - lower <= eps.
  bool exhausted = false;
  double width() const { return upper - lower; }
};

struct SearchOptions {
  double eps = 1e-6;
  std::size_t budget = 1000000;
  /// Product length for the admissibility check on gamma.
  int jsr_depth = 8;
  /// Nodes expanded per round. Fixed, so results do not depend on the
  /// number of threads.
  std::size_t batch = 32;
  /// Work on the quotient by the largest bisimulation when it is nontrivial.
  bool quotient = true;
  TailOptions tail;
};

/// 1 / (upper bound on the joint spectral radius); +inf when that bound is 0.
double admissible_gamma_bound(const Wfa& a, int depth);

/// Working norm certifying gamma * theta < 1 for the transitions of `a`.
/// Throws CannotCertify when gamma is not below admissible_gamma_bound or
/// when no candidate norm certifies it. Returns the first certified
/// candidate (identity l2 with block length 1 comes first).
TailBoundParams compute_tail_params(const Wfa& a, double gamma, int depth = 8, const TailOptions& opt = {});

/// Parameters valid for the union of both transition families, as needed by
/// distance_upper_bound.
TailBoundParams compute_joint_tail_params(const Wfa& a1, const Wfa& a2, double gamma, const TailOptions& opt = {});

/// Certified interval for s_{A,gamma}(v) = sup_x sum_t gamma^t |beta tau_{x<=t} v|
/// by best-first branch and bound over prefixes. Node upper bound:
/// acc + gamma^d * C ||beta||_* ||u|| * gamma theta / (1 - gamma theta).
CertifiedInterval seminorm_interval(const Wfa& a, const Vector& v, double gamma, const SearchOptions& opt = {});

/// d_gamma(a1, a2): the seminorm of the difference automaton at its initial
/// vector. The pair is put in a canonical order first so the result is
/// exactly symmetric.
CertifiedInterval distance(const Wfa& a1, const Wfa& a2, double gamma, const SearchOptions& opt = {});

/// Closed-form upper bound on d_gamma(a1, a2) for automata of equal
/// dimension, with nu = gamma * theta, C = params.block_const,
/// e_a = ||alpha1 - alpha2||, e_b = ||beta1 - beta2||_*, e_t = max_s ||tau1_s - tau2_s||:
///   C (||alpha1|| e_b + ||beta2||_* e_a) / (1 - nu)
///   + C^2 gamma ||alpha1|| ||beta2||_* e_t / (1 - nu)^2.
/// With C = 1 this is the classical perturbation bound. `params` must be
/// valid for both families (see compute_joint_tail_params).
double distance_upper_bound(const Wfa& a1, const Wfa& a2, double gamma, const TailBoundParams& params);

/// max over words x of length `depth` of sum_{t<=depth} gamma^t |beta tau_{x<=t} v|,
/// i.e. F^{depth+1}(0)(v) for F(s)(v) = |beta v| + gamma max_s s(tau_s v).
double truncated_seminorm(const Wfa& a, const Vector& v, double gamma, int depth);

struct ContinuityRow {
  double scale = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double closed_form_bound = 0.0;
};

/// Perturbs alpha, beta and every tau along one random direction of norm
/// `scale` (one direction drawn from `seed`, shared by all scales) and
/// reports the distance interval and the closed-form bound per scale.
std::vector<ContinuityRow> parameter_continuity_experiment(const Wfa& a, const std::vector<double>& scales,
                                                           double gamma, double eps, std::uint64_t seed,
                                                           const SearchOptions& opt = {});

}  // namespace wfa
