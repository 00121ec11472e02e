#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wfa/core.hpp"
#include "wfa/metric.hpp"

namespace wfa {

/// Finite Hankel sub-block over prefixes P and suffixes S:
/// H(p,s) = f(ps), hsig[s](p,q) = f(p s q), hp(p) = f(p), hs(s) = f(s).
/// The empty word must belong to both P and S.
struct HankelBlock {
  Alphabet alphabet;
  std::vector<Word> prefixes;
  std::vector<Word> suffixes;
  Matrix h;
  std::vector<Matrix> hsig;
  Vector hp;
  Vector hs;
};

/// Checks shapes and that the empty word is in P and S.
void validate(const HankelBlock& block);

HankelBlock hankel_from_wfa(const Wfa& a, const std::vector<Word>& prefixes, const std::vector<Word>& suffixes);

/// Numerical rank of H (singular values above tol * sigma_max) equals the
/// dimension of the minimal automaton for `a`.
bool basis_is_complete(const Wfa& a, const HankelBlock& block, double tol = 1e-9);

struct LearnResult {
  Wfa automaton;
  /// Requested rank exceeds the numerical rank of H at tol.
  bool rank_warning = false;
  Vector singular_values;
};

/// Spectral recovery from the rank-r truncated SVD H ~ U D V^T:
///   alpha = V^T hs,  beta = D^{-1} U^T hp,  tau_s = (D^{-1} U^T hsig_s V)^T.
/// Exact blocks over a complete basis give an automaton equivalent to the
/// one that produced them. Throws ValidationError("rank overestimated") when
/// sigma_r is zero to working precision.
LearnResult spectral_learn(const HankelBlock& block, int rank, double tol = 1e-9);

/// Every word of length at most `max_len`, shortlex ordered.
std::vector<Word> all_words(const Alphabet& alphabet, std::size_t max_len);

struct LearnRow {
  double scale = 0.0;
  int trial = 0;
  double hankel_err = 0.0;
  double d_lower = 0.0;
  double d_upper = 0.0;
  double ratio = 0.0;
  bool skipped = false;
  std::string reason;
};

/// For each scale and trial: perturb H and every hsig by independent random
/// sign matrices rescaled to spectral norm `scale` (hp and hs are read back
/// from the perturbed H), learn at rank dim(minimize(a)), and bracket
/// d_gamma(a, learned). Trial seeds derive from `seed` and the row index.
std::vector<LearnRow> perturbation_experiment(const Wfa& a, const std::vector<Word>& prefixes,
                                              const std::vector<Word>& suffixes, const std::vector<double>& scales,
                                              double gamma, double eps, int trials, std::uint64_t seed,
                                              const SearchOptions& opt = {});

}  // namespace wfa
