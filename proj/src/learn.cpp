#include "wfa/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wfa/bisim.hpp"
#include "wfa/linalg.hpp"
#include "wfa/rng.hpp"

namespace wfa {

namespace {

std::size_t index_of_empty(const std::vector<Word>& words, const char* what) {
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i].empty()) return i;
  throw ValidationError(std::string(what) + " must contain the empty word");
}

Word concat(const Word& x, const Word& y) {
  Word w = x;
  w.insert(w.end(), y.begin(), y.end());
  return w;
}

Matrix sign_noise(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale) {
  Matrix e(rows, cols);
  const double entry = scale / std::sqrt(static_cast<double>(rows * cols));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) e(i, j) = rng.sign() * entry;
  const double norm = linalg::spectral_norm(e);
  return norm > 0.0 ? Matrix(e * (scale / norm)) : e;
}

}  // namespace

void validate(const HankelBlock& b) {
  const auto np = static_cast<Eigen::Index>(b.prefixes.size());
  const auto ns = static_cast<Eigen::Index>(b.suffixes.size());
  if (np == 0 || ns == 0) throw ValidationError("prefix and suffix sets must be non-empty");
  index_of_empty(b.prefixes, "prefixes");
  index_of_empty(b.suffixes, "suffixes");
  if (b.h.rows() != np || b.h.cols() != ns) throw ValidationError("H must be |P| x |S|");
  if (b.hsig.size() != b.alphabet.size()) throw ValidationError("expected one shifted block per symbol");
  for (const auto& m : b.hsig)
    if (m.rows() != np || m.cols() != ns) throw ValidationError("shifted blocks must be |P| x |S|");
  if (b.hp.size() != np) throw ValidationError("hP must have length |P|");
  if (b.hs.size() != ns) throw ValidationError("hS must have length |S|");
  for (const auto& w : b.prefixes)
    for (Symbol s : w)
      if (s >= b.alphabet.size()) throw ValidationError("prefix uses a symbol outside the alphabet");
  for (const auto& w : b.suffixes)
    for (Symbol s : w)
      if (s >= b.alphabet.size()) throw ValidationError("suffix uses a symbol outside the alphabet");
}

HankelBlock hankel_from_wfa(const Wfa& a, const std::vector<Word>& prefixes, const std::vector<Word>& suffixes) {
  HankelBlock b;
  b.alphabet = a.alphabet();
  b.prefixes = prefixes;
  b.suffixes = suffixes;
  const auto np = static_cast<Eigen::Index>(prefixes.size());
  const auto ns = static_cast<Eigen::Index>(suffixes.size());
  const std::size_t k = a.alphabet().size();
  b.h.resize(np, ns);
  b.hsig.assign(k, Matrix(np, ns));
  b.hp.resize(np);
  b.hs.resize(ns);
  for (Eigen::Index i = 0; i < np; ++i) {
    for (Eigen::Index j = 0; j < ns; ++j) {
      b.h(i, j) = evaluate(a, concat(prefixes[i], suffixes[j]));
      for (std::size_t s = 0; s < k; ++s) {
        Word w = prefixes[i];
        w.push_back(static_cast<Symbol>(s));
        b.hsig[s](i, j) = evaluate(a, concat(w, suffixes[j]));
      }
    }
    b.hp(i) = evaluate(a, prefixes[i]);
  }
  for (Eigen::Index j = 0; j < ns; ++j) b.hs(j) = evaluate(a, suffixes[j]);
  validate(b);
  return b;
}

bool basis_is_complete(const Wfa& a, const HankelBlock& block, double tol) {
  return linalg::numerical_rank(block.h, tol) == minimize(a, tol).dim();
}

LearnResult spectral_learn(const HankelBlock& block, int rank, double tol) {
  validate(block);
  const auto np = block.h.rows();
  const auto ns = block.h.cols();
  if (rank < 1 || rank > std::min(np, ns))
    throw ValidationError("rank must be between 1 and min(|P|, |S|) = " + std::to_string(std::min(np, ns)));

  const linalg::Svd d = linalg::svd(block.h);
  const double s1 = d.s.size() ? d.s(0) : 0.0;
  const double sr = d.s(rank - 1);
  const double floor = std::numeric_limits<double>::epsilon() * s1 * static_cast<double>(std::max(np, ns));
  if (!(s1 > 0.0) || !(sr > floor))
    throw ValidationError("rank overestimated: singular value " + std::to_string(rank) + " of H is zero to working precision");

  const Matrix u = d.u.leftCols(rank);
  const Matrix v = d.v.leftCols(rank);
  const Vector dinv = d.s.head(rank).cwiseInverse();

  std::vector<Matrix> trans;
  for (const auto& hs : block.hsig) trans.emplace_back((dinv.asDiagonal() * (u.transpose() * hs * v)).transpose());
  Vector alpha = v.transpose() * block.hs;
  Vector beta = dinv.asDiagonal() * (u.transpose() * block.hp);

  return LearnResult{Wfa(block.alphabet, std::move(alpha), std::move(beta), std::move(trans)),
                     rank > linalg::numerical_rank(d.s, tol), d.s};
}

std::vector<Word> all_words(const Alphabet& alphabet, std::size_t max_len) {
  return words_up_to(alphabet.size(), max_len);
}

std::vector<LearnRow> perturbation_experiment(const Wfa& a, const std::vector<Word>& prefixes,
                                              const std::vector<Word>& suffixes, const std::vector<double>& scales,
                                              double gamma, double eps, int trials, std::uint64_t seed,
                                              const SearchOptions& opt) {
  if (trials < 1) throw ValidationError("trials must be at least 1");
  for (double s : scales)
    if (!(s >= 0.0)) throw ValidationError("noise scales must be non-negative");
  const HankelBlock exact = hankel_from_wfa(a, prefixes, suffixes);
  const auto rank = static_cast<int>(minimize(a).dim());
  const std::size_t ps = index_of_empty(prefixes, "prefixes");
  const std::size_t ss = index_of_empty(suffixes, "suffixes");

  const auto total = static_cast<std::int64_t>(scales.size()) * trials;
  std::vector<LearnRow> rows(total);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < total; ++r) {
    LearnRow& row = rows[r];
    row.scale = scales[r / trials];
    row.trial = static_cast<int>(r % trials);
    try {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(r));
      HankelBlock noisy = exact;
      noisy.h += sign_noise(rng, noisy.h.rows(), noisy.h.cols(), row.scale);
      for (auto& m : noisy.hsig) m += sign_noise(rng, m.rows(), m.cols(), row.scale);
      noisy.hp = noisy.h.col(static_cast<Eigen::Index>(ss));
      noisy.hs = noisy.h.row(static_cast<Eigen::Index>(ps)).transpose();
      row.hankel_err = linalg::spectral_norm(noisy.h - exact.h);

      if (rank == 0) throw ValidationError("target function is zero; nothing to learn");
      const LearnResult learned = spectral_learn(noisy, rank);
      SearchOptions o = opt;
      o.eps = row.scale > 0.0 ? std::min(eps, 1e-2 * row.scale) : eps;
      const CertifiedInterval d = distance(a, learned.automaton, gamma, o);
      row.d_lower = d.lower;
      row.d_upper = d.upper;
      row.ratio = row.scale > 0.0 ? d.upper / row.scale : std::numeric_limits<double>::quiet_NaN();
    } catch (const std::exception& e) {
      row.skipped = true;
      row.reason = e.what();
    }
  }
  return rows;
}

}  // namespace wfa
