#include <gtest/gtest.h>

#include "../test_support.hpp"
#include "wfa/bisim.hpp"
#include "wfa/learn.hpp"

using namespace wfa;
using namespace wfa::testing;

namespace {

Wfa one_state(double t) { return Wfa(Alphabet({"a"}), Vector::Ones(1), Vector::Ones(1), {Matrix::Constant(1, 1, t)}); }

}  // namespace

TEST(Learn, ZeroAutomatonGivesZeroBlock) {
  Rng rng(51);
  const Wfa z = with_final(random_wfa(rng, 2, 2), Vector::Zero(2));
  const auto words = all_words(z.alphabet(), 2);
  const HankelBlock b = hankel_from_wfa(z, words, words);
  EXPECT_TRUE(b.h.isZero(0.0));
  for (const auto& m : b.hsig) EXPECT_TRUE(m.isZero(0.0));
  EXPECT_TRUE(basis_is_complete(z, b));
  EXPECT_THROW(spectral_learn(b, 1), ValidationError);
}

TEST(Learn, OneLetterHankelBlock) {
  const Wfa a = one_state(1.5);
  const std::vector<Word> ps{{}, {0}};
  const HankelBlock b = hankel_from_wfa(a, ps, ps);
  Matrix expect(2, 2);
  expect << 1.0, 1.5, 1.5, 2.25;
  EXPECT_EQ(b.h, expect);
  EXPECT_EQ(b.hp, expect.col(0));
  EXPECT_EQ(b.hs, expect.row(0).transpose());

  const LearnResult r = spectral_learn(b, 1);
  EXPECT_NEAR(r.automaton.trans(0)(0, 0), 1.5, 1e-12);
  EXPECT_NEAR(r.automaton.alpha()(0) * r.automaton.beta()(0), 1.0, 1e-12);
  for (const auto& x : words_up_to(1, 6)) EXPECT_NEAR(evaluate(r.automaton, x), evaluate(a, x), 1e-10);
}

TEST(Learn, BlockConsistencyAndRank) {
  Rng rng(52);
  const Wfa a = random_wfa(rng, 3, 2);
  const auto words = all_words(a.alphabet(), 3);
  const HankelBlock b = hankel_from_wfa(a, words, words);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].empty()) continue;
    Word parent(words[i].begin(), words[i].end() - 1);
    const auto pi = static_cast<Eigen::Index>(std::find(words.begin(), words.end(), parent) - words.begin());
    for (std::size_t j = 0; j < words.size(); ++j)
      EXPECT_EQ(b.h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                b.hsig[words[i].back()](pi, static_cast<Eigen::Index>(j)));
  }
  EXPECT_LE(linalg::numerical_rank(b.h, 1e-9), 3);
}

TEST(Learn, BasisCompleteness) {
  Rng rng(53);
  const Wfa a = random_wfa(rng, 2, 2);
  const std::vector<Word> eps{{}};
  EXPECT_FALSE(basis_is_complete(a, hankel_from_wfa(a, eps, eps)));
  const auto words = all_words(a.alphabet(), 2);
  EXPECT_TRUE(basis_is_complete(a, hankel_from_wfa(a, words, words)));
}

TEST(Learn, ExactBlocksRoundTrip) {
  Rng rng(54);
  for (int rep = 0; rep < 5; ++rep) {
    const Wfa a = random_wfa(rng, 1 + rep % 3, 2);
    const auto words = all_words(a.alphabet(), a.dim());
    const LearnResult r = spectral_learn(hankel_from_wfa(a, words, words), static_cast<int>(a.dim()));
    EXPECT_FALSE(r.rank_warning);
    for (const auto& x : words_up_to(2, 2 * a.dim())) EXPECT_NEAR(evaluate(r.automaton, x), evaluate(a, x), 1e-8);
    EXPECT_LE(distance(a, r.automaton, 0.7).upper, 1e-6);
  }
}

TEST(Learn, RankWarningAndErrors) {
  Rng rng(55);
  const Wfa a = duplicated(random_wfa(rng, 1, 2));
  const auto words = all_words(a.alphabet(), 2);
  const HankelBlock b = hankel_from_wfa(a, words, words);
  EXPECT_THROW(spectral_learn(b, 0), ValidationError);
  EXPECT_THROW(spectral_learn(b, 100), ValidationError);
  HankelBlock noisy = b;
  noisy.h += 1e-12 * rng.matrix(b.h.rows(), b.h.cols());
  EXPECT_TRUE(spectral_learn(noisy, 2).rank_warning);
  HankelBlock missing = b;
  missing.prefixes.erase(missing.prefixes.begin());
  missing.h = missing.h.bottomRows(missing.h.rows() - 1).eval();
  EXPECT_THROW(validate(missing), ValidationError);
}

TEST(Learn, PerturbationExperiment) {
  Rng rng(56);
  const Wfa a = random_wfa(rng, 2, 2, 0.8);
  const auto words = all_words(a.alphabet(), 2);
  const auto rows = perturbation_experiment(a, words, words, {0.0, 1e-2, 1e-3, 1e-4}, 0.6, 1e-6, 1, 99);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) ASSERT_FALSE(r.skipped) << r.reason;
  EXPECT_LE(rows[0].d_upper, 1e-6);
  EXPECT_TRUE(std::isnan(rows[0].ratio));
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i].hankel_err, rows[i].scale, 1e-12);
    lo = std::min(lo, rows[i].ratio);
    hi = std::max(hi, rows[i].ratio);
  }
  EXPECT_LT(hi / lo, 10.0);

  const auto again = perturbation_experiment(a, words, words, {1e-3}, 0.6, 1e-6, 2, 99);
  EXPECT_EQ(again.size(), 2u);
  EXPECT_NE(again[0].d_upper, again[1].d_upper);
}
