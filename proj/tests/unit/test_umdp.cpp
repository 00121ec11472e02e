#include <gtest/gtest.h>

#include "../test_support.hpp"
#include "wfa/jsr.hpp"
#include "wfa/umdp.hpp"

using namespace wfa;
using namespace wfa::testing;

TEST(Umdp, HorizonOneIsAlphaDotBeta) {
  Rng rng(61);
  const Umdp u = random_umdp(rng, 3, 2, 0.9);
  EXPECT_DOUBLE_EQ(umdp_value_truncated(u, Word{}, 1), u.alpha().dot(u.beta()));
}

TEST(Umdp, SingleStateGeometricSeries) {
  const Umdp u(Alphabet({"a"}), Vector::Ones(1), Vector::Constant(1, 2.0), {Matrix::Ones(1, 1)}, 0.8);
  const Word x(20, 0);
  EXPECT_NEAR(umdp_value_truncated(u, x, 20), 2.0 * (1 - std::pow(0.8, 20)) / 0.2, 1e-12);
}

TEST(Umdp, MatchesDistributionPropagation) {
  Matrix t(2, 2);
  t << 0.9, 0.1, 0.2, 0.8;
  Vector alpha(2), beta(2);
  alpha << 1.0, 0.0;
  beta << 0.0, 1.0;
  const Umdp u(Alphabet({"a"}), alpha, beta, {t}, 0.5);
  // Hand-rolled: distributions (1,0), (.9,.1), (.83,.17).
  EXPECT_NEAR(umdp_value_truncated(u, Word{0, 0}, 3), 0.0 + 0.5 * 0.1 + 0.25 * 0.17, 1e-15);
}

TEST(Umdp, ReductionIdentity) {
  Rng rng(62);
  for (int rep = 0; rep < 5; ++rep) {
    const Umdp u = random_umdp(rng, 3, 2, 0.9);
    const Wfa a = umdp_to_wfa(u);
    for (int k = 0; k < 20; ++k) {
      const Word x = random_word(rng, 2, 30);
      EXPECT_NEAR(umdp_value_truncated(u, x, 30), oracle_discounted(a, a.alpha(), x, 0.9, 29), 1e-12);
    }
    EXPECT_GE(wfa_spectral_radius(a, 6).upper, 1.0 - 1e-12);
  }
}

TEST(Umdp, IdentityTransitions) {
  Vector alpha(2), beta(2);
  alpha << 0.25, 0.75;
  beta << 1.0, 3.0;
  const Umdp u(Alphabet({"a"}), alpha, beta, {Matrix::Identity(2, 2)}, 0.9);
  const Word x(10, 0);
  EXPECT_NEAR(umdp_value_truncated(u, x, 10), alpha.dot(beta) * (1 - std::pow(0.9, 10)) / 0.1, 1e-12);
}

TEST(Umdp, SupOfSingleActionMatchesResolvent) {
  Rng rng(63);
  for (int rep = 0; rep < 5; ++rep) {
    const Umdp u = random_umdp(rng, 3, 1, 0.8);
    // sum_t gamma^t alpha^T T^t beta = alpha^T (I - gamma T)^{-1} beta.
    const Vector y = (Matrix::Identity(3, 3) - 0.8 * u.trans(0)).lu().solve(u.beta());
    const double exact = u.alpha().dot(y);
    const CertifiedInterval iv = umdp_sup_value_interval(u);
    EXPECT_LE(iv.lower, exact + 1e-12);
    EXPECT_GE(iv.upper, exact - 1e-12);
    EXPECT_LE(iv.width(), 1e-6);
  }
}

TEST(Umdp, ZeroRewards) {
  Rng rng(64);
  const Umdp r = random_umdp(rng, 3, 2, 0.9);
  const Umdp u(r.actions(), r.alpha(), Vector::Zero(3), r.transitions(), 0.9);
  const CertifiedInterval iv = umdp_sup_value_interval(u);
  EXPECT_EQ(iv.lower, 0.0);
  EXPECT_EQ(iv.upper, 0.0);
}

TEST(Umdp, DominatingActionIsTheWitness) {
  // Action b moves to the rewarding state, a moves away from it.
  Matrix ta(2, 2), tb(2, 2);
  ta << 0.9, 0.1, 0.8, 0.2;
  tb << 0.1, 0.9, 0.05, 0.95;
  Vector alpha(2), beta(2);
  alpha << 0.5, 0.5;
  beta << 0.0, 1.0;
  const Umdp u(Alphabet({"a", "b"}), alpha, beta, {ta, tb}, 0.7);
  SearchOptions o;
  o.eps = 1e-8;
  const CertifiedInterval iv = umdp_sup_value_interval(u, o);
  for (Symbol s : iv.witness_prefix) EXPECT_EQ(s, 1u);
  // Exhaustive depth-10 oracle agrees with the all-b string.
  const Wfa a = umdp_to_wfa(u);
  double best = 0.0;
  Word arg;
  for (const auto& x : words_up_to(2, 10)) {
    if (x.size() != 10) continue;
    const double v = oracle_discounted(a, a.alpha(), x, 0.7, 10);
    if (v > best) {
      best = v;
      arg = x;
    }
  }
  EXPECT_EQ(arg, Word(10, 1));
  EXPECT_LE(best, iv.upper);
}

TEST(Umdp, MoreRewardNeverLowersTheLowerBound) {
  Rng rng(65);
  const Umdp u = random_umdp(rng, 3, 2, 0.8);
  const Umdp more(u.actions(), u.alpha(), u.beta() + 0.1 * Vector::Ones(3), u.transitions(), 0.8);
  EXPECT_GE(umdp_sup_value_interval(more).lower, umdp_sup_value_interval(u).lower);
}

TEST(Umdp, ValidatesStochasticity) {
  Matrix bad(2, 2);
  bad << 0.5, 0.6, 0.5, 0.5;
  EXPECT_THROW(Umdp(Alphabet({"a"}), Vector::Constant(2, 0.5), Vector::Ones(2), {bad}, 0.9), ValidationError);
  EXPECT_THROW(Umdp(Alphabet({"a"}), Vector::Constant(2, 0.6), Vector::Ones(2), {Matrix::Identity(2, 2)}, 0.9),
               ValidationError);
  EXPECT_THROW(Umdp(Alphabet({"a"}), Vector::Constant(2, 0.5), -Vector::Ones(2), {Matrix::Identity(2, 2)}, 0.9),
               ValidationError);
  EXPECT_THROW(Umdp(Alphabet({"a"}), Vector::Constant(2, 0.5), Vector::Ones(2), {Matrix::Identity(2, 2)}, 1.0),
               ValidationError);
}
