#include <gtest/gtest.h>

#include "../test_support.hpp"
#include "wfa/bisim.hpp"
#include "wfa/metric.hpp"

using namespace wfa;
using namespace wfa::testing;

namespace {

Wfa one_state(double t) { return Wfa(Alphabet({"a"}), Vector::Ones(1), Vector::Ones(1), {Matrix::Constant(1, 1, t)}); }

double one_letter_distance(double gamma, int i) {
  return 1.0 / (1.0 - gamma * (1.0 + std::pow(2.0, -i))) - 1.0 / (1.0 - gamma);
}

bool contains(const CertifiedInterval& iv, double x, double slack = 1e-12) {
  return iv.lower <= x + slack && x <= iv.upper + slack;
}

}  // namespace

TEST(Metric, AdmissibleGammaBound) {
  Matrix stoch(2, 2);
  stoch << 0.3, 0.7, 0.6, 0.4;
  const Wfa s(Alphabet({"a"}), Vector::Ones(2), Vector::Ones(2), {stoch});
  const double g = admissible_gamma_bound(s, 6);
  EXPECT_LE(g, 1.0 + 1e-12);
  EXPECT_GE(g, 1.0 / linalg::norm_inf(stoch) - 1e-12);

  const Wfa z(ab(), Vector::Ones(2), Vector::Ones(2), {Matrix::Zero(2, 2), Matrix::Zero(2, 2)});
  EXPECT_TRUE(std::isinf(admissible_gamma_bound(z, 3)));
  EXPECT_NEAR(admissible_gamma_bound(one_state(1.5), 8), 1.0 / 1.5, 1e-6);
}

TEST(Metric, TailParamsExamples) {
  Rng rng(31);
  const Wfa a = random_wfa(rng, 3, 2, 0.9);
  const TailBoundParams p = compute_tail_params(a, 0.5, 8);
  EXPECT_EQ(p.method, "identity-l2/m=1");
  EXPECT_EQ(p.block, 1);
  EXPECT_NEAR(p.theta, 0.9, 1e-12);

  const TailBoundParams f = compute_tail_params(one_state(1.25), 0.5, 8);
  EXPECT_NEAR(f.theta, 1.25, 1e-15);
  EXPECT_NEAR(f.nu(), 0.625, 1e-15);

  Matrix rot(2, 2);
  rot << 0.0, -0.9, 0.9, 0.0;
  const Wfa r(Alphabet({"a"}), Vector::Ones(2), Vector::Ones(2), {rot});
  const TailBoundParams pr = compute_tail_params(r, 1.0, 8);
  EXPECT_NEAR(pr.theta, 0.9, 1e-12);
}

TEST(Metric, InadmissibleGammaCannotBeCertified) {
  EXPECT_THROW(compute_tail_params(one_state(1.5), 0.7, 8), CannotCertify);
  EXPECT_THROW(distance(one_state(1.0), one_state(1.5), 0.7), CannotCertify);
  EXPECT_THROW(compute_tail_params(one_state(1.5), -0.1, 8), ValidationError);
}

TEST(Metric, BlockCertificateBoundsEveryProduct) {
  Rng rng(32);
  for (int rep = 0; rep < 5; ++rep) {
    const Wfa a = random_wfa(rng, 3, 2, 1.1);
    for (const Matrix& s : {Matrix(Matrix::Identity(3, 3)), balance_diagonal(a.transitions(), NormKind::L2)}) {
      for (NormKind kind : {NormKind::L2, NormKind::L1}) {
        for (int m = 1; m <= 4; ++m) {
          const TailBoundParams p = block_params(a.transitions(), s, kind, m, 0.5, 100000);
          for (const auto& x : words_up_to(2, 7)) {
            const Vector u = rng.vector(3);
            const double lhs = p.vec_norm(run(a, u, x));
            const double rhs = p.block_const * std::pow(p.theta, static_cast<double>(x.size())) * p.vec_norm(u);
            EXPECT_LE(lhs, rhs * (1 + 1e-10) + 1e-300);
          }
          // Dual norm: |beta . v| <= ||beta||_* ||v||.
          for (int k = 0; k < 10; ++k) {
            const Vector v = rng.vector(3);
            EXPECT_LE(std::abs(a.beta().dot(v)), p.dual_norm(a.beta()) * p.vec_norm(v) * (1 + 1e-12));
          }
        }
      }
    }
  }
}

TEST(Metric, SeminormOfZeroIsZero) {
  Rng rng(33);
  const Wfa a = random_wfa(rng, 3, 2);
  const CertifiedInterval iv = seminorm_interval(a, Vector::Zero(3), 0.5);
  EXPECT_EQ(iv.lower, 0.0);
  EXPECT_EQ(iv.upper, 0.0);
}

TEST(Metric, SeminormVanishesOnTheBisimulation) {
  Rng rng(34);
  const Wfa d = duplicated(random_wfa(rng, 2, 2));
  const Subspace w = largest_bisimulation(d);
  for (double eps : {1e-3, 1e-6, 1e-9}) {
    SearchOptions o;
    o.eps = eps;
    const CertifiedInterval iv = seminorm_interval(d, w.basis * rng.vector(w.dim()), 0.8, o);
    EXPECT_LE(iv.upper, eps);
    // Without the quotient the tail bound only shrinks like (gamma*theta)^depth,
    // so tight eps is out of reach; the interval must still bracket zero.
    o.quotient = false;
    o.budget = 20000;
    const CertifiedInterval raw = seminorm_interval(d, w.basis * rng.vector(w.dim()), 0.8, o);
    EXPECT_LE(raw.lower, 1e-12);
    if (eps >= 1e-3) EXPECT_LE(raw.upper, eps);
    else EXPECT_TRUE(raw.upper <= eps || raw.exhausted);
  }
}

TEST(Metric, OneLetterSeminorm) {
  const Wfa d = difference(one_state(1.0), one_state(1.25));
  const CertifiedInterval iv = seminorm_interval(d, d.alpha(), 0.5);
  EXPECT_TRUE(contains(iv, 2.0 / 3.0));
  EXPECT_LE(iv.width(), 1e-6);
  EXPECT_LE(iv.witness_prefix.size(), static_cast<std::size_t>(iv.depth_explored));
}

TEST(Metric, OneLetterDistances) {
  for (int i = 1; i <= 6; ++i) {
    const CertifiedInterval iv = distance(one_state(1.0), one_state(1.0 + std::pow(2.0, -i)), 0.5);
    EXPECT_TRUE(contains(iv, one_letter_distance(0.5, i))) << i;
    EXPECT_LE(iv.width(), 1e-6);
    if (i > 1) {
      const CertifiedInterval prev = distance(one_state(1.0), one_state(1.0 + std::pow(2.0, -(i - 1))), 0.5);
      EXPECT_LT(iv.upper, prev.lower);
    }
  }
}

TEST(Metric, DistanceToItselfAndToPaddedCopy) {
  Rng rng(35);
  const Wfa a = random_wfa(rng, 3, 2);
  const CertifiedInterval self = distance(a, a, 0.9);
  EXPECT_EQ(self.lower, 0.0);
  EXPECT_LE(self.upper, 1e-12);
  EXPECT_LE(self.nodes_expanded, 1u);
  const CertifiedInterval padded = distance(a, pad(a, 2), 0.9);
  EXPECT_LE(padded.upper, 1e-8);
}

TEST(Metric, DistanceUpperBoundExamples) {
  Rng rng(36);
  const Wfa a = random_wfa(rng, 3, 2);
  EXPECT_EQ(distance_upper_bound(a, a, 0.5, compute_joint_tail_params(a, a, 0.5)), 0.0);

  const Wfa f0 = one_state(1.0), f2 = one_state(1.25);
  const TailBoundParams p = compute_joint_tail_params(f0, f2, 0.5);
  EXPECT_NEAR(p.theta, 1.25, 1e-15);
  const double bound = distance_upper_bound(f0, f2, 0.5, p);
  EXPECT_NEAR(bound, 0.5 * 0.25 / 0.140625, 1e-12);
  EXPECT_GE(bound, distance(f0, f2, 0.5).upper);

  TailBoundParams bad = p;
  bad.theta = 2.5;
  EXPECT_THROW(distance_upper_bound(f0, f2, 0.5, bad), CannotCertify);
}

TEST(Metric, DistanceUpperBoundDominates) {
  Rng rng(37);
  for (int rep = 0; rep < 10; ++rep) {
    const Wfa a = random_wfa(rng, 2, 2, 0.8);
    std::vector<Matrix> t;
    for (const auto& m : a.transitions()) t.push_back(m + 0.05 * rng.matrix(2, 2));
    const Wfa b(a.alphabet(), a.alpha() + 0.05 * rng.vector(2), a.beta() + 0.05 * rng.vector(2), t);
    const double bound = distance_upper_bound(a, b, 0.6, compute_joint_tail_params(a, b, 0.6));
    const CertifiedInterval iv = distance(a, b, 0.6);
    EXPECT_GE(bound, iv.lower);
    if (iv.width() <= 1e-6) EXPECT_GE(bound, iv.upper);
  }
}

TEST(Metric, TruncationEqualsValueIteration) {
  Rng rng(38);
  for (int rep = 0; rep < 5; ++rep) {
    const Wfa a = random_wfa(rng, 2, 2, 1.2);
    const Vector v = rng.vector(2);
    for (int t = 0; t <= 6; ++t)
      EXPECT_NEAR(truncated_seminorm(a, v, 0.7, t), oracle_value_iteration(a, plain_vec(v), 0.7, t + 1), 1e-12);
  }
}

TEST(Metric, TruncatedSeminormAxioms) {
  Rng rng(39);
  const Wfa a = random_wfa(rng, 3, 2, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const Vector u = rng.vector(3), v = rng.vector(3);
    const double su = truncated_seminorm(a, u, 0.8, 5);
    EXPECT_EQ(truncated_seminorm(a, -2.0 * u, 0.8, 5), 2.0 * su);
    EXPECT_EQ(truncated_seminorm(a, 0.5 * u, 0.8, 5), 0.5 * su);
    const double c = rng.uniform(-3, 3);
    EXPECT_NEAR(truncated_seminorm(a, c * u, 0.8, 5), std::abs(c) * su, 1e-12 * (1 + su));
    EXPECT_LE(truncated_seminorm(a, u + v, 0.8, 5), su + truncated_seminorm(a, v, 0.8, 5) + 1e-9);
  }
}

TEST(Metric, IntervalsTightenWithBudget) {
  Rng rng(40);
  const Wfa a = random_wfa(rng, 3, 2, 0.9);
  const Wfa b = random_wfa(rng, 2, 2, 0.9);
  double lo = -1.0, hi = 1e300;
  for (std::size_t budget : {32u, 64u, 256u, 1024u, 8192u}) {
    SearchOptions o;
    o.budget = budget;
    o.eps = 1e-9;
    const CertifiedInterval iv = distance(a, b, 0.9, o);
    EXPECT_GE(iv.lower, lo);
    EXPECT_LE(iv.upper, hi);
    lo = iv.lower;
    hi = iv.upper;
  }
}

TEST(Metric, OneLetterClosedForms) {
  Rng rng(41);
  for (int rep = 0; rep < 10; ++rep) {
    const double t1 = rng.uniform(-1.5, 1.5), t2 = rng.uniform(-1.5, 1.5);
    const double gamma = 0.6;
    double exact = 0.0, p1 = 1.0, p2 = 1.0, g = 1.0;
    for (int t = 0; t < 400; ++t) {
      exact += g * std::abs(p1 - p2);
      p1 *= t1;
      p2 *= t2;
      g *= gamma;
    }
    const CertifiedInterval iv = distance(one_state(t1), one_state(t2), gamma);
    EXPECT_TRUE(contains(iv, exact, 1e-9)) << t1 << " " << t2;
  }
}

TEST(Metric, PseudometricLaws) {
  Rng rng(42);
  for (int rep = 0; rep < 5; ++rep) {
    const Wfa a = random_wfa(rng, 2, 2, 0.8), b = random_wfa(rng, 2, 2, 0.8), c = random_wfa(rng, 3, 2, 0.8);
    const CertifiedInterval ab_ = distance(a, b, 0.7), ba = distance(b, a, 0.7);
    EXPECT_EQ(ab_.lower, ba.lower);
    EXPECT_EQ(ab_.upper, ba.upper);
    EXPECT_LE(distance(a, c, 0.7).lower, ab_.upper + distance(b, c, 0.7).upper);
  }
}

TEST(Metric, ChangeOfBasisInvariance) {
  Rng rng(43);
  for (int rep = 0; rep < 5; ++rep) {
    const Wfa a = random_wfa(rng, 3, 2, 0.8), b = random_wfa(rng, 3, 2, 0.8);
    const Matrix t = Matrix::Identity(3, 3) + 0.3 * rng.matrix(3, 3);
    const CertifiedInterval x = distance(a, b, 0.7), y = distance(conjugate(a, t), conjugate(b, t), 0.7);
    EXPECT_LE(x.lower, y.upper + 1e-9);
    EXPECT_LE(y.lower, x.upper + 1e-9);
  }
}

TEST(Metric, VectorsOutsideTheKernelArePositive) {
  Rng rng(44);
  const Wfa d = duplicated(random_wfa(rng, 2, 2, 0.8));
  const Subspace w = largest_bisimulation(d);
  for (int k = 0; k < 100; ++k) {
    const Vector u = rng.unit_vector(4);
    if (w.residual(u).norm() < 1e-3) continue;
    SearchOptions o;
    o.eps = 1e-4;
    EXPECT_GT(seminorm_interval(d, u, 0.7, o).lower, 0.0);
  }
}

TEST(Metric, ContinuityExperiment) {
  Rng rng(45);
  const Wfa a = random_wfa(rng, 3, 2, 0.8);
  const auto rows = parameter_continuity_experiment(a, {0.0, 1e-1, 1e-2, 1e-3, 1e-4}, 0.7, 1e-9, 7);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_LE(rows[0].upper, 1e-9);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].upper, rows[i - 1].upper + 1e-9);
    EXPECT_GE(rows[i].closed_form_bound, rows[i].lower);
    // Linear regime: a 10x smaller perturbation gives a roughly 10x smaller distance.
    const double factor = rows[i - 1].upper / rows[i].upper;
    EXPECT_GT(factor, 5.0);
    EXPECT_LT(factor, 20.0);
  }
}
