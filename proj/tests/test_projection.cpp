#include "helpers.hpp"
#include "vicert/projection.hpp"

#include <gtest/gtest.h>

#include <limits>

using namespace vicert;
using namespace vicert::test;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

BoxSet mixed_box() { return BoxSet(vec({0, -1, -kInf, 2}), vec({kInf, 1, 3, kInf})); }
}  // namespace

TEST(Project, ClampsIntoUnitSquare) {
  EXPECT_EQ(project(BoxSet::Uniform(2, 0, 1), vec({2, -1})), vec({1, 0}));
}

TEST(Project, FullSpaceIsIdentity) {
  EXPECT_EQ(project(BoxSet::FullSpace(2), vec({3.7, -2.2})), vec({3.7, -2.2}));
}

TEST(Project, MixedBounds) {
  const BoxSet k(vec({0, 0}), vec({kInf, 1}));
  EXPECT_EQ(project(k, vec({-1, 0.5})), vec({0, 0.5}));
}

TEST(Project, DimensionMismatchThrows) {
  EXPECT_THROW(project(BoxSet::FullSpace(2), vec({1})), ConfigurationError);
}

TEST(Project, IdempotentBitExact) {
  std::mt19937_64 rng(10);
  const BoxSet k = mixed_box();
  for (int s = 0; s < 1000; ++s) {
    const Vector z = project(k, uniform_vector(rng, 4, -20, 20));
    EXPECT_EQ(project(k, z), z);
    EXPECT_TRUE(k.contains(z));
  }
}

TEST(Project, NonExpansive) {
  std::mt19937_64 rng(11);
  const BoxSet k = mixed_box();
  for (int s = 0; s < 1000; ++s) {
    const Vector x = uniform_vector(rng, 4, -20, 20);
    const Vector y = uniform_vector(rng, 4, -20, 20);
    EXPECT_LE((project(k, x) - project(k, y)).norm(), (x - y).norm() * (1 + 1e-15));
  }
}

TEST(ProjectionJacobian, InteriorIsIdentity) {
  const auto d = projection_jacobian_element(BoxSet::Uniform(2, 0, 1), vec({0.5, 0.5}));
  EXPECT_EQ(d.diagonal, vec({1, 1}));
  EXPECT_EQ(d.activity[0], Activity::kInterior);
}

TEST(ProjectionJacobian, StrictlyOutsideIsZero) {
  const auto d = projection_jacobian_element(BoxSet::Uniform(2, 0, 1), vec({2, 0.5}));
  EXPECT_EQ(d.diagonal, vec({0, 1}));
  EXPECT_EQ(d.activity[0], Activity::kOutsideAbove);
}

TEST(ProjectionJacobian, BoundaryRule) {
  const BoxSet k = BoxSet::Uniform(2, 0, 1);
  const auto one = projection_jacobian_element(k, vec({0, 0.5}), BoundaryRule::kOne);
  const auto zero = projection_jacobian_element(k, vec({0, 0.5}), BoundaryRule::kZero);
  EXPECT_EQ(one.diagonal, vec({1, 1}));
  EXPECT_EQ(zero.diagonal, vec({0, 1}));
  EXPECT_EQ(one.activity[0], Activity::kAtLower);
  EXPECT_EQ(zero.rule, BoundaryRule::kZero);
}

TEST(ProjectionJacobian, ActivityTags) {
  const BoxSet k(vec({0, 0, -kInf}), vec({1, 1, kInf}));
  const auto d = projection_jacobian_element(k, vec({1, -3, 42}));
  EXPECT_EQ(d.activity[0], Activity::kAtUpper);
  EXPECT_EQ(d.activity[1], Activity::kOutsideBelow);
  EXPECT_EQ(d.activity[2], Activity::kFree);
  EXPECT_EQ(d.diagonal, vec({1, 0, 1}));
}

TEST(ProjectionJacobian, MatchesFiniteDifferencesAwayFromBounds) {
  std::mt19937_64 rng(12);
  const BoxSet k = mixed_box();
  int checked = 0;
  while (checked < 200) {
    const Vector x = uniform_vector(rng, 4, -5, 5);
    bool far = true;
    for (int i = 0; i < 4; ++i) {
      far &= std::abs(x[i] - k.lo()[i]) >= 1e-3 && std::abs(x[i] - k.hi()[i]) >= 1e-3;
    }
    if (!far) continue;
    const Matrix fd = numeric_jacobian([&](const Vector& v) { return project(k, v); }, x, 1e-7);
    EXPECT_LE((fd - projection_jacobian_element(k, x).matrix()).cwiseAbs().maxCoeff(), 1e-6);
    ++checked;
  }
}

TEST(ConvG, Vertices) {
  const auto g = convg_vertices(3);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_TRUE(g[0].is_identity());
  for (size_t i = 1; i < g.size(); ++i) {
    const Vector d = g[i].diagonal(3);
    EXPECT_EQ((d.array() == 0.0).count(), 1);
    EXPECT_EQ(d[g[i].dropped()], 0.0);
  }
}

TEST(ConvG, BetaZeroIsIdentityOnly) {
  const auto s = convg_hull_sample(2, {0.0}, 4, 1);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].diagonal, vec({1, 1}));
}

TEST(ConvG, VertexAndBarycenter) {
  const auto s2 = convg_hull_sample(2, {1.0}, 2, 1);
  bool found = false;
  for (const auto& g : s2) found |= g.alpha == vec({1, 0}) && g.diagonal == vec({0, 1});
  EXPECT_TRUE(found);

  const auto s3 = convg_hull_sample(3, {1.0}, 4, 1);
  bool bary = false;
  for (const auto& g : s3) {
    if ((g.alpha.array() - 1.0 / 3).abs().maxCoeff() < 1e-15) {
      bary = true;
      EXPECT_NEAR((g.diagonal.array() - 2.0 / 3).abs().maxCoeff(), 0, 1e-15);
    }
  }
  EXPECT_TRUE(bary);
}

TEST(ConvG, PreconditionsEnforced) {
  EXPECT_THROW(convg_hull_sample(3, {0.5}, 2, 1), ConfigurationError);
  EXPECT_THROW(convg_hull_sample(3, {1.5}, 4, 1), ConfigurationError);
}

TEST(ConvG, MembersReconstructFromBetaAlpha) {
  const auto s = convg_hull_sample(4, default_beta_grid(), 12, 99);
  for (const auto& g : s) {
    EXPECT_GE(g.diagonal.minCoeff(), 0.0);
    EXPECT_LE(g.diagonal.maxCoeff(), 1.0);
    EXPECT_NEAR(g.alpha.sum(), 1.0, 1e-12);
    EXPECT_GE(g.alpha.minCoeff(), 0.0);
    Matrix rebuilt = Matrix::Identity(4, 4);
    for (int i = 0; i < 4; ++i) rebuilt(i, i) -= g.beta * g.alpha[i];
    EXPECT_LE((rebuilt - g.matrix()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((g.complement() - g.beta * g.alpha).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(ConvG, Deterministic) {
  const auto a = convg_hull_sample(3, default_beta_grid(), 9, 5);
  const auto b = convg_hull_sample(3, default_beta_grid(), 9, 5);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].diagonal, b[i].diagonal);
}
