#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace ehrhart;
using namespace testing_support;

namespace {

std::vector<Point> pts(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Point> out;
  for (auto r : rows) out.push_back(make_point(r));
  return out;
}

LatticeSimplex unit_simplex(std::size_t n) {
  std::vector<Point> v{Point(n, BigInt(0))};
  for (std::size_t i = 0; i < n; ++i) {
    Point e(n, BigInt(0));
    e[i] = 1;
    v.push_back(e);
  }
  return LatticeSimplex(n, v);
}

}  // namespace

TEST(MakePolytope, Examples) {
  const auto tri = make_polytope(2, pts({{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_TRUE(tri.is_simplex());
  const auto p1 = corpus("example6_P1");
  EXPECT_EQ(p1.dim(), 4u);
  EXPECT_EQ(p1.vertex_count(), 6u);
  EXPECT_THROW(make_polytope(2, pts({{0, 0}, {1, 0}, {2, 0}})), DegeneracyError);
}

TEST(MakePolytope, RejectsBadInput) {
  EXPECT_THROW(make_polytope(2, pts({{0, 0}, {1, 0, 0}, {0, 1}})), DimensionError);
  EXPECT_THROW(make_polytope(0, {}), DimensionError);
  EXPECT_THROW(make_polytope(3, pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}})), DegeneracyError);
}

TEST(MakePolytope, DropsRedundantPointsAndDuplicates) {
  const auto sq = make_polytope(2, pts({{0, 0}, {2, 0}, {1, 1}, {0, 2}, {2, 2}, {1, 0}, {0, 0}}));
  EXPECT_EQ(sq.vertex_count(), 4u);
  EXPECT_EQ(sq, make_polytope(2, pts({{2, 2}, {0, 2}, {2, 0}, {0, 0}})));
}

TEST(MakePolytope, IsIdempotent) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto p = random_polytope(n, n + 4, 0, 4, rng);
    const auto q = make_polytope(n, p.vertices());
    ASSERT_EQ(p.vertices(), q.vertices());
  }
}

TEST(DefinitionMatrix, Examples) {
  EXPECT_EQ(unit_simplex(2).definition_matrix(), (IntegerMatrix{{0, 1, 0}, {0, 0, 1}, {1, 1, 1}}));
  EXPECT_EQ(abs(det(corpus_simplex("S21").definition_matrix())), 18);
  EXPECT_EQ(abs(det(definition_matrix(corpus_simplex("example2_P7")))), 1);
}

TEST(Simplex, RejectsNonSimplices) {
  EXPECT_THROW(LatticeSimplex(corpus("example6_P1")), PreconditionError);
  EXPECT_THROW(LatticeSimplex(2, pts({{0, 0}, {1, 1}, {2, 2}})), DegeneracyError);
}

TEST(NormalizedVolume, Examples) {
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(normalized_volume(unit_simplex(n)), 1);
  EXPECT_EQ(normalized_volume(corpus_simplex("S21")), 18);
  EXPECT_EQ(normalized_volume(corpus_simplex("example1_P1")), 3);
}

TEST(ApplyMap, Examples) {
  const auto p = corpus("example6_P2");
  EXPECT_EQ(apply_map(AffineUnimodularMap::identity(4), p), p);

  // 3*Q1 -> 3*Q1' needs the translation scaled by 3 as well.
  const auto q1 = make_polytope(2, pts({{-9, 0}, {-12, 0}, {-9, 2}}));
  const AffineUnimodularMap u3(IntegerMatrix{{2, -3}, {-1, 1}}, make_point({27, -9}));
  EXPECT_EQ(apply_map(u3, q1), make_polytope(2, pts({{9, 0}, {3, 3}, {3, 2}})));
  // Unscaled translation, expanded by hand.
  const AffineUnimodularMap u(IntegerMatrix{{2, -3}, {-1, 1}}, make_point({9, -3}));
  EXPECT_EQ(apply_map(u, q1), make_polytope(2, pts({{-9, 6}, {-15, 9}, {-15, 8}})));

  const AffineUnimodularMap shift(IntegerMatrix::identity(4), make_point({4, 4, 4, 4}));
  EXPECT_EQ(apply_map(shift, corpus("example2_P10")), corpus("example2_P11"));
}

TEST(ApplyMap, RejectsNonUnimodularLinearPart) {
  EXPECT_THROW(AffineUnimodularMap(IntegerMatrix{{2, 0}, {0, 1}}, make_point({0, 0})), PreconditionError);
  EXPECT_THROW(AffineUnimodularMap(IntegerMatrix::identity(2), make_point({0, 0, 0})), DimensionError);
}

TEST(ApplyMap, PreservesNormalizedVolume) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto s = random_simplex(n, -4, 4, rng);
    const auto u = random_map(n, rng);
    ASSERT_EQ(normalized_volume(apply_map(u, s)), normalized_volume(s));
  }
}

TEST(AffineMap, CompositionAndInverse) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto u = random_map(n, rng), v = random_map(n, rng);
    const auto x = random_point(n, -5, 5, rng);
    ASSERT_EQ(v.after(u)(x), v(u(x)));
    ASSERT_EQ(u.inverse()(u(x)), x);
    ASSERT_EQ(u.after(u.inverse()), AffineUnimodularMap::identity(n));
  }
}

TEST(Dilate, Examples) {
  const auto tri = make_polytope(2, pts({{0, 0}, {3, 0}, {1, 1}}));
  EXPECT_EQ(dilate(tri, BigInt(1)), tri);
  EXPECT_EQ(dilate(tri, BigInt(3)), make_polytope(2, pts({{0, 0}, {9, 0}, {3, 3}})));
  EXPECT_EQ(dilate(unit_simplex(2), BigInt(2)).polytope(), make_polytope(2, pts({{0, 0}, {2, 0}, {0, 2}})));
  EXPECT_THROW(dilate(tri, BigInt(0)), PreconditionError);
}

TEST(Dilate, ScalesNormalizedVolume) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto s = random_simplex(n, -3, 3, rng);
    for (long k = 1; k <= 4; ++k) {
      BigInt kn = 1;
      for (std::size_t i = 0; i < n; ++i) kn *= k;
      ASSERT_EQ(normalized_volume(dilate(s, BigInt(k))), kn * normalized_volume(s));
    }
  }
}

TEST(PyramidLift, Examples) {
  EXPECT_EQ(pyramid_lift(corpus_simplex("S21"), 4).polytope(), corpus("R1"));
  EXPECT_EQ(pyramid_lift(corpus_simplex("S22"), 4).polytope(), corpus("R2"));
  EXPECT_EQ(pyramid_lift(unit_simplex(2), 3), unit_simplex(3));
  EXPECT_THROW(pyramid_lift(corpus_simplex("S21"), 2), PreconditionError);
}

TEST(PyramidLift, PreservesNormalizedVolume) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_simplex(2, -5, 5, rng);
    for (std::size_t n = 3; n <= 5; ++n) ASSERT_EQ(normalized_volume(pyramid_lift(s, n)), normalized_volume(s));
  }
}

TEST(LiftMap, Examples) {
  EXPECT_EQ(lift_map(AffineUnimodularMap::identity(2), 4), AffineUnimodularMap::identity(4));

  const AffineUnimodularMap shift(IntegerMatrix::identity(2), make_point({1, 2}));
  const auto s = corpus_simplex("S22");
  const auto lifted = lift_map(shift, 4);
  EXPECT_EQ(lifted(pyramid_lift(s, 4).polytope()), pyramid_lift(shift(s), 4).polytope());
  for (std::size_t j = 2; j < 4; ++j) {
    Point e(4, BigInt(0));
    e[j] = 1;
    EXPECT_EQ(lifted(e), e);
  }

  const AffineUnimodularMap u(IntegerMatrix{{2, -3}, {-1, 1}}, make_point({9, -3}));
  EXPECT_EQ(abs(det(lift_map(u, 4).linear())), 1);
}

TEST(LiftMap, CommutesWithPyramidLift) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_simplex(2, -5, 5, rng);
    const auto u = random_map(2, rng);
    for (std::size_t n = 3; n <= 5; ++n)
      ASSERT_EQ(lift_map(u, n)(pyramid_lift(s, n)).polytope(), pyramid_lift(u(s), n).polytope());
  }
}
