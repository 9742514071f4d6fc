#include <gtest/gtest.h>

#include <map>
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

std::map<BigInt, int> volume_multiset(const Triangulation& t) {
  std::map<BigInt, int> out;
  for (const auto& c : t.cells) ++out[normalized_volume(c)];
  return out;
}

}  // namespace

TEST(MatchTriangulations, SelfMatch) {
  for (const char* name : {"example6_P1", "R1", "example5_P3"}) {
    const auto p = corpus(name);
    const auto r = match_triangulations(p, p);
    ASSERT_TRUE(r.matched()) << name;
    EXPECT_TRUE(verify_matching(*r.matching));
  }
}

TEST(MatchTriangulations, ExampleSix) {
  const auto r = match_triangulations(corpus("example6_P1"), corpus("example6_P2"));
  ASSERT_TRUE(r.matched());
  const auto& m = *r.matching;
  EXPECT_EQ(m.pairing.size(), 4u);
  EXPECT_TRUE(m.left.all_unimodular());
  EXPECT_TRUE(m.right.all_unimodular());
  EXPECT_TRUE(verify_matching(m));
  EXPECT_EQ(volume_multiset(m.left), volume_multiset(m.right));
}

TEST(MatchTriangulations, SimplicesReduceToEquivalenceCheck) {
  const auto a = corpus("example1_P1"), b = corpus("example1_P2");
  const auto r = match_triangulations(a, b);
  ASSERT_TRUE(r.matched());
  EXPECT_EQ(r.matching->pairing.size(), 1u);
  EXPECT_EQ(check_equivalence(LatticeSimplex(a), LatticeSimplex(b)).equivalent(), r.matched());
}

TEST(MatchTriangulations, Errors) {
  EXPECT_THROW(match_triangulations(corpus("S21"), corpus("R1")), DimensionError);
  EXPECT_THROW(match_triangulations(corpus("example1_P1"), corpus("example2_P1")), PreconditionError);
}

TEST(MatchTriangulations, ImagesUnderUnimodularMapsMatch) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto p = random_polytope(n, n + 3, 0, 3, rng);
    const auto q = random_map(n, rng, 4)(p);
    const auto r = match_triangulations(p, q);
    ASSERT_TRUE(r.matched()) << "trial " << trial;
    ASSERT_TRUE(verify_matching(*r.matching));
  }
}

TEST(MatchTriangulations, MatchingImpliesEqualEhrhart) {
  const auto a = corpus("example6_P1"), b = corpus("example6_P2");
  ASSERT_TRUE(match_triangulations(a, b).matched());
  EXPECT_EQ(ehrhart_polynomial(a), ehrhart_polynomial(b));
}

TEST(UnimodularTriangulationCheck, Examples) {
  const auto r = unimodular_triangulation_check(corpus("example6_P1"), corpus("example6_P2"));
  EXPECT_EQ(r.verdict, TriangulationVerdict::equidecomposable);
  ASSERT_TRUE(r.matching);
  EXPECT_TRUE(verify_matching(*r.matching));

  const auto unit = make_polytope(3, pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  const auto shifted = make_polytope(3, pts({{5, 5, 5}, {6, 5, 5}, {5, 6, 5}, {5, 5, 6}}));
  EXPECT_EQ(unimodular_triangulation_check(unit, shifted).verdict, TriangulationVerdict::equidecomposable);

  // Single cell of normalized volume 18 on each side.
  EXPECT_EQ(unimodular_triangulation_check(corpus("S21"), corpus("S22")).verdict,
            TriangulationVerdict::inconclusive);

  EXPECT_THROW(unimodular_triangulation_check(corpus("example1_P1"), corpus("example4_P1")), PreconditionError);
}

TEST(DilationSearch, EquivalentInputsSucceedAtOne) {
  const auto r = dilation_search(corpus("example3_P1"), corpus("example3_P7"), 2);
  ASSERT_TRUE(r.first_success);
  EXPECT_EQ(*r.first_success, 1u);
  for (const auto& e : r.tested) {
    EXPECT_EQ(e.outcome, DilationOutcome::matched);
    EXPECT_TRUE(verify_matching(*e.matching));
  }
}

TEST(DilationSearch, MatchAtKPersistsAtTwoK) {
  const auto r = dilation_search(corpus("example6_P1"), corpus("example6_P2"), 2);
  ASSERT_EQ(r.tested.size(), 2u);
  EXPECT_EQ(r.tested[0].outcome, DilationOutcome::matched);
  EXPECT_EQ(r.tested[1].outcome, DilationOutcome::matched);
}

// Recorded outcomes for the pyramid pair: each input is a single simplex,
// so its pulling triangulation is itself and dilation does not refine it.
TEST(DilationSearch, RegressionS21S22) {
  const auto r = dilation_search(corpus("S21"), corpus("S22"), 2);
  ASSERT_EQ(r.tested.size(), 2u);
  for (const auto& e : r.tested) {
    EXPECT_EQ(e.outcome, DilationOutcome::not_matched) << "k=" << e.k;
    EXPECT_EQ(e.left_cells, 1u);
    EXPECT_EQ(e.right_cells, 1u);
  }
  EXPECT_FALSE(r.first_success);
}

TEST(DilationSearch, Preconditions) {
  EXPECT_THROW(dilation_search(corpus("S21"), corpus("S22"), 0), PreconditionError);
  EXPECT_THROW(dilation_search(corpus("example1_P1"), corpus("example4_P1"), 1), PreconditionError);
}

TEST(DilationSearch, CapacityBecomesOutcome) {
  const auto big = make_polytope(3, pts({{0, 0, 0}, {400, 0, 0}, {0, 400, 0}, {0, 0, 400}}));
  const auto r = dilation_search(big, big, 1);
  ASSERT_EQ(r.tested.size(), 1u);
  EXPECT_EQ(r.tested[0].outcome, DilationOutcome::capacity_exceeded);
  EXPECT_FALSE(r.tested[0].note.empty());
}
