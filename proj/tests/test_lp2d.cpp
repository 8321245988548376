#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "lipsel/lp2d.hpp"

using namespace lipsel;

namespace {

// u1 >= 0, u2 >= 0, u1 + u2 <= 1
std::vector<HalfPlane> simplex() { return {HalfPlane({-1, 0}, 0), HalfPlane({0, -1}, 0), HalfPlane({1, 1}, -1)}; }
std::vector<HalfPlane> contradiction() { return {HalfPlane({1, 0}, 1), HalfPlane({-1, 0}, 1)}; }

bool satisfies(const std::vector<HalfPlane>& cs, const Point2& p, double tol = 1e-9) {
  return std::all_of(cs.begin(), cs.end(), [&](const HalfPlane& H) { return H.contains(p, tol); });
}

std::vector<HalfPlane> random_constraints(std::mt19937_64& rng, std::size_t m) {
  std::uniform_int_distribution<int> c(-9, 9);
  std::vector<HalfPlane> cs;
  while (cs.size() < m) {
    const int a = c(rng), b = c(rng);
    if (a == 0 && b == 0) continue;
    cs.emplace_back(Point2{double(a), double(b)}, double(c(rng)));
  }
  return cs;
}

TEST(Lp2dFeasible, Examples) {
  const auto s = simplex();
  const Feasibility a = lp2d_feasible(s);
  ASSERT_TRUE(a);
  EXPECT_TRUE(satisfies(s, *a.point));

  const auto bad = contradiction();
  const Feasibility b = lp2d_feasible(bad);
  EXPECT_FALSE(b);
  EXPECT_EQ(b.conflict.size(), 2u);

  EXPECT_TRUE(lp2d_feasible({}));
}

TEST(Lp2dFeasible, ConflictIsIrreducible) {
  std::mt19937_64 rng(21);
  int infeasible = 0;
  for (int it = 0; it < 500; ++it) {
    const auto cs = random_constraints(rng, 2 + it % 10);
    const Feasibility f = lp2d_feasible(cs);
    if (f) {
      EXPECT_TRUE(satisfies(cs, *f.point));
      continue;
    }
    ++infeasible;
    ASSERT_GE(f.conflict.size(), 2u);
    ASSERT_LE(f.conflict.size(), 3u);
    std::vector<HalfPlane> sub;
    for (std::size_t k : f.conflict) sub.push_back(cs[k]);
    EXPECT_FALSE(lp2d_feasible(sub));
    for (std::size_t drop = 0; drop < sub.size(); ++drop) {
      std::vector<HalfPlane> rest;
      for (std::size_t k = 0; k < sub.size(); ++k)
        if (k != drop) rest.push_back(sub[k]);
      EXPECT_TRUE(lp2d_feasible(rest));
    }
  }
  EXPECT_GT(infeasible, 20);
}

TEST(Lp2dOptimize, Examples) {
  const auto s = simplex();
  const LpOutcome a = lp2d_optimize(s, {1, 0}, Sense::Max);
  ASSERT_TRUE(a.optimal());
  EXPECT_DOUBLE_EQ(a.value, 1);
  EXPECT_EQ(a.point, (Point2{1, 0}));

  const std::vector<HalfPlane> half{HalfPlane({-1, 0}, 0)};
  const LpOutcome b = lp2d_optimize(half, {1, 0}, Sense::Max);
  ASSERT_TRUE(b.unbounded());
  EXPECT_GT(b.point.x1, 0);
  EXPECT_TRUE(satisfies(half, b.point));  // a recession direction of a cone through O

  EXPECT_TRUE(lp2d_optimize(contradiction(), {1, 0}, Sense::Max).infeasible());
  EXPECT_TRUE(lp2d_optimize(contradiction(), {0, 1}, Sense::Min).infeasible());
}

TEST(Lp2dOptimize, MinSenseAndZeroObjective) {
  const auto s = simplex();
  const LpOutcome a = lp2d_optimize(s, {1, 1}, Sense::Min);
  ASSERT_TRUE(a.optimal());
  EXPECT_DOUBLE_EQ(a.value, 0);
  const LpOutcome z = lp2d_optimize(s, {0, 0}, Sense::Max);
  ASSERT_TRUE(z.optimal());
  EXPECT_EQ(z.value, 0);
  EXPECT_TRUE(satisfies(s, z.point));
}

TEST(Lp2dOptimize, TiesPickLexicographicallySmallestWitness) {
  // max u1 + u2 over the simplex: the whole edge u1+u2=1 is optimal.
  const LpOutcome a = lp2d_optimize(simplex(), {1, 1}, Sense::Max);
  ASSERT_TRUE(a.optimal());
  EXPECT_NEAR(a.point.x1, 0, 1e-12);
  EXPECT_NEAR(a.point.x2, 1, 1e-12);
}

TEST(Lp2dBruteForce, Examples) {
  const auto s = simplex();
  const LpOutcome a = lp2d_brute_force(s, {1, 0}, Sense::Max);
  ASSERT_TRUE(a.optimal());
  EXPECT_DOUBLE_EQ(a.value, 1);
  EXPECT_EQ(a.point, (Point2{1, 0}));
  EXPECT_TRUE(lp2d_brute_force(std::vector<HalfPlane>{HalfPlane({-1, 0}, 0)}, {1, 0}, Sense::Max).unbounded());
  EXPECT_TRUE(lp2d_brute_force(contradiction(), {1, 0}, Sense::Max).infeasible());

  // A single supporting line: max u1+u2 subject to u1+u2 <= 0.
  const LpOutcome d = lp2d_brute_force(std::vector<HalfPlane>{HalfPlane({1, 1}, 0)}, {1, 1}, Sense::Max);
  ASSERT_TRUE(d.optimal());
  EXPECT_EQ(d.value, 0);
  EXPECT_NEAR(d.point.x1 + d.point.x2, 0, 1e-12);

  std::vector<HalfPlane> many(21, HalfPlane({1, 0}, 0));
  EXPECT_THROW(lp2d_brute_force(many, {1, 0}, Sense::Max), std::invalid_argument);
}

TEST(Lp2dOptimize, RandomBoundedEightConstraintInstance) {
  std::mt19937_64 rng(8);
  int checked = 0;
  while (checked < 50) {
    auto cs = random_constraints(rng, 8);
    // Box the instance so it is bounded.
    for (const Point2 n : {Point2{1, 0}, Point2{-1, 0}, Point2{0, 1}, Point2{0, -1}}) cs.emplace_back(n, -20.0);
    const LpOutcome ref = lp2d_brute_force(cs, {2, -3}, Sense::Max);
    if (!ref.optimal()) continue;
    const LpOutcome got = lp2d_optimize(cs, {2, -3}, Sense::Max);
    ASSERT_TRUE(got.optimal());
    EXPECT_NEAR(got.value, ref.value, 1e-9);
    ++checked;
  }
}

TEST(Lp2dOptimize, AgreesWithBruteForce) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> c(-9, 9), m(0, 12), s(0, 1);
  for (int it = 0; it < 2000; ++it) {
    const auto cs = random_constraints(rng, m(rng));
    const Point2 obj{double(c(rng)), double(c(rng))};
    const Sense sense = s(rng) ? Sense::Max : Sense::Min;
    const LpOutcome ref = lp2d_brute_force(cs, obj, sense);
    const LpOutcome got = lp2d_optimize(cs, obj, sense);
    ASSERT_EQ(int(got.kind), int(ref.kind)) << "instance " << it;
    if (got.optimal()) {
      EXPECT_NEAR(got.value, ref.value, 1e-9);
      EXPECT_NEAR(got.value, obj.dot(got.point), 1e-9);
      EXPECT_TRUE(satisfies(cs, got.point));
    }
    if (got.unbounded()) {
      const double gain = obj.dot(got.point);
      EXPECT_GT(sense == Sense::Max ? gain : -gain, 0);
      for (const auto& H : cs) EXPECT_LE(H.normal().dot(got.point), 1e-9);
    }
  }
}

TEST(Lp2dOptimize, InvariantUnderWholePlanePermutationAndScaling) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> m(1, 10);
  std::uniform_real_distribution<double> scale(0.1, 10);
  for (int it = 0; it < 500; ++it) {
    auto cs = random_constraints(rng, m(rng));
    const Point2 obj{1, 2};
    const LpOutcome base = lp2d_optimize(cs, obj, Sense::Max);

    auto shuffled = cs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const LpOutcome p = lp2d_optimize(shuffled, obj, Sense::Max);
    ASSERT_EQ(int(p.kind), int(base.kind));
    if (base.optimal()) EXPECT_NEAR(p.value, base.value, 1e-9);

    std::vector<HalfPlane> scaled;
    for (const auto& H : cs) {
      const double k = scale(rng);
      scaled.emplace_back(H.normal() * k, H.alpha() * k);
    }
    const LpOutcome q = lp2d_optimize(scaled, obj, Sense::Max);
    ASSERT_EQ(int(q.kind), int(base.kind));
    if (base.optimal()) EXPECT_NEAR(q.value, base.value, 1e-8 * (1 + std::abs(base.value)));
  }
}

TEST(Lp2dOptimize, DeterministicForFixedSeed) {
  std::mt19937_64 rng(3);
  const auto cs = random_constraints(rng, 12);
  const LpOutcome a = lp2d_optimize(cs, {1, 1}, Sense::Min, 42);
  const LpOutcome b = lp2d_optimize(cs, {1, 1}, Sense::Min, 42);
  EXPECT_EQ(int(a.kind), int(b.kind));
  EXPECT_EQ(a.point, b.point);
}

}  // namespace
