#include <gtest/gtest.h>

#include "lipsel/oracle.hpp"
#include "lipsel/polygon.hpp"
#include "support/oracles.hpp"

using namespace lipsel;

namespace {

PseudometricSpace two_points(double rho = 1) { return PseudometricSpace(DistanceMatrix::from_rows({{0, rho}, {rho, 0}})); }

// A bounded triangle u1 >= 0, u2 >= 0, u1 + u2 <= 1.
std::vector<HalfPlane> triangle() { return {HalfPlane({-1, 0}, 0), HalfPlane({0, -1}, 0), HalfPlane({1, 1}, -1)}; }

PolygonInstance corner_pair() {
  return {two_points(), {{HalfPlane({1, 0}, 0), HalfPlane({0, 1}, 0)}, {HalfPlane({-1, 0}, 4), HalfPlane({0, 1}, 0)}}};
}

TEST(PolygonInstance, Validation) {
  EXPECT_THROW(PolygonInstance(two_points(), {triangle()}), std::invalid_argument);
  EXPECT_THROW(PolygonInstance(two_points(), {triangle(), {}}), std::invalid_argument);
  EXPECT_EQ(PolygonInstance(two_points(), {triangle(), {HalfPlane({1, 0}, 0)}}).max_constraints(), 3u);
}

TEST(Reduction, SingleConstraintIsIdentity) {
  const PolygonInstance p(two_points(3), {{HalfPlane({1, 0}, 0)}, {HalfPlane({0, 1}, 2)}});
  const Reduction r = reduce_to_halfplanes(p);
  EXPECT_EQ(r.instance.size(), 2u);
  EXPECT_EQ(r.instance.space().matrix(), p.space().matrix());
  EXPECT_EQ(r.back_map, (std::vector<std::vector<std::size_t>>{{0}, {1}}));
}

TEST(Reduction, OnePointThreePlanes) {
  const PolygonInstance p(PseudometricSpace(DistanceMatrix(1)), {triangle()});
  const Reduction r = reduce_to_halfplanes(p);
  ASSERT_EQ(r.instance.size(), 3u);
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(r.instance.space()(u, v), 0);
}

TEST(Reduction, BlockStructure) {
  const Reduction r = reduce_to_halfplanes(corner_pair());
  const DistanceMatrix expected = DistanceMatrix::from_rows({{0, 0, 1, 1}, {0, 0, 1, 1}, {1, 1, 0, 0}, {1, 1, 0, 0}});
  EXPECT_EQ(r.instance.space().matrix(), expected);
  EXPECT_EQ(r.owner, (std::vector<std::size_t>{0, 0, 1, 1}));
}

TEST(SolvePolygon, Examples) {
  const PseudometricSpace three(DistanceMatrix::from_rows({{0, 1, 3}, {1, 0, 2}, {3, 2, 0}}));
  const PolygonInstance same(three, {triangle(), triangle(), triangle()});
  const Outcome a = solve_polygon(same, 1);
  ASSERT_TRUE(a.success());
  EXPECT_EQ(a.seminorm, 0);
  EXPECT_EQ(a.f[0], a.f[1]);
  EXPECT_EQ(a.f[1], a.f[2]);

  const Outcome b = solve_polygon(corner_pair(), 1);
  EXPECT_TRUE(b.no_go());
  EXPECT_FALSE(sharp_feasible(RationalInstance::from(corner_pair()), 1));

  const Outcome c = solve_polygon(corner_pair(), 4);
  ASSERT_TRUE(c.success());
  EXPECT_TRUE(verify_polygon_selection(corner_pair(), c.f, 12).ok);
  EXPECT_LE(c.seminorm, 12);

  EXPECT_THROW(solve_polygon(corner_pair(), 0), std::invalid_argument);
}

TEST(SolvePolygon, MatchesHalfPlaneSolverOnSingleConstraints) {
  oracle::Rng rng(41);
  for (int it = 0; it < 200; ++it) {
    const auto inst = oracle::random_instance(rng, 1 + it % 5);
    std::vector<std::vector<HalfPlane>> polys;
    for (const auto& H : inst.planes()) polys.push_back({H});
    const PolygonInstance p(inst.space(), polys);
    const double l = 0.5 * (1 + it % 6);
    const Outcome a = solve_polygon(p, l);
    const Outcome b = run_projection_algorithm(inst, LambdaPair::uniform(l));
    ASSERT_EQ(a.success(), b.success());
    if (a.success()) {
      EXPECT_EQ(a.f, b.f);
    } else {
      EXPECT_EQ(a.stage, b.stage);
      EXPECT_EQ(a.witness, b.witness);
    }
  }
}

TEST(SolvePolygon, SuccessPullsBackToASelection) {
  oracle::Rng rng(43);
  int successes = 0;
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 2 + it % 3;
    std::vector<std::vector<HalfPlane>> polys(n);
    for (auto& poly : polys) {
      const Point2 p{double(oracle::uniform_int(rng, -4, 4)), double(oracle::uniform_int(rng, -4, 4))};
      for (int k = 0; k < 3; ++k) poly.push_back(oracle::halfplane_through(rng, p));
    }
    const PolygonInstance inst(oracle::random_space(rng, n), polys);
    EXPECT_EQ(reduce_to_halfplanes(inst).instance.size(), 3 * n);
    const double l = 1.0 + it % 4;
    const Outcome o = solve_polygon(inst, l);
    if (!o.success()) continue;
    ++successes;
    const SelectionReport rep = verify_polygon_selection(inst, o.f, 3 * l, 1e-7);
    EXPECT_TRUE(rep.ok) << rep.message;
  }
  EXPECT_GT(successes, 50);
}

}  // namespace
