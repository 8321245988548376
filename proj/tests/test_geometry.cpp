#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lipsel/geometry.hpp"
#include "support/oracles.hpp"

using namespace lipsel;

namespace {

Rect R(double a1, double b1, double a2, double b2) { return Rect::make(a1, b1, a2, b2); }

TEST(ExtArithmetic, Conventions) {
  EXPECT_EQ(ext::div(3.0, 0.0), kInf);
  EXPECT_EQ(ext::div(0.0, 0.0), 0.0);
  EXPECT_EQ(ext::div(2.0, kInf), 0.0);
  EXPECT_EQ(ext::sub(kInf, kInf), 0.0);
  EXPECT_EQ(ext::sub(-kInf, -kInf), 0.0);
  EXPECT_EQ(ext::sub(kInf, -kInf), kInf);
  EXPECT_EQ(ext::sub(-kInf, kInf), -kInf);
  EXPECT_EQ(ext::radius(0.0, kInf), kInf);
  EXPECT_EQ(ext::radius(2.0, 3.0), 6.0);
  EXPECT_EQ(ext::add(1.0, kInf), kInf);
}

TEST(Point2, Norms) {
  const Point2 p{3, -4};
  EXPECT_EQ(p.norm_inf(), 4);
  EXPECT_EQ(p.norm_l1(), 7);
  EXPECT_EQ(dist_inf({1, 1}, {-1, 0.5}), 2);
}

TEST(Interval, EmptyIsAMarkerNotInvertedBounds) {
  const Interval e = Interval::make(2, 1);
  EXPECT_TRUE(e.is_empty());
  EXPECT_THROW(e.lo(), std::logic_error);
  const Interval whole;
  EXPECT_FALSE(whole.is_empty());
  EXPECT_FALSE(whole.is_bounded());
  EXPECT_TRUE(Interval::make(0, 1).intersect(Interval::make(2, 3)).is_empty());
  EXPECT_EQ(Interval::make(0, 1).inflated(1), Interval::make(-1, 2));
}

TEST(Rect, EmptyAxisMakesEmptyRect) {
  EXPECT_TRUE(R(0, 1, 3, 2).is_empty());
  EXPECT_TRUE(R(0, 1, 0, 1).is_bounded());
  EXPECT_FALSE(R(-kInf, 0, 0, 1).is_bounded());
}

TEST(HalfPlane, RejectsZeroNormal) {
  EXPECT_THROW(HalfPlane({0, 0}, 1), std::invalid_argument);
  EXPECT_THROW(HalfPlane({kInf, 1}, 0), std::invalid_argument);
}

TEST(SignVector, Examples) {
  EXPECT_EQ(sign_vector({3, -2}), (Point2{1, -1}));
  EXPECT_EQ(sign_vector({0, 5}), (Point2{0, 1}));
  EXPECT_EQ(sign_vector({-1, -1}), (Point2{-1, -1}));
  EXPECT_THROW(sign_vector({0, 0}), std::invalid_argument);
}

TEST(DistToHalfPlane, Examples) {
  EXPECT_DOUBLE_EQ(dist_to_halfplane({2, 3}, HalfPlane({1, 0}, 0)), 2);
  EXPECT_DOUBLE_EQ(dist_to_halfplane({1, 1}, HalfPlane({1, 1}, 0)), 1);
  EXPECT_DOUBLE_EQ(dist_to_halfplane({-1, -1}, HalfPlane({1, 1}, 0)), 0);
}

TEST(DistToHalfPlane, MatchesBoundarySampling) {
  // Value for g=(1,1), u1+u2<=0 computed by sampling the boundary.
  const double sampled = oracle::grid_dist_halfplane({1, 1}, HalfPlane({1, 1}, 0), 1e-4, 4);
  EXPECT_NEAR(sampled, 1.0, 1e-4);
}

TEST(ProjectToHalfPlane, Examples) {
  EXPECT_EQ(project_to_halfplane({1, 1}, HalfPlane({1, 1}, 0)), (Point2{0, 0}));
  EXPECT_EQ(project_to_halfplane({-5, 2}, HalfPlane({1, 1}, 0)), (Point2{-5, 2}));
  const Point2 f = project_to_halfplane({1, 0}, HalfPlane({1, -1}, 2));
  EXPECT_DOUBLE_EQ(f.x1, -0.5);
  EXPECT_DOUBLE_EQ(f.x2, 1.5);
}

TEST(ProjectToHalfPlane, GridOracleForTheExamples) {
  const auto a = oracle::sample_boundary({1, 1}, HalfPlane({1, 1}, 0), 1e-4, 4);
  EXPECT_NEAR(a.nearest.x1, 0, 2e-4);
  EXPECT_NEAR(a.nearest.x2, 0, 2e-4);
  const auto b = oracle::sample_boundary({1, 0}, HalfPlane({1, -1}, 2), 1e-4, 4);
  EXPECT_NEAR(b.dist, 1.5, 2e-4);
  EXPECT_NEAR(b.nearest.x1, -0.5, 2e-4);
  EXPECT_NEAR(b.nearest.x2, 1.5, 2e-4);
}

TEST(ProjectToHalfPlane, AxisParallelFromOutsideIsRejected) {
  EXPECT_THROW(project_to_halfplane({2, 3}, HalfPlane({1, 0}, 0)), PreconditionViolation);
  EXPECT_EQ(project_to_halfplane({-2, 3}, HalfPlane({1, 0}, 0)), (Point2{-2, 3}));
}

TEST(ProjectToHalfPlane, LandsOnBoundaryAtDistance) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-3, 3), pt(-5, 5);
  for (int it = 0; it < 2000; ++it) {
    const double a = coef(rng), b = coef(rng);
    if (std::abs(a) < 1e-3 || std::abs(b) < 1e-3) continue;
    const HalfPlane H({a, b}, coef(rng));
    const Point2 g{pt(rng), pt(rng)};
    const double d = dist_to_halfplane(g, H);
    EXPECT_EQ(d == 0.0, H.residual(g) <= 0.0);
    if (d == 0.0) continue;
    const Point2 f = project_to_halfplane(g, H);
    EXPECT_NEAR(H.residual(f), 0.0, 1e-9 * (1 + std::abs(H.alpha())));
    EXPECT_NEAR(dist_inf(f, g), d, 1e-9);
  }
}

TEST(InflateHalfPlane, Examples) {
  auto a = inflate_halfplane(HalfPlane({1, 0}, 0), 2);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->alpha(), -2);
  auto b = inflate_halfplane(HalfPlane({1, 1}, 0), 1);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->alpha(), -2);
  EXPECT_FALSE(inflate_halfplane(HalfPlane({1, 1}, 0), kInf));
  EXPECT_THROW(inflate_halfplane(HalfPlane({1, 1}, 0), -1), std::invalid_argument);
}

TEST(RectDistOrigin, Examples) {
  EXPECT_EQ(rect_dist_origin(R(1, 2, -3, -1)), 1);
  EXPECT_EQ(rect_dist_origin(R(-1, 2, -1, 1)), 0);
  EXPECT_EQ(rect_dist_origin(R(-kInf, -4, -kInf, kInf)), 4);
  EXPECT_THROW(rect_dist_origin(Rect::empty()), std::invalid_argument);
}

TEST(RectDistOrigin, GridOracleExample) {
  const auto s = oracle::grid_rect_origin(1, 2, -3, -1, 4, 200);
  EXPECT_NEAR(s.dist, 1, 1e-12);
}

TEST(RectProjectOriginCenter, Examples) {
  EXPECT_EQ(rect_project_origin_center(R(1, 2, -3, -1)), (Point2{1, -1}));
  EXPECT_EQ(rect_project_origin_center(R(-1, 2, -1, 1)), (Point2{0, 0}));
  EXPECT_EQ(rect_project_origin_center(R(-kInf, kInf, 2, 5)), (Point2{0, 2}));
  const auto s = oracle::grid_rect_origin(1, 2, -3, -1, 4, 200);
  EXPECT_NEAR(s.center.x1, 1, 1e-12);
  EXPECT_NEAR(s.center.x2, -1, 1e-12);
}

TEST(RectDistOrigin, AgreesWithGridOnRandomBoundedRects) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> end(-16, 16);  // quarter units
  const int half = 200;
  const double radius = 5.0, pitch = radius / half;
  for (int it = 0; it < 100; ++it) {
    double a1 = end(rng) / 4.0, b1 = end(rng) / 4.0, a2 = end(rng) / 4.0, b2 = end(rng) / 4.0;
    if (a1 > b1) std::swap(a1, b1);
    if (a2 > b2) std::swap(a2, b2);
    const auto s = oracle::grid_rect_origin(a1, b1, a2, b2, radius, half);
    ASSERT_TRUE(s.any);
    EXPECT_LE(std::abs(rect_dist_origin(R(a1, b1, a2, b2)) - s.dist), pitch);
  }
}

TEST(IntervalHausdorff, Examples) {
  EXPECT_EQ(interval_hausdorff(Interval::make(0, 1), Interval::make(0, 1)), 0);
  EXPECT_EQ(interval_hausdorff(Interval::make(0, 1), Interval::make(2, 5)), 4);
  EXPECT_EQ(interval_hausdorff(Interval::make(-kInf, 0), Interval::make(-kInf, 3)), 3);
  EXPECT_EQ(interval_hausdorff(Interval::make(-kInf, 0), Interval::make(1, 3)), kInf);
  EXPECT_THROW(interval_hausdorff(Interval::empty(), Interval::make(0, 1)), std::invalid_argument);
}

TEST(IntervalHausdorff, SampledDefinition) {
  // sup over a of dist(a,B) and over b of dist(b,A) for [0,1] and [2,5].
  double h = 0;
  for (int k = 0; k <= 1000; ++k) {
    const double a = k / 1000.0, b = 2 + 3 * k / 1000.0;
    h = std::max({h, std::max(0.0, 2 - a), std::max(0.0, b - 1)});
  }
  EXPECT_DOUBLE_EQ(h, 4);
}

TEST(IntervalHausdorff, SymmetricAndTriangle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  auto random_interval = [&] {
    double a = u(rng), b = u(rng);
    return Interval::make(std::min(a, b), std::max(a, b));
  };
  for (int it = 0; it < 1000; ++it) {
    const Interval A = random_interval(), B = random_interval(), C = random_interval();
    EXPECT_EQ(interval_hausdorff(A, B), interval_hausdorff(B, A));
    EXPECT_LE(interval_hausdorff(A, C), interval_hausdorff(A, B) + interval_hausdorff(B, C) + 1e-12);
  }
}

TEST(RectsIntersectWithin, Examples) {
  const Rect a = R(0, 1, 0, 1), b = R(3, 4, 0, 1);
  EXPECT_FALSE(rects_intersect_within(a, b, 1));
  EXPECT_TRUE(rects_intersect_within(a, b, 2));
  EXPECT_TRUE(rects_intersect_within(b, b, 0));
  EXPECT_TRUE(rects_intersect_within(a, b, kInf));
  EXPECT_THROW(rects_intersect_within(a, Rect::empty(), 1), std::invalid_argument);
}

TEST(RectsIntersectWithin, AgreesWithExplicitInflation) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> end(-8, 8), pick(0, 5);
  auto side = [&] {
    double a = end(rng), b = end(rng);
    if (a > b) std::swap(a, b);
    if (pick(rng) == 0) a = -kInf;
    if (pick(rng) == 0) b = kInf;
    return Interval::make(a, b);
  };
  for (int it = 0; it < 1000; ++it) {
    const Rect Tx(side(), side()), Ty(side(), side());
    const double r = end(rng) + 8;
    const bool direct = !Tx.ix().intersect(Ty.ix().inflated(r)).is_empty() &&
                        !Tx.iy().intersect(Ty.iy().inflated(r)).is_empty();
    EXPECT_EQ(rects_intersect_within(Tx, Ty, r), direct);
  }
}

TEST(ToString, RoundTripsAndSentinels) {
  EXPECT_EQ(to_string(kInf), "inf");
  EXPECT_EQ(to_string(-kInf), "-inf");
  EXPECT_EQ(std::stod(to_string(0.1)), 0.1);
}

}  // namespace
