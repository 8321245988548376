#pragma once

// The (lambda1, lambda2)-projection algorithm for half-plane valued mappings
// on a finite pseudometric space:
//
//   1. metric refinement  F1[x]   = intersection over y of F(y) + l1*rho(x,y)*Q0
//   2. rectangular hulls  T(x)    = HR[F1[x]]
//   3. refined rectangles T1[x]   = intersection over y of T(y) + l2*rho(x,y)*Q0
//   4. g(x)                       = center of the projection of O onto T1[x]
//   5. f(x)                       = projection of g(x) onto F1[x]
//
// Steps 1 and 2 are two-variable linear programs; steps 3-5 are closed form.
// Either stage 1 or stage 3 may report NoGo, which certifies that no
// selection with seminorm <= min(l1, l2) exists. Otherwise f is a selection
// with seminorm <= l1 + 2*l2.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "lp2d.hpp"
#include "metric.hpp"

namespace lipsel {

/// One half-plane F(x_i) per point of the space.
class HalfPlaneInstance {
public:
  HalfPlaneInstance(PseudometricSpace space, std::vector<HalfPlane> planes)
      : space_(std::move(space)), planes_(std::move(planes)) {
    if (planes_.size() != space_.size())
      throw std::invalid_argument("one half-plane per point is required");
  }

  std::size_t size() const { return space_.size(); }
  const PseudometricSpace& space() const { return space_; }
  const std::vector<HalfPlane>& planes() const { return planes_; }
  const HalfPlane& plane(std::size_t i) const { return planes_[i]; }

private:
  PseudometricSpace space_;
  std::vector<HalfPlane> planes_;
};

struct LambdaPair {
  double l1 = 0.0;
  double l2 = 0.0;

  LambdaPair() = default;
  LambdaPair(double a, double b) : l1(a), l2(b) {
    if (!(std::isfinite(a) && std::isfinite(b)) || a < 0.0 || b < 0.0)
      throw std::invalid_argument("lambdas must be finite and nonnegative");
  }
  static LambdaPair uniform(double l) { return {l, l}; }

  double success_bound() const { return l1 + 2.0 * l2; }
};

/// Choice of g at step 4. Only OriginProjection is used by default; the
/// others are valid alternatives with the same guarantees.
enum class CenterRule {
  OriginProjection,  // center of the projection of O onto T1[x]
  BasePointProjection,  // same with O replaced by SolverOptions::base_point
  PlainCenter,  // center of T1[x]; requires bounded rectangles
};

struct SolverOptions {
  CenterRule center_rule = CenterRule::OriginProjection;
  Point2 base_point{};
  std::uint64_t seed = kDefaultSeed;
};

struct Outcome {
  enum class Kind { NoGo, Success };

  Kind kind = Kind::NoGo;

  // NoGo
  int stage = 0;
  std::size_t witness = 0;
  /// Stage 1: indices y whose inflated half-planes are jointly empty.
  /// Stage 3: the partner y of the violating pair (witness, y).
  std::vector<std::size_t> witness_detail;

  // Success
  std::vector<Point2> f;
  std::vector<Point2> g;
  std::vector<Rect> hulls;
  std::vector<Rect> refined;
  ExtReal seminorm = 0.0;

  bool success() const { return kind == Kind::Success; }
  bool no_go() const { return kind == Kind::NoGo; }
};

/// The half-planes H(x;y) = F(y) + l1*rho(x,y)*Q0 with their source y.
/// Pairs at infinite distance impose nothing and are left out.
struct Refinement {
  std::vector<HalfPlane> planes;
  std::vector<std::size_t> source;
};

inline Refinement refinement_constraints(const HalfPlaneInstance& inst, double l1, std::size_t x) {
  if (x >= inst.size()) throw std::out_of_range("point index out of range");
  Refinement r;
  r.planes.reserve(inst.size());
  r.source.reserve(inst.size());
  for (std::size_t y = 0; y < inst.size(); ++y) {
    if (auto H = inflate_halfplane(inst.plane(y), ext::radius(l1, inst.space()(x, y)))) {
      r.planes.push_back(*H);
      r.source.push_back(y);
    }
  }
  return r;
}

struct StageOne {
  bool feasible = true;
  std::size_t witness = 0;
  std::vector<std::size_t> conflict;  // source indices y
};

/// Stage 1: nonemptiness of every metric refinement F1[x].
inline StageOne step1_feasibility(const HalfPlaneInstance& inst, double l1, std::uint64_t seed = kDefaultSeed) {
  for (std::size_t x = 0; x < inst.size(); ++x) {
    const Refinement r = refinement_constraints(inst, l1, x);
    const Feasibility feas = lp2d_feasible(r.planes, seed);
    if (!feas) {
      StageOne out{false, x, {}};
      for (std::size_t k : feas.conflict) out.conflict.push_back(r.source[k]);
      return out;
    }
  }
  return {};
}

namespace detail {

inline Rect hull_of(std::span<const HalfPlane> planes, std::uint64_t seed) {
  auto end = [&](Point2 c, Sense sense) -> std::optional<double> {
    const LpOutcome o = lp2d_optimize(planes, c, sense, seed);
    if (o.infeasible()) return std::nullopt;
    if (o.unbounded()) return sense == Sense::Min ? -kInf : kInf;
    return o.value;
  };
  const auto s1 = end({1, 0}, Sense::Min);
  if (!s1) return Rect::empty();
  const auto s2 = end({1, 0}, Sense::Max);
  const auto t1 = end({0, 1}, Sense::Min);
  const auto t2 = end({0, 1}, Sense::Max);
  if (!s2 || !t1 || !t2) return Rect::empty();
  // Ends of a degenerate (segment or point) set may cross by rounding.
  auto interval = [](double lo, double hi) {
    if (lo > hi) lo = hi = 0.5 * (lo + hi);
    return Interval::make(lo, hi);
  };
  return {interval(*s1, *s2), interval(*t1, *t2)};
}

}  // namespace detail

/// Stage 2: T(x) = HR[F1[x]] from four linear programs.
inline Rect step2_rect_hull(const HalfPlaneInstance& inst, double l1, std::size_t x,
                            std::uint64_t seed = kDefaultSeed) {
  const Refinement r = refinement_constraints(inst, l1, x);
  const Rect T = detail::hull_of(r.planes, seed);
  if (T.is_empty()) throw InvalidState("metric refinement is empty; stage 1 must pass first");
  return T;
}

struct StageThree {
  bool feasible = true;
  std::size_t witness = 0;
  std::size_t partner = 0;
  std::vector<Rect> refined;
};

/// Stage 3: pairwise emptiness test, then the refined rectangles
///   s1'(x) = max_y s1(y) - l2*rho(x,y),  s2'(x) = min_y s2(y) + l2*rho(x,y)
/// and likewise for the second axis.
inline StageThree step3_refine_rects(const std::vector<Rect>& hulls, double l2, const PseudometricSpace& space) {
  const std::size_t n = hulls.size();
  if (n != space.size()) throw std::invalid_argument("one hull per point is required");
  for (const Rect& T : hulls)
    if (T.is_empty()) throw std::invalid_argument("stage 3 needs nonempty hulls");

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (!rects_intersect_within(hulls[x], hulls[y], ext::radius(l2, space(x, y)), kTol))
        return {false, x, y, {}};

  StageThree out;
  out.refined.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    double s1 = -kInf, s2 = kInf, t1 = -kInf, t2 = kInf;
    for (std::size_t y = 0; y < n; ++y) {
      const ExtReal r = ext::radius(l2, space(x, y));
      if (std::isinf(r)) continue;
      s1 = std::max(s1, hulls[y].ix().lo() - r);
      s2 = std::min(s2, hulls[y].ix().hi() + r);
      t1 = std::max(t1, hulls[y].iy().lo() - r);
      t2 = std::min(t2, hulls[y].iy().hi() + r);
    }
    // Pairwise test passed within kTol, so any crossing is rounding.
    if (s1 > s2) s1 = s2 = 0.5 * (s1 + s2);
    if (t1 > t2) t1 = t2 = 0.5 * (t1 + t2);
    out.refined.push_back(Rect::make(s1, s2, t1, t2));
  }
  return out;
}

/// Stage 4: g(x) from the refined rectangles.
inline std::vector<Point2> step4_centers(const std::vector<Rect>& refined, const SolverOptions& opts = {}) {
  std::vector<Point2> g;
  g.reserve(refined.size());
  for (const Rect& T : refined) {
    if (T.is_empty()) throw InvalidState("refined rectangle is empty");
    switch (opts.center_rule) {
      case CenterRule::OriginProjection:
        g.push_back(rect_project_origin_center(T));
        break;
      case CenterRule::BasePointProjection: {
        const Point2 b = opts.base_point;
        const Rect shifted = Rect::make(T.ix().lo() - b.x1, T.ix().hi() - b.x1, T.iy().lo() - b.x2,
                                        T.iy().hi() - b.x2);
        g.push_back(rect_project_origin_center(shifted) + b);
        break;
      }
      case CenterRule::PlainCenter:
        if (!T.is_bounded()) throw InvalidState("plain center needs bounded refined rectangles");
        g.push_back({0.5 * (T.ix().lo() + T.ix().hi()), 0.5 * (T.iy().lo() + T.iy().hi())});
        break;
    }
  }
  return g;
}

/// Stage 5: f(x) = projection of g(x) onto F1[x]. Since g(x) lies in the
/// rectangular hull of F1[x], the distance to F1[x] is the largest distance
/// to a single H(x;y), and the projection onto that half-plane (smallest y
/// on ties) is the answer.
inline std::vector<Point2> step5_project(const HalfPlaneInstance& inst, double l1, const std::vector<Point2>& g) {
  if (g.size() != inst.size()) throw std::invalid_argument("one point g(x) per point is required");
  std::vector<Point2> f;
  f.reserve(g.size());
  for (std::size_t x = 0; x < inst.size(); ++x) {
    double best = 0.0;
    std::optional<HalfPlane> H0;
    for (std::size_t y = 0; y < inst.size(); ++y) {
      const auto H = inflate_halfplane(inst.plane(y), ext::radius(l1, inst.space()(x, y)));
      if (!H) continue;
      const double d = dist_to_halfplane(g[x], *H);
      if (d > best) {
        best = d;
        H0 = H;
      }
    }
    f.push_back(H0 ? project_to_halfplane(g[x], *H0) : g[x]);
  }
  return f;
}

/// max over pairs of ||f(x) - f(y)|| / rho(x,y), with a/0 = inf (a > 0),
/// 0/0 = 0 and a/inf = 0.
inline ExtReal lipschitz_seminorm(const std::vector<Point2>& f, const PseudometricSpace& space) {
  if (f.size() != space.size()) throw std::invalid_argument("one value per point is required");
  ExtReal best = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t y = x + 1; y < f.size(); ++y)
      best = std::max(best, ext::div(dist_inf(f[x], f[y]), space(x, y)));
  return best;
}

struct SelectionReport {
  bool ok = true;
  ExtReal seminorm = 0.0;
  std::optional<std::size_t> bad_point;
  std::optional<std::pair<std::size_t, std::size_t>> bad_pair;
  std::string message;
};

/// Checks f(x) in F(x) within tol for every x, then seminorm <= bound + tol.
inline SelectionReport verify_selection(const HalfPlaneInstance& inst, const std::vector<Point2>& f, double bound,
                                        double tol = kTol) {
  if (f.size() != inst.size()) throw std::invalid_argument("one value per point is required");
  SelectionReport rep;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (!inst.plane(x).contains(f[x], tol)) {
      rep.ok = false;
      rep.bad_point = x;
      rep.message = "f(" + std::to_string(x) + ") lies outside F(" + std::to_string(x) + ")";
      return rep;
    }
  }
  const auto& rho = inst.space();
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t y = x + 1; y < f.size(); ++y) {
      const ExtReal q = ext::div(dist_inf(f[x], f[y]), rho(x, y));
      rep.seminorm = std::max(rep.seminorm, q);
      if (rep.ok && q > bound + tol) {
        rep.ok = false;
        rep.bad_pair = {x, y};
        rep.message = "Lipschitz bound violated on pair (" + std::to_string(x) + "," + std::to_string(y) + ")";
      }
    }
  return rep;
}

inline Outcome run_projection_algorithm(const HalfPlaneInstance& inst, LambdaPair lambdas,
                                        const SolverOptions& opts = {}) {
  Outcome out;
  const StageOne s1 = step1_feasibility(inst, lambdas.l1, opts.seed);
  if (!s1.feasible) {
    out.kind = Outcome::Kind::NoGo;
    out.stage = 1;
    out.witness = s1.witness;
    out.witness_detail = s1.conflict;
    return out;
  }

  std::vector<Rect> hulls;
  hulls.reserve(inst.size());
  for (std::size_t x = 0; x < inst.size(); ++x) hulls.push_back(step2_rect_hull(inst, lambdas.l1, x, opts.seed));

  StageThree s3 = step3_refine_rects(hulls, lambdas.l2, inst.space());
  if (!s3.feasible) {
    out.kind = Outcome::Kind::NoGo;
    out.stage = 3;
    out.witness = s3.witness;
    out.witness_detail = {s3.partner};
    return out;
  }

  out.kind = Outcome::Kind::Success;
  out.g = step4_centers(s3.refined, opts);
  out.f = step5_project(inst, lambdas.l1, out.g);
  out.hulls = std::move(hulls);
  out.refined = std::move(s3.refined);
  out.seminorm = lipschitz_seminorm(out.f, inst.space());
  return out;
}

/// W_F[x,x',x'':l] = HR[(F(x') + l*rho(x',x)*Q0) and (F(x'') + l*rho(x'',x)*Q0)].
inline Rect wf_rect(const HalfPlaneInstance& inst, double ltilde, std::size_t x, std::size_t xp, std::size_t xpp,
                    std::uint64_t seed = kDefaultSeed) {
  if (ltilde < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  std::vector<HalfPlane> planes;
  for (std::size_t z : {xp, xpp})
    if (auto H = inflate_halfplane(inst.plane(z), ext::radius(ltilde, inst.space()(z, x)))) planes.push_back(*H);
  return detail::hull_of(planes, seed);
}

struct WCondition {
  bool holds = true;
  /// First violating (x, x', x'', y, y', y'').
  std::optional<std::array<std::size_t, 6>> violation;
};

inline constexpr std::size_t kWConditionCap = 8;

/// Whether W_F[x,x',x'':lt] meets W_F[y,y',y'':lt] + l*rho(x,y)*Q0 for all
/// sextuples. Under this condition the algorithm with (lt, l) succeeds with
/// seminorm at most 2l + lt.
inline WCondition check_wnew(const HalfPlaneInstance& inst, double ltilde, double l,
                             std::uint64_t seed = kDefaultSeed) {
  const std::size_t n = inst.size();
  if (n > kWConditionCap) throw std::invalid_argument("check_wnew supports at most 8 points");
  if (l < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  std::vector<Rect> W(n * n * n);
  auto at = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) W[at(x, a, b)] = wf_rect(inst, ltilde, x, a, b, seed);

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t xp = 0; xp < n; ++xp)
      for (std::size_t xpp = 0; xpp < n; ++xpp) {
        const Rect& A = W[at(x, xp, xpp)];
        for (std::size_t y = 0; y < n; ++y) {
          const ExtReal r = ext::radius(l, inst.space()(x, y));
          for (std::size_t yp = 0; yp < n; ++yp)
            for (std::size_t ypp = 0; ypp < n; ++ypp) {
              const Rect& B = W[at(y, yp, ypp)];
              if (A.is_empty() || B.is_empty() || !rects_intersect_within(A, B, r))
                return {false, std::array<std::size_t, 6>{x, xp, xpp, y, yp, ypp}};
            }
        }
      }
  return {};
}

}  // namespace lipsel
