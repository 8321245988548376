#pragma once

// Linear feasibility and optimization over finitely many half-planes.
//
// lp2d_optimize is Seidel's randomized incremental algorithm (expected linear
// time). Unboundedness is settled up front on the cone of constraint normals,
// which also yields one or two constraints that bound the objective; the
// incremental phase starts from their optimum, so every intermediate
// subproblem is bounded and no artificial bounding box is needed.
//
// lp2d_brute_force enumerates boundary-line intersections and candidate
// recession directions. It shares no code path with lp2d_optimize and serves
// as its test oracle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"

namespace lipsel {

enum class Sense { Min, Max };

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

struct LpOutcome {
  enum class Kind { Infeasible, Unbounded, Optimal };

  Kind kind = Kind::Infeasible;
  /// Optimal value <c, point>; meaningful only for Optimal.
  double value = 0.0;
  /// Optimal witness, or a recession direction improving the objective in the
  /// requested sense (Unbounded).
  Point2 point{};
  /// Irreducible infeasible subset of constraint indices (Infeasible).
  std::vector<std::size_t> conflict;

  bool optimal() const { return kind == Kind::Optimal; }
  bool unbounded() const { return kind == Kind::Unbounded; }
  bool infeasible() const { return kind == Kind::Infeasible; }
};

struct Feasibility {
  std::optional<Point2> point;
  std::vector<std::size_t> conflict;

  explicit operator bool() const { return point.has_value(); }
};

namespace detail {

// n . u <= b, i.e. the half-plane with h = n, alpha = -b.
struct Row {
  Point2 n;
  double b;
  std::size_t index;

  double residual(const Point2& u) const { return n.dot(u) - b; }
};

inline std::vector<Row> to_rows(std::span<const HalfPlane> cs) {
  std::vector<Row> rows;
  rows.reserve(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) rows.push_back({cs[i].normal(), -cs[i].alpha(), i});
  return rows;
}

inline Point2 perp(const Point2& v) { return {-v.x2, v.x1}; }

inline bool near_zero(double v, double scale) { return std::abs(v) <= 1e-14 * scale; }

// Result of maximizing <c,u> over a set of rows known to bound c.
struct Incremental {
  std::optional<Point2> point;
  std::vector<std::size_t> processed;  // rows inserted before failure (positions)
};

// Feasible range [lo, hi] of t along the line p + t*dir.
struct LineRange {
  double lo = -kInf;
  double hi = kInf;
  std::size_t lo_row = SIZE_MAX;
  std::size_t hi_row = SIZE_MAX;
  bool infeasible = false;
};

inline LineRange clip_line(const Point2& p, const Point2& dir, const std::vector<Row>& rows,
                           std::span<const std::size_t> active) {
  LineRange range;
  const double dn = std::abs(dir.x1) + std::abs(dir.x2);
  for (std::size_t pos : active) {
    const Row& r = rows[pos];
    const double a = r.n.dot(dir);
    const double rhs = r.b - r.n.dot(p);
    if (near_zero(a, r.n.norm_l1() * dn)) {
      if (-rhs > kTol) {
        range.infeasible = true;
        return range;
      }
      continue;
    }
    const double t = rhs / a;
    if (a > 0) {
      if (t < range.hi) {
        range.hi = t;
        range.hi_row = pos;
      }
    } else if (t > range.lo) {
      range.lo = t;
      range.lo_row = pos;
    }
  }
  if (range.lo > range.hi) {
    // Both ends are finite here; accept a crossing whose residuals at the
    // midpoint stay within tolerance.
    const double mid = 0.5 * (range.lo + range.hi);
    const Point2 u = p + dir * mid;
    const double worst = std::max(rows[range.lo_row].residual(u), rows[range.hi_row].residual(u));
    if (worst > kTol) {
      range.infeasible = true;
    } else {
      range.lo = range.hi = mid;
    }
  }
  return range;
}

// Seidel's incremental step. `start` is the optimum over rows[seed_rows];
// every subproblem containing seed_rows is bounded in c.
inline Incremental seidel(const std::vector<Row>& rows, const Point2& c, Point2 start,
                          std::vector<std::size_t> seed_rows, std::uint64_t seed) {
  std::vector<std::size_t> order;
  order.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (std::find(seed_rows.begin(), seed_rows.end(), i) == seed_rows.end()) order.push_back(i);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::size_t> active = std::move(seed_rows);
  active.reserve(rows.size());
  Point2 v = start;
  const double cn = c.norm_l1();
  for (std::size_t k : order) {
    const Row& rk = rows[k];
    if (rk.residual(v) > kTol) {
      const double nn = rk.n.dot(rk.n);
      const Point2 p0 = rk.n * (rk.b / nn);
      const Point2 dir = perp(rk.n);
      const LineRange range = clip_line(p0, dir, rows, active);
      if (range.infeasible) {
        active.push_back(k);
        return {std::nullopt, std::move(active)};
      }
      const double cd = c.dot(dir);
      double t;
      if (!near_zero(cd, cn * dir.norm_l1()) && cd > 0 && std::isfinite(range.hi)) {
        t = range.hi;
      } else if (!near_zero(cd, cn * dir.norm_l1()) && cd < 0 && std::isfinite(range.lo)) {
        t = range.lo;
      } else {
        t = std::clamp(0.0, range.lo, range.hi);
      }
      v = p0 + dir * t;
    }
    active.push_back(k);
  }
  return {v, std::move(active)};
}

// Outcome of the recession-cone test for max <c,u>.
struct Recession {
  std::optional<Point2> direction;   // c.d > 0 and n_i.d <= 0 for all i
  std::vector<std::size_t> bounding;  // one or two rows bounding c otherwise
};

// Directions with c.d > 0 are positive multiples of c + s*perp(c); each row
// constrains s to a half-line.
inline Recession recession(const std::vector<Row>& rows, const Point2& c) {
  const Point2 cp = perp(c);
  double lo = -kInf, hi = kInf;
  std::size_t lo_row = SIZE_MAX, hi_row = SIZE_MAX;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double p = rows[i].n.dot(c);
    const double q = rows[i].n.dot(cp);
    if (q == 0.0) {
      if (p > 0.0) return {std::nullopt, {i}};
      continue;
    }
    const double s = -p / q;
    if (q > 0.0) {
      if (s < hi) {
        hi = s;
        hi_row = i;
      }
    } else if (s > lo) {
      lo = s;
      lo_row = i;
    }
  }
  // A cone pinched to a single ray shows up as lo and hi a few ulps apart
  // after rounding; treat it as the ray.
  if (lo > hi + 1e-12 * (1.0 + std::abs(lo) + std::abs(hi))) return {std::nullopt, {hi_row, lo_row}};
  const double s = lo > hi ? hi : std::clamp(0.0, lo, hi);
  return {c + cp * s, {}};
}

inline Point2 line_intersection(const Row& a, const Row& b) {
  const double det = a.n.x1 * b.n.x2 - a.n.x2 * b.n.x1;
  return {(a.b * b.n.x2 - a.n.x2 * b.b) / det, (a.n.x1 * b.b - a.b * b.n.x1) / det};
}

// Deterministic choice on the optimal face through v: the lexicographically
// smallest point when it exists, else the finite endpoint of a ray, else the
// point of the line nearest the origin.
inline Point2 canonical_optimum(const std::vector<Row>& rows, const Point2& c, const Point2& v) {
  const Point2 dir = perp(c);
  std::vector<std::size_t> all(rows.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  LineRange range = clip_line(v, dir, rows, all);
  if (range.infeasible) return v;
  range.lo = std::min(range.lo, 0.0);
  range.hi = std::max(range.hi, 0.0);
  if (range.lo == range.hi) return v;
  // Moving along +dir changes x1 by -c2 and x2 by c1.
  bool want_hi;
  if (dir.x1 != 0.0) {
    want_hi = dir.x1 < 0.0;
  } else {
    want_hi = dir.x2 < 0.0;
  }
  double t;
  if (want_hi ? std::isfinite(range.hi) : std::isfinite(range.lo)) {
    t = want_hi ? range.hi : range.lo;
  } else if (std::isfinite(range.lo)) {
    t = range.lo;
  } else if (std::isfinite(range.hi)) {
    t = range.hi;
  } else {
    t = -v.dot(dir) / dir.dot(dir);
  }
  return v + dir * t;
}

// Shrinks an infeasible subset to an irreducible one by deletion filtering.
inline std::vector<std::size_t> irreducible(const std::vector<Row>& rows, std::vector<std::size_t> subset,
                                            std::uint64_t seed);

// Maximizes <c,u>, c != 0, assuming `bounding` rows bound c.
inline Incremental bounded_max(const std::vector<Row>& rows, const Point2& c,
                               const std::vector<std::size_t>& bounding, std::uint64_t seed) {
  auto foot = [](const Row& r) { return r.n * (r.b / r.n.dot(r.n)); };
  if (bounding.size() == 1) return seidel(rows, c, foot(rows[bounding[0]]), bounding, seed);
  const Row& a = rows[bounding[0]];
  const Row& b = rows[bounding[1]];
  const double det = a.n.x1 * b.n.x2 - a.n.x2 * b.n.x1;
  if (near_zero(det, a.n.norm_l1() * b.n.norm_l1())) {
    // Antiparallel pair: c is (numerically) parallel to both normals, so the
    // row facing c bounds it on its own.
    const std::size_t k = a.n.dot(c) >= b.n.dot(c) ? bounding[0] : bounding[1];
    return seidel(rows, c, foot(rows[k]), {k}, seed);
  }
  return seidel(rows, c, line_intersection(a, b), bounding, seed);
}

inline std::optional<Point2> feasible_raw(const std::vector<Row>& rows, std::uint64_t seed,
                                          std::vector<std::size_t>* processed = nullptr) {
  if (rows.empty()) return Point2{};
  const Point2 c = rows[0].n;
  Incremental inc = bounded_max(rows, c, {0}, seed);
  if (!inc.point) {
    if (processed) *processed = std::move(inc.processed);
    return std::nullopt;
  }
  return canonical_optimum(rows, c, *inc.point);
}

inline std::vector<std::size_t> irreducible(const std::vector<Row>& rows, std::vector<std::size_t> subset,
                                            std::uint64_t seed) {
  std::sort(subset.begin(), subset.end());
  for (std::size_t i = 0; i < subset.size();) {
    std::vector<Row> trial;
    trial.reserve(subset.size() - 1);
    for (std::size_t j = 0; j < subset.size(); ++j)
      if (j != i) trial.push_back(rows[subset[j]]);
    if (!feasible_raw(trial, seed)) {
      subset.erase(subset.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  std::vector<std::size_t> out;
  out.reserve(subset.size());
  for (std::size_t pos : subset) out.push_back(rows[pos].index);
  return out;
}

inline LpOutcome infeasible_outcome(const std::vector<Row>& rows, std::vector<std::size_t> processed,
                                    std::uint64_t seed) {
  LpOutcome out;
  out.kind = LpOutcome::Kind::Infeasible;
  out.conflict = irreducible(rows, std::move(processed), seed);
  return out;
}

}  // namespace detail

/// A point satisfying every constraint within kTol, or an irreducible
/// infeasible subset (at most three constraints in exact arithmetic).
inline Feasibility lp2d_feasible(std::span<const HalfPlane> constraints, std::uint64_t seed = kDefaultSeed) {
  const auto rows = detail::to_rows(constraints);
  std::vector<std::size_t> processed;
  if (auto p = detail::feasible_raw(rows, seed, &processed)) return {p, {}};
  return {std::nullopt, detail::irreducible(rows, std::move(processed), seed)};
}

/// Optimizes <c,u> over the intersection of the constraints.
///
/// Unbounded carries a recession direction d of the feasible set with
/// <c,d> > 0 for Max and <c,d> < 0 for Min. With c = 0 the result is
/// Optimal(0, some feasible point).
inline LpOutcome lp2d_optimize(std::span<const HalfPlane> constraints, Point2 c, Sense sense,
                               std::uint64_t seed = kDefaultSeed) {
  using detail::Row;
  const auto rows = detail::to_rows(constraints);
  const Point2 cmax = sense == Sense::Max ? c : c * -1.0;
  LpOutcome out;

  if (c.is_zero()) {
    std::vector<std::size_t> processed;
    auto p = detail::feasible_raw(rows, seed, &processed);
    if (!p) return detail::infeasible_outcome(rows, std::move(processed), seed);
    out.kind = LpOutcome::Kind::Optimal;
    out.point = *p;
    out.value = 0.0;
    return out;
  }

  const detail::Recession rec = detail::recession(rows, cmax);
  if (rec.direction) {
    std::vector<std::size_t> processed;
    if (!detail::feasible_raw(rows, seed, &processed))
      return detail::infeasible_outcome(rows, std::move(processed), seed);
    out.kind = LpOutcome::Kind::Unbounded;
    out.point = *rec.direction;
    return out;
  }

  detail::Incremental inc = detail::bounded_max(rows, cmax, rec.bounding, seed);
  if (!inc.point) return detail::infeasible_outcome(rows, std::move(inc.processed), seed);
  out.kind = LpOutcome::Kind::Optimal;
  out.point = detail::canonical_optimum(rows, cmax, *inc.point);
  out.value = c.dot(out.point);
  return out;
}

/// Exhaustive oracle for lp2d_optimize; at most 20 constraints.
inline LpOutcome lp2d_brute_force(std::span<const HalfPlane> constraints, Point2 c, Sense sense) {
  if (constraints.size() > 20) throw std::invalid_argument("lp2d_brute_force: more than 20 constraints");
  const auto rows = detail::to_rows(constraints);
  const Point2 cmax = sense == Sense::Max ? c : c * -1.0;

  auto feasible = [&](const Point2& u) {
    return std::all_of(rows.begin(), rows.end(), [&](const detail::Row& r) { return r.residual(u) <= kTol; });
  };

  // Every nonempty feasible set contains a vertex of the arrangement, or (if
  // all normals are parallel) a foot of the origin on some boundary line, or
  // the origin itself.
  std::vector<Point2> candidates{Point2{}};
  for (const auto& r : rows) candidates.push_back(r.n * (r.b / r.n.dot(r.n)));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const double det = rows[i].n.x1 * rows[j].n.x2 - rows[i].n.x2 * rows[j].n.x1;
      if (det != 0.0) candidates.push_back(detail::line_intersection(rows[i], rows[j]));
    }
  std::vector<Point2> feasible_pts;
  for (const auto& u : candidates)
    if (feasible(u)) feasible_pts.push_back(u);

  LpOutcome out;
  if (feasible_pts.empty()) {
    out.kind = LpOutcome::Kind::Infeasible;
    return out;
  }

  if (!c.is_zero()) {
    // Extreme rays of the recession cone lie along boundary directions; c
    // itself covers the case where it is interior to the cone.
    std::vector<Point2> dirs{cmax};
    for (const auto& r : rows) {
      dirs.push_back(detail::perp(r.n));
      dirs.push_back(detail::perp(r.n) * -1.0);
    }
    for (const auto& d : dirs) {
      const double dn = d.norm_l1();
      const bool recedes = std::all_of(rows.begin(), rows.end(), [&](const detail::Row& r) {
        return r.n.dot(d) <= 1e-12 * r.n.norm_l1() * dn;
      });
      if (recedes && cmax.dot(d) > 1e-12 * cmax.norm_l1() * dn) {
        out.kind = LpOutcome::Kind::Unbounded;
        out.point = d;
        return out;
      }
    }
  }

  double best = -kInf;
  for (const auto& u : feasible_pts) best = std::max(best, cmax.dot(u));
  const double slack = 1e-12 * std::max(1.0, std::abs(best));
  std::optional<Point2> pick;
  for (const auto& u : feasible_pts) {
    if (cmax.dot(u) < best - slack) continue;
    if (!pick || u.x1 < pick->x1 || (u.x1 == pick->x1 && u.x2 < pick->x2)) pick = u;
  }
  out.kind = LpOutcome::Kind::Optimal;
  out.point = *pick;
  out.value = c.dot(*pick);
  return out;
}

}  // namespace lipsel
