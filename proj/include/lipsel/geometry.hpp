#pragma once

// Extended reals, points, intervals, rectangles and half-planes in the plane
// equipped with the uniform norm, plus the closed-form distance and
// projection formulas the selection algorithm is built on.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace lipsel {

/// Absolute tolerance on constraint residuals <h,u> + alpha.
inline constexpr double kTol = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A real number or +-infinity. IEEE doubles already carry both infinities;
/// the helpers in `ext` replace the operations where IEEE yields NaN.
using ExtReal = double;

class PreconditionViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class InvalidState : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

namespace ext {

/// a - b with (+inf) - (+inf) = (-inf) - (-inf) = 0.
inline ExtReal sub(ExtReal a, ExtReal b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0)) return 0.0;
  return a - b;
}

/// a / b for a >= 0, b >= 0 with a/0 = +inf for a > 0 and 0/0 = 0.
inline ExtReal div(ExtReal a, ExtReal b) {
  if (b == 0.0) return a > 0.0 ? kInf : 0.0;
  if (std::isinf(b)) return std::isinf(a) ? kInf : 0.0;
  return a / b;
}

/// Inflation radius lambda * rho for lambda, rho >= 0; 0 * inf = +inf.
inline ExtReal radius(double lambda, ExtReal rho) {
  if (std::isinf(rho)) return kInf;
  return lambda * rho;
}

/// a + b for a, b >= 0 (shortest-path relaxation).
inline ExtReal add(ExtReal a, ExtReal b) {
  if (std::isinf(a) || std::isinf(b)) return kInf;
  return a + b;
}

inline double pos(double a) { return a > 0.0 ? a : 0.0; }

}  // namespace ext

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;

  Point2 operator+(const Point2& o) const { return {x1 + o.x1, x2 + o.x2}; }
  Point2 operator-(const Point2& o) const { return {x1 - o.x1, x2 - o.x2}; }
  Point2 operator*(double s) const { return {x1 * s, x2 * s}; }

  double dot(const Point2& o) const { return x1 * o.x1 + x2 * o.x2; }
  double norm_inf() const { return std::max(std::abs(x1), std::abs(x2)); }
  double norm_l1() const { return std::abs(x1) + std::abs(x2); }
  bool is_zero() const { return x1 == 0.0 && x2 == 0.0; }
};

inline double dist_inf(const Point2& a, const Point2& b) { return (a - b).norm_inf(); }

/// Closed interval [lo, hi] of the extended real line, or the empty set.
class Interval {
public:
  /// The whole line.
  Interval() = default;

  /// [lo, hi]; empty when lo > hi. Ends may be infinite.
  static Interval make(ExtReal lo, ExtReal hi) {
    if (std::isnan(lo) || std::isnan(hi)) throw std::invalid_argument("interval end is NaN");
    if (lo > hi) return empty();
    Interval r;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
  }

  static Interval empty() {
    Interval r;
    r.empty_ = true;
    r.lo_ = 0.0;
    r.hi_ = 0.0;
    return r;
  }

  bool is_empty() const { return empty_; }
  bool is_bounded() const { return !empty_ && std::isfinite(lo_) && std::isfinite(hi_); }

  ExtReal lo() const {
    require_nonempty();
    return lo_;
  }
  ExtReal hi() const {
    require_nonempty();
    return hi_;
  }

  bool contains(double t, double tol = 0.0) const {
    return !empty_ && t >= lo_ - tol && t <= hi_ + tol;
  }

  /// A + [-r, r].
  Interval inflated(ExtReal r) const {
    if (empty_) return *this;
    if (std::isinf(r)) return Interval{};
    return make(lo_ - r, hi_ + r);
  }

  Interval intersect(const Interval& o) const {
    if (empty_ || o.empty_) return empty();
    return make(std::max(lo_, o.lo_), std::min(hi_, o.hi_));
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

private:
  void require_nonempty() const {
    if (empty_) throw std::invalid_argument("empty interval has no ends");
  }

  bool empty_ = false;
  ExtReal lo_ = -kInf;
  ExtReal hi_ = kInf;
};

/// Axis-parallel, possibly unbounded rectangle ix x iy, or the empty set.
class Rect {
public:
  /// The whole plane.
  Rect() = default;

  Rect(Interval ix, Interval iy) : ix_(ix), iy_(iy) {
    if (ix_.is_empty() || iy_.is_empty()) {
      ix_ = Interval::empty();
      iy_ = Interval::empty();
    }
  }

  static Rect make(ExtReal s1, ExtReal s2, ExtReal t1, ExtReal t2) {
    return {Interval::make(s1, s2), Interval::make(t1, t2)};
  }

  static Rect empty() { return {Interval::empty(), Interval::empty()}; }

  bool is_empty() const { return ix_.is_empty(); }
  bool is_bounded() const { return ix_.is_bounded() && iy_.is_bounded(); }

  const Interval& ix() const { return ix_; }
  const Interval& iy() const { return iy_; }

  bool contains(const Point2& p, double tol = 0.0) const {
    return ix_.contains(p.x1, tol) && iy_.contains(p.x2, tol);
  }

  /// T + r * Q0 where Q0 = [-1,1]^2.
  Rect inflated(ExtReal r) const { return {ix_.inflated(r), iy_.inflated(r)}; }

  Rect intersect(const Rect& o) const {
    return {ix_.intersect(o.ix_), iy_.intersect(o.iy_)};
  }

  friend bool operator==(const Rect&, const Rect&) = default;

private:
  Interval ix_;
  Interval iy_;
};

/// Closed half-plane {u : <h,u> + alpha <= 0}. The normal h points outward
/// and is kept exactly as given (not normalized).
class HalfPlane {
public:
  HalfPlane(Point2 h, double alpha) : h_(h), alpha_(alpha) {
    if (h.is_zero()) throw std::invalid_argument("half-plane normal must be nonzero");
    if (!std::isfinite(h.x1) || !std::isfinite(h.x2) || !std::isfinite(alpha))
      throw std::invalid_argument("half-plane coefficients must be finite");
  }

  const Point2& normal() const { return h_; }
  double alpha() const { return alpha_; }

  /// <h,u> + alpha; nonpositive exactly on the half-plane.
  double residual(const Point2& u) const { return h_.dot(u) + alpha_; }

  bool contains(const Point2& u, double tol = kTol) const { return residual(u) <= tol; }

  /// True when h has a zero component, i.e. the boundary is axis-parallel.
  bool axis_aligned() const { return h_.x1 == 0.0 || h_.x2 == 0.0; }

private:
  Point2 h_;
  double alpha_;
};

inline Point2 sign_vector(const Point2& h) {
  if (h.is_zero()) throw std::invalid_argument("sign_vector of the zero vector");
  auto sgn = [](double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); };
  return {sgn(h.x1), sgn(h.x2)};
}

/// Uniform-norm distance from g to H: [<h,g> + alpha]_+ / ||h||_1.
inline double dist_to_halfplane(const Point2& g, const HalfPlane& H) {
  return ext::pos(H.residual(g)) / H.normal().norm_l1();
}

/// Nearest point of H to g in the uniform norm, g - dist(g,H) * SN(h).
///
/// The nearest point is unique when both components of h are nonzero. For an
/// axis-parallel boundary the nearest-point set of an outside point is a
/// segment; that case is rejected unless the violation is within kTol, where
/// the point is snapped onto the boundary along the axis.
inline Point2 project_to_halfplane(const Point2& g, const HalfPlane& H) {
  const double res = H.residual(g);
  if (res <= 0.0) return g;
  if (H.axis_aligned() && res > kTol)
    throw PreconditionViolation("projection onto an axis-parallel half-plane from outside is not unique");
  return g - sign_vector(H.normal()) * dist_to_halfplane(g, H);
}

/// H + r * Q0; std::nullopt stands for the whole plane (r = +inf).
inline std::optional<HalfPlane> inflate_halfplane(const HalfPlane& H, ExtReal r) {
  if (std::isnan(r) || r < 0.0) throw std::invalid_argument("inflation radius must be nonnegative");
  if (std::isinf(r)) return std::nullopt;
  return HalfPlane(H.normal(), H.alpha() - r * H.normal().norm_l1());
}

/// Uniform-norm distance from the origin to a nonempty rectangle.
inline double rect_dist_origin(const Rect& T) {
  if (T.is_empty()) throw std::invalid_argument("distance to an empty rectangle");
  const double a1 = T.ix().lo(), b1 = T.ix().hi();
  const double a2 = T.iy().lo(), b2 = T.iy().hi();
  return std::max({ext::pos(a1), ext::pos(-b1), ext::pos(a2), ext::pos(-b2)});
}

/// Center of the metric projection of the origin onto T. The projection is
/// [L1,R1] x [L2,R2] with Li = max(-d, ai), Ri = min(d, bi), d = dist(O,T),
/// which is bounded even when T is not.
inline Point2 rect_project_origin_center(const Rect& T) {
  const double d = rect_dist_origin(T);
  auto mid = [d](const Interval& I) {
    const double L = std::max(-d, I.lo());
    const double R = std::min(d, I.hi());
    return 0.5 * (L + R);
  };
  return {mid(T.ix()), mid(T.iy())};
}

/// Hausdorff distance max(|inf A - inf B|, |sup A - sup B|) of two nonempty
/// intervals; equal infinite ends contribute 0.
inline ExtReal interval_hausdorff(const Interval& A, const Interval& B) {
  if (A.is_empty() || B.is_empty()) throw std::invalid_argument("Hausdorff distance of an empty interval");
  return std::max(std::abs(ext::sub(A.lo(), B.lo())), std::abs(ext::sub(A.hi(), B.hi())));
}

/// Whether Tx meets Ty + r * Q0, decided from the ends alone. A positive
/// `tol` accepts gaps up to r + tol.
inline bool rects_intersect_within(const Rect& Tx, const Rect& Ty, ExtReal r, double tol = 0.0) {
  if (Tx.is_empty() || Ty.is_empty()) throw std::invalid_argument("intersection test on an empty rectangle");
  if (std::isnan(r) || r < 0.0) throw std::invalid_argument("radius must be nonnegative");
  if (std::isinf(r)) return true;
  // An end at -inf minus an end at +inf is -inf: never binding.
  const double gap = std::max({Tx.ix().lo() - Ty.ix().hi(), Ty.ix().lo() - Tx.ix().hi(),
                               Tx.iy().lo() - Ty.iy().hi(), Ty.iy().lo() - Tx.iy().hi()});
  return gap <= r + tol;
}

inline std::string to_string(ExtReal v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace lipsel
