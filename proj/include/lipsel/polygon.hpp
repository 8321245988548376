#pragma once

// Polygon-valued mappings, F(x) = intersection of finitely many half-planes,
// reduced to half-plane valued mappings on an augmented space whose points
// are the pairs (x, H) with rho~((x,H),(x',H')) = rho(x,x').

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "metric.hpp"
#include "selection.hpp"

namespace lipsel {

class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Coincidence tolerance for augmented values of one base point.
inline constexpr double kPullbackTol = 1e-7;

class PolygonInstance {
public:
  PolygonInstance(PseudometricSpace space, std::vector<std::vector<HalfPlane>> polys)
      : space_(std::move(space)), polys_(std::move(polys)) {
    if (polys_.size() != space_.size()) throw std::invalid_argument("one polygon per point is required");
    for (const auto& p : polys_) {
      if (p.empty()) throw std::invalid_argument("a polygon needs at least one half-plane");
      max_constraints_ = std::max(max_constraints_, p.size());
    }
  }

  std::size_t size() const { return space_.size(); }
  const PseudometricSpace& space() const { return space_; }
  const std::vector<std::vector<HalfPlane>>& polys() const { return polys_; }
  /// L: the largest number of half-planes at any point.
  std::size_t max_constraints() const { return max_constraints_; }

private:
  PseudometricSpace space_;
  std::vector<std::vector<HalfPlane>> polys_;
  std::size_t max_constraints_ = 0;
};

struct Reduction {
  HalfPlaneInstance instance;
  /// back_map[i]: augmented indices belonging to base point i.
  std::vector<std::vector<std::size_t>> back_map;
  /// owner[u]: base point of augmented index u.
  std::vector<std::size_t> owner;
};

inline Reduction reduce_to_halfplanes(const PolygonInstance& p) {
  std::vector<std::vector<std::size_t>> back_map(p.size());
  std::vector<std::size_t> owner;
  std::vector<HalfPlane> planes;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (const HalfPlane& H : p.polys()[i]) {
      back_map[i].push_back(planes.size());
      owner.push_back(i);
      planes.push_back(H);
    }
  const std::size_t m = planes.size();
  DistanceMatrix d(m);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t v = 0; v < m; ++v) d(u, v) = p.space()(owner[u], owner[v]);
  // rho~ inherits the axioms from rho.
  PseudometricSpace augmented = PseudometricSpace::assume_triangle(std::move(d));
  return {HalfPlaneInstance(std::move(augmented), std::move(planes)), std::move(back_map), std::move(owner)};
}

/// Runs the algorithm with (lambda, lambda) on the reduction and pulls the
/// selection back. NoGo certifies that no selection of the polygon mapping
/// has seminorm <= lambda; Success yields one with seminorm <= 3*lambda.
inline Outcome solve_polygon(const PolygonInstance& p, double lambda, const SolverOptions& opts = {}) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const Reduction red = reduce_to_halfplanes(p);
  Outcome aug = run_projection_algorithm(red.instance, LambdaPair::uniform(lambda), opts);

  Outcome out;
  out.kind = aug.kind;
  if (aug.no_go()) {
    out.stage = aug.stage;
    out.witness = red.owner[aug.witness];
    for (std::size_t u : aug.witness_detail) out.witness_detail.push_back(red.owner[u]);
    return out;
  }

  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t first = red.back_map[i].front();
    for (std::size_t u : red.back_map[i])
      if (dist_inf(aug.f[u], aug.f[first]) > kPullbackTol)
        throw ConsistencyError("augmented values disagree at point " + std::to_string(i));
    out.f.push_back(aug.f[first]);
    out.g.push_back(aug.g[first]);
    out.hulls.push_back(aug.hulls[first]);
    out.refined.push_back(aug.refined[first]);
  }
  out.seminorm = lipschitz_seminorm(out.f, p.space());
  return out;
}

/// Polygon analogue of verify_selection: every listed half-plane of F(x)
/// must contain f(x) within tol.
inline SelectionReport verify_polygon_selection(const PolygonInstance& p, const std::vector<Point2>& f,
                                                double bound, double tol = kTol) {
  if (f.size() != p.size()) throw std::invalid_argument("one value per point is required");
  SelectionReport rep;
  for (std::size_t x = 0; x < f.size(); ++x)
    for (const HalfPlane& H : p.polys()[x])
      if (!H.contains(f[x], tol)) {
        rep.ok = false;
        rep.bad_point = x;
        rep.message = "f(" + std::to_string(x) + ") lies outside F(" + std::to_string(x) + ")";
        return rep;
      }
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t y = x + 1; y < f.size(); ++y) {
      const ExtReal q = ext::div(dist_inf(f[x], f[y]), p.space()(x, y));
      rep.seminorm = std::max(rep.seminorm, q);
      if (rep.ok && q > bound + tol) {
        rep.ok = false;
        rep.bad_pair = {x, y};
        rep.message = "Lipschitz bound violated on pair (" + std::to_string(x) + "," + std::to_string(y) + ")";
      }
    }
  return rep;
}

}  // namespace lipsel
