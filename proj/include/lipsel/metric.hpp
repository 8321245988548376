#pragma once

// Finite pseudometric spaces with possibly infinite distances, and the
// shortest-path closure of a pre-metric.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace lipsel {

/// Row-major n x n matrix of nonnegative extended reals.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, ExtReal fill = 0.0) : n_(n), d_(n * n, fill) {}

  static DistanceMatrix from_rows(const std::vector<std::vector<ExtReal>>& rows) {
    DistanceMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("distance matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) {
        const ExtReal v = rows[i][j];
        if (std::isnan(v) || v < 0.0) throw std::invalid_argument("distance matrix entry is negative or NaN");
        m(i, j) = v;
      }
    }
    return m;
  }

  std::size_t size() const { return n_; }
  ExtReal operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  ExtReal& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
  std::size_t n_ = 0;
  std::vector<ExtReal> d_;
};

/// First violated pseudometric axiom. For the triangle inequality
/// d(i,j) > d(i,k) + d(k,j); for the diagonal and symmetry k is unused.
struct MetricViolation {
  enum class Axiom { ZeroDiagonal, Symmetry, Triangle };
  Axiom axiom;
  std::size_t i, j, k;

  std::string describe() const {
    switch (axiom) {
      case Axiom::ZeroDiagonal:
        return "d(" + std::to_string(i) + "," + std::to_string(i) + ") != 0";
      case Axiom::Symmetry:
        return "d(" + std::to_string(i) + "," + std::to_string(j) + ") != d(" + std::to_string(j) + "," +
               std::to_string(i) + ")";
      case Axiom::Triangle:
        return "d(" + std::to_string(i) + "," + std::to_string(j) + ") > d(" + std::to_string(i) + "," +
               std::to_string(k) + ") + d(" + std::to_string(k) + "," + std::to_string(j) + ")";
    }
    return {};
  }
};

class PseudometricSpace;

struct MetricCheck;

/// Symmetric weights with zero diagonal; the triangle inequality may fail.
class PreMetric {
public:
  explicit PreMetric(DistanceMatrix w) : w_(std::move(w)) {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (w_(i, i) != 0.0) throw std::invalid_argument("pre-metric diagonal must be zero");
      for (std::size_t j = 0; j < i; ++j)
        if (w_(i, j) != w_(j, i)) throw std::invalid_argument("pre-metric must be symmetric");
    }
  }

  std::size_t size() const { return w_.size(); }
  const DistanceMatrix& weights() const { return w_; }

private:
  DistanceMatrix w_;
};

class PseudometricSpace {
public:
  /// Validates the axioms; throws std::invalid_argument on failure.
  explicit PseudometricSpace(DistanceMatrix d);

  /// Checks the diagonal and symmetry only and trusts the triangle
  /// inequality, skipping the cubic-time scan.
  static PseudometricSpace assume_triangle(DistanceMatrix d);

  std::size_t size() const { return d_.size(); }
  ExtReal operator()(std::size_t i, std::size_t j) const { return d_(i, j); }
  const DistanceMatrix& matrix() const { return d_; }

  friend bool operator==(const PseudometricSpace&, const PseudometricSpace&) = default;

private:
  struct Unchecked {};
  PseudometricSpace(DistanceMatrix d, Unchecked) : d_(std::move(d)) {}
  friend PseudometricSpace intrinsic_metric(const PreMetric& w);
  friend struct MetricCheck;

  DistanceMatrix d_;
};

/// Either a validated space or the first violated axiom in (i, j, k) order.
struct MetricCheck {
  std::optional<PseudometricSpace> space;
  std::optional<MetricViolation> violation;

  explicit operator bool() const { return space.has_value(); }

  static MetricCheck ok(DistanceMatrix d) { return {PseudometricSpace(std::move(d), PseudometricSpace::Unchecked{}), {}}; }
};

/// Checks zero diagonal, symmetry and the triangle inequality (with
/// finite + inf = inf). Exact comparisons, no tolerance.
inline MetricCheck validate_pseudometric(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n == 0) throw std::invalid_argument("pseudometric space must have at least one point");
  for (std::size_t i = 0; i < n; ++i)
    if (d(i, i) != 0.0) return {std::nullopt, MetricViolation{MetricViolation::Axiom::ZeroDiagonal, i, i, i}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d(i, j) != d(j, i)) return {std::nullopt, MetricViolation{MetricViolation::Axiom::Symmetry, i, j, j}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d(i, j) > ext::add(d(i, k), d(k, j)))
          return {std::nullopt, MetricViolation{MetricViolation::Axiom::Triangle, i, j, k}};
  return MetricCheck::ok(d);
}

inline PseudometricSpace::PseudometricSpace(DistanceMatrix d) : d_(std::move(d)) {
  const MetricCheck check = validate_pseudometric(d_);
  if (!check) throw std::invalid_argument("not a pseudometric: " + check.violation->describe());
}

inline PseudometricSpace PseudometricSpace::assume_triangle(DistanceMatrix d) {
  const std::size_t n = d.size();
  if (n == 0) throw std::invalid_argument("pseudometric space must have at least one point");
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw std::invalid_argument("not a pseudometric: nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j)
      if (d(i, j) != d(j, i))
        throw std::invalid_argument("not a pseudometric: asymmetric at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
  }
  return PseudometricSpace(std::move(d), Unchecked{});
}

/// Shortest-path closure (Floyd-Warshall). The result is the largest
/// pseudometric bounded by w entrywise.
inline PseudometricSpace intrinsic_metric(const PreMetric& w) {
  DistanceMatrix d = w.weights();
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const ExtReal dik = d(i, k);
      if (std::isinf(dik)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const ExtReal via = ext::add(dik, d(k, j));
        if (via < d(i, j)) d(i, j) = via;
      }
    }
  return PseudometricSpace(std::move(d), PseudometricSpace::Unchecked{});
}

}  // namespace lipsel
