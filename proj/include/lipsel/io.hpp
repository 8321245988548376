#pragma once

// JSON instance and result documents.
//
// Instance:
//   {
//     "n": 2,
//     "metric": {"matrix": [[0, 1], [1, 0]]},        // or {"pre_metric": ...}
//     "sets": {"halfplanes": [{"h": [1, 0], "alpha": 0}, ...]}
//                                                   // or {"polygons": [[{...}, ...], ...]}
//   }
//
// Numbers are JSON numbers or strings: "inf" (distances only), "p/q", or a
// decimal literal. Strings are read exactly; JSON numbers stand for their
// binary64 value.

#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geometry.hpp"
#include "metric.hpp"
#include "oracle.hpp"
#include "polygon.hpp"
#include "selection.hpp"

namespace lipsel::io {

using nlohmann::json;

/// Malformed document: syntax, schema or dimension errors, zero normals.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A number read both exactly and as the nearest double. `exact` is empty
/// for infinity.
struct Number {
  double value = 0.0;
  std::optional<Rational> exact;
};

inline Number read_number(const json& j, bool allow_inf, const std::string& where) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    const Rational r = j.is_number_unsigned() ? Rational(std::to_string(j.get<std::uint64_t>()))
                                              : Rational(std::to_string(j.get<std::int64_t>()));
    return {r.get_d(), r};
  }
  if (j.is_number_float()) {
    const double v = j.get<double>();
    return {v, to_rational(v)};
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf" || s == "infinity") {
      if (!allow_inf) throw ParseError(where + ": infinity is not allowed here");
      return {kInf, std::nullopt};
    }
    try {
      const Rational r = parse_rational(s);
      return {r.get_d(), r};
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected a number");
}

/// A parsed instance: the floating-point data the solver runs on and the
/// exact data the oracle certifies.
struct Instance {
  std::size_t n = 0;
  bool from_pre_metric = false;
  bool polygons = false;
  DistanceMatrix raw;  // the matrix as written (before closure)
  std::vector<std::vector<HalfPlane>> polys;
  RationalInstance exact;

  /// Half-plane view; valid only when !polygons.
  HalfPlaneInstance halfplane_instance(const PseudometricSpace& space) const {
    std::vector<HalfPlane> planes;
    planes.reserve(n);
    for (const auto& p : polys) planes.push_back(p.front());
    return {space, std::move(planes)};
  }
};

namespace detail {

inline const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

inline HalfPlane read_halfplane(const json& j, const std::string& where, RationalHalfPlane& exact) {
  const json& h = member(j, "h", where);
  if (!h.is_array() || h.size() != 2) throw ParseError(where + ": \"h\" must be a pair");
  const Number a = read_number(h[0], false, where + ".h[0]");
  const Number b = read_number(h[1], false, where + ".h[1]");
  const Number alpha = read_number(member(j, "alpha", where), false, where + ".alpha");
  exact = {*a.exact, *b.exact, *alpha.exact};
  if (a.value == 0.0 && b.value == 0.0) throw ParseError(where + ": normal h must be nonzero");
  try {
    return HalfPlane({a.value, b.value}, alpha.value);
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

// Shortest-path closure on exact distances (nullopt = infinity).
inline void close_exact(RationalInstance& r) {
  const std::size_t n = r.n;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const auto& dik = r.rho[i * n + k];
      if (!dik) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& dkj = r.rho[k * n + j];
        if (!dkj) continue;
        const Rational via = *dik + *dkj;
        auto& dij = r.rho[i * n + j];
        if (!dij || via < *dij) dij = via;
      }
    }
}

}  // namespace detail

inline Instance parse_instance(const json& doc) {
  Instance inst;
  const json& nj = detail::member(doc, "n", "instance");
  if (!nj.is_number_integer() || nj.get<long long>() < 1) throw ParseError("instance: \"n\" must be a positive integer");
  inst.n = static_cast<std::size_t>(nj.get<long long>());
  const std::size_t n = inst.n;

  const json& metric = detail::member(doc, "metric", "instance");
  const bool has_matrix = metric.is_object() && metric.contains("matrix");
  const bool has_pre = metric.is_object() && metric.contains("pre_metric");
  if (has_matrix == has_pre) throw ParseError("metric: exactly one of \"matrix\" and \"pre_metric\" is required");
  inst.from_pre_metric = has_pre;
  const json& m = metric.at(has_pre ? "pre_metric" : "matrix");
  if (!m.is_array() || m.size() != n) throw ParseError("metric: expected " + std::to_string(n) + " rows");
  inst.raw = DistanceMatrix(n);
  inst.exact.n = n;
  inst.exact.rho.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!m[i].is_array() || m[i].size() != n)
      throw ParseError("metric: row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      const Number d = read_number(m[i][j], true, "metric[" + std::to_string(i) + "][" + std::to_string(j) + "]");
      if (d.value < 0.0) throw ParseError("metric: negative entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      inst.raw(i, j) = d.value;
      inst.exact.rho[i * n + j] = d.exact;
    }
  }

  const json& sets = detail::member(doc, "sets", "instance");
  const bool has_hp = sets.is_object() && sets.contains("halfplanes");
  const bool has_poly = sets.is_object() && sets.contains("polygons");
  if (has_hp == has_poly) throw ParseError("sets: exactly one of \"halfplanes\" and \"polygons\" is required");
  inst.polygons = has_poly;
  const json& list = sets.at(has_poly ? "polygons" : "halfplanes");
  if (!list.is_array() || list.size() != n) throw ParseError("sets: expected " + std::to_string(n) + " entries");
  inst.exact.polys.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string where = std::string(has_poly ? "polygons" : "halfplanes") + "[" + std::to_string(i) + "]";
    std::vector<HalfPlane> poly;
    if (has_poly) {
      if (!list[i].is_array() || list[i].empty()) throw ParseError(where + ": expected a nonempty list of half-planes");
      for (std::size_t k = 0; k < list[i].size(); ++k) {
        RationalHalfPlane ex;
        poly.push_back(detail::read_halfplane(list[i][k], where + "[" + std::to_string(k) + "]", ex));
        inst.exact.polys[i].push_back(ex);
      }
    } else {
      RationalHalfPlane ex;
      poly.push_back(detail::read_halfplane(list[i], where, ex));
      inst.exact.polys[i].push_back(ex);
    }
    inst.polys.push_back(std::move(poly));
  }
  if (inst.from_pre_metric) detail::close_exact(inst.exact);
  return inst;
}

inline Instance parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(doc);
}

/// The space an instance describes: the closure of a pre-metric, or the
/// matrix itself after validation. With `check_triangle` off only the
/// diagonal and symmetry are checked.
inline std::variant<PseudometricSpace, MetricViolation> build_space(const Instance& inst, bool check_triangle = true) {
  if (inst.from_pre_metric) {
    try {
      return intrinsic_metric(PreMetric(inst.raw));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("pre_metric: ") + e.what());
    }
  }
  if (!check_triangle) {
    try {
      return PseudometricSpace::assume_triangle(inst.raw);
    } catch (const std::invalid_argument&) {
      // fall through to the full check for a precise report
    }
  }
  MetricCheck check = validate_pseudometric(inst.raw);
  if (!check) return *check.violation;
  return std::move(*check.space);
}

inline json ext_json(ExtReal v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline json point_json(const Point2& p) { return json::array({p.x1, p.x2}); }

inline json rect_json(const Rect& T) {
  if (T.is_empty()) return nullptr;
  return json::array({ext_json(T.ix().lo()), ext_json(T.ix().hi()), ext_json(T.iy().lo()), ext_json(T.iy().hi())});
}

inline json outcome_json(const Outcome& o, LambdaPair lambdas, bool diagnostics) {
  json doc;
  doc["lambda1"] = lambdas.l1;
  doc["lambda2"] = lambdas.l2;
  if (o.no_go()) {
    doc["outcome"] = "no_go";
    doc["stage"] = o.stage;
    doc["witness"] = o.witness;
    doc["witness_detail"] = o.witness_detail;
    return doc;
  }
  doc["outcome"] = "success";
  json f = json::array();
  for (const auto& p : o.f) f.push_back(point_json(p));
  doc["f"] = std::move(f);
  doc["seminorm"] = ext_json(o.seminorm);
  doc["bound"] = lambdas.success_bound();
  if (diagnostics) {
    json g = json::array(), hulls = json::array(), refined = json::array();
    for (const auto& p : o.g) g.push_back(point_json(p));
    for (const auto& T : o.hulls) hulls.push_back(rect_json(T));
    for (const auto& T : o.refined) refined.push_back(rect_json(T));
    doc["diagnostics"] = {{"g", std::move(g)}, {"hulls", std::move(hulls)}, {"refined", std::move(refined)}};
  }
  return doc;
}

/// Reads "f" from a result document.
inline std::vector<Point2> read_selection(const json& doc) {
  const json& f = detail::member(doc, "f", "result");
  if (!f.is_array()) throw ParseError("result: \"f\" must be a list of points");
  std::vector<Point2> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].is_array() || f[i].size() != 2) throw ParseError("result: f[" + std::to_string(i) + "] must be a pair");
    const std::string where = "f[" + std::to_string(i) + "]";
    out.push_back({read_number(f[i][0], false, where).value, read_number(f[i][1], false, where).value});
  }
  return out;
}

inline std::string rational_string(const Rational& r) { return r.get_str(); }

}  // namespace lipsel::io
