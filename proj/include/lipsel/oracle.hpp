#pragma once

// Exact certification at desk scale. A selection with seminorm <= lambda
// exists iff the linear system
//
//   h1(x) u_x + h2(x) v_x <= -alpha(x)         (membership, per constraint)
//   +-(u_x - u_y) <= lambda rho(x,y)           (coupling, per finite pair)
//   +-(v_x - v_y) <= lambda rho(x,y)
//
// is feasible. Every row involves at most two variables. Feasibility is
// decided by Fourier-Motzkin elimination over GMP rationals.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polygon.hpp"
#include "selection.hpp"

namespace lipsel {

using Rational = mpq_class;

/// Exact value of a finite double.
inline Rational to_rational(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("cannot convert a non-finite value to a rational");
  return Rational(v);
}

/// Parses "p", "p/q" or a decimal such as "-1.25e3" exactly.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw bad();
    return num / den;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  mpz_class digits = 0;
  long exponent = 0;
  bool any = false, dot = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (dot) --exponent;
      any = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw bad();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw bad();
    std::size_t used = 0;
    long e;
    try {
      e = std::stol(text.substr(pos + 1), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos + 1 + used != text.size()) throw bad();
    exponent += e;
  }
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational r = exponent >= 0 ? Rational(digits * scale) : Rational(digits, scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

struct RationalHalfPlane {
  Rational h1, h2, alpha;
};

/// Instance data held exactly. Infinite distances are std::nullopt.
/// Half-plane instances are polygons with one constraint per point.
struct RationalInstance {
  std::size_t n = 0;
  std::vector<std::optional<Rational>> rho;  // row-major n x n
  std::vector<std::vector<RationalHalfPlane>> polys;

  const std::optional<Rational>& dist(std::size_t i, std::size_t j) const { return rho[i * n + j]; }

  static RationalInstance from_space(const PseudometricSpace& space) {
    RationalInstance r;
    r.n = space.size();
    r.rho.reserve(r.n * r.n);
    for (std::size_t i = 0; i < r.n; ++i)
      for (std::size_t j = 0; j < r.n; ++j) {
        const double d = space(i, j);
        r.rho.push_back(std::isinf(d) ? std::nullopt : std::optional<Rational>(to_rational(d)));
      }
    r.polys.resize(r.n);
    return r;
  }

  static RationalInstance from(const HalfPlaneInstance& inst) {
    RationalInstance r = from_space(inst.space());
    for (std::size_t i = 0; i < r.n; ++i) {
      const HalfPlane& H = inst.plane(i);
      r.polys[i].push_back({to_rational(H.normal().x1), to_rational(H.normal().x2), to_rational(H.alpha())});
    }
    return r;
  }

  static RationalInstance from(const PolygonInstance& p) {
    RationalInstance r = from_space(p.space());
    for (std::size_t i = 0; i < r.n; ++i)
      for (const HalfPlane& H : p.polys()[i])
        r.polys[i].push_back({to_rational(H.normal().x1), to_rational(H.normal().x2), to_rational(H.alpha())});
    return r;
  }
};

/// Rows <coeffs, vars> <= rhs over variables u_0, v_0, u_1, v_1, ...
struct RationalLinearSystem {
  struct Row {
    std::vector<Rational> coeffs;
    Rational rhs;
  };

  std::vector<std::string> vars;
  std::vector<Row> rows;

  std::size_t var_count() const { return vars.size(); }
};

inline RationalLinearSystem build_sharp_lp(const RationalInstance& inst, const Rational& lambda) {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  const std::size_t n = inst.n;
  RationalLinearSystem sys;
  for (std::size_t i = 0; i < n; ++i) {
    sys.vars.push_back("u" + std::to_string(i));
    sys.vars.push_back("v" + std::to_string(i));
  }
  const std::size_t nv = 2 * n;
  auto row = [nv] {
    RationalLinearSystem::Row r;
    r.coeffs.assign(nv, Rational(0));
    return r;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& H : inst.polys[i]) {
      if (H.h1 == 0 && H.h2 == 0) throw std::invalid_argument("half-plane normal must be nonzero");
      auto r = row();
      r.coeffs[2 * i] = H.h1;
      r.coeffs[2 * i + 1] = H.h2;
      r.rhs = -H.alpha;
      sys.rows.push_back(std::move(r));
    }
  // Coupling rows for every ordered pair, as the system is usually written;
  // the two orders give identical rows, which elimination merges.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& d = inst.dist(i, j);
      if (!d) continue;
      const Rational bound = lambda * *d;
      for (std::size_t axis = 0; axis < 2; ++axis)
        for (int sign : {1, -1}) {
          auto r = row();
          r.coeffs[2 * i + axis] = sign;
          r.coeffs[2 * j + axis] = -sign;
          r.rhs = bound;
          sys.rows.push_back(std::move(r));
        }
    }
  return sys;
}

inline RationalLinearSystem build_sharp_lp(const HalfPlaneInstance& inst, const Rational& lambda) {
  return build_sharp_lp(RationalInstance::from(inst), lambda);
}

struct FmResult {
  bool feasible = false;
  std::vector<Rational> witness;

  explicit operator bool() const { return feasible; }
};

inline constexpr std::size_t kFmVarCap = 16;

namespace detail {

using FmRow = RationalLinearSystem::Row;

// Scales a row so its first nonzero coefficient is +-1; returns false for an
// all-zero row.
inline bool normalize(FmRow& r) {
  for (const Rational& c : r.coeffs)
    if (c != 0) {
      const Rational s = abs(c);
      for (Rational& x : r.coeffs) x /= s;
      r.rhs /= s;
      return true;
    }
  return false;
}

// Keeps the tightest row per coefficient vector. Returns false when an
// all-zero row has a negative right-hand side.
inline bool prune(std::vector<FmRow>& rows) {
  std::map<std::vector<Rational>, Rational> best;
  for (FmRow& r : rows) {
    if (!normalize(r)) {
      if (r.rhs < 0) return false;
      continue;
    }
    auto [it, inserted] = best.try_emplace(std::move(r.coeffs), r.rhs);
    if (!inserted && r.rhs < it->second) it->second = r.rhs;
  }
  rows.clear();
  rows.reserve(best.size());
  for (auto& [coeffs, rhs] : best) rows.push_back({coeffs, rhs});
  return true;
}

}  // namespace detail

/// Exact feasibility by eliminating variables in index order. On success the
/// witness satisfies every row with zero residual in rational arithmetic.
inline FmResult fm_feasible(const RationalLinearSystem& sys) {
  const std::size_t nv = sys.var_count();
  if (nv > kFmVarCap) throw std::invalid_argument("fm_feasible supports at most 16 variables");
  for (const auto& r : sys.rows)
    if (r.coeffs.size() != nv) throw std::invalid_argument("row length does not match the variable count");

  std::vector<detail::FmRow> rows = sys.rows;
  if (!detail::prune(rows)) return {};
  std::vector<std::vector<detail::FmRow>> levels;
  levels.reserve(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    levels.push_back(rows);
    std::vector<detail::FmRow> pos, neg, next;
    for (auto& r : rows) {
      if (r.coeffs[k] > 0) {
        pos.push_back(std::move(r));
      } else if (r.coeffs[k] < 0) {
        neg.push_back(std::move(r));
      } else {
        next.push_back(std::move(r));
      }
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        // p/p_k + q/|q_k| cancels variable k.
        const Rational wp = 1 / p.coeffs[k];
        const Rational wq = -1 / q.coeffs[k];
        detail::FmRow r;
        r.coeffs.resize(nv);
        for (std::size_t j = 0; j < nv; ++j) r.coeffs[j] = wp * p.coeffs[j] + wq * q.coeffs[j];
        r.coeffs[k] = 0;
        r.rhs = wp * p.rhs + wq * q.rhs;
        next.push_back(std::move(r));
      }
    if (!detail::prune(next)) return {};
    rows = std::move(next);
  }

  FmResult out;
  out.feasible = true;
  out.witness.assign(nv, Rational(0));
  for (std::size_t k = nv; k-- > 0;) {
    std::optional<Rational> lo, hi;
    for (const auto& r : levels[k]) {
      const Rational& a = r.coeffs[k];
      if (a == 0) continue;
      Rational rest = r.rhs;
      for (std::size_t j = k + 1; j < nv; ++j) rest -= r.coeffs[j] * out.witness[j];
      const Rational bound = rest / a;
      if (a > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else if (!lo || bound > *lo) {
        lo = bound;
      }
    }
    Rational value = 0;
    if (lo && *lo > value) value = *lo;
    if (hi && *hi < value) value = *hi;
    out.witness[k] = value;
  }
  return out;
}

/// Whether a selection with seminorm <= lambda exists, decided exactly.
inline FmResult sharp_feasible(const RationalInstance& inst, const Rational& lambda) {
  return fm_feasible(build_sharp_lp(inst, lambda));
}

struct SeminormBracket {
  Rational lo, hi;
};

/// Bisection for |F|_M, the infimum of seminorms over all selections. Each
/// probe is exact, so the infimum lies in the returned [lo, hi]. If the
/// lower end is already feasible the search restarts on [0, lo].
inline SeminormBracket estimate_min_seminorm(const RationalInstance& inst, Rational lo, Rational hi,
                                             int iterations) {
  if (lo < 0 || !(lo < hi)) throw std::invalid_argument("bracket must satisfy 0 <= lo < hi");
  if (iterations < 0) throw std::invalid_argument("iteration count must be nonnegative");
  if (!sharp_feasible(inst, hi)) throw std::invalid_argument("no selection with seminorm <= hi");
  if (sharp_feasible(inst, lo)) {
    hi = lo;
    lo = 0;
    if (sharp_feasible(inst, lo)) return {lo, lo};
  }
  for (int it = 0; it < iterations; ++it) {
    const Rational mid = (lo + hi) / 2;
    if (sharp_feasible(inst, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

}  // namespace lipsel
