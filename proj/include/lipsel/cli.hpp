#pragma once

// Command implementations behind the lipsel executable. Each command writes
// its JSON document to `out`, diagnostics to `err`, and returns the exit
// code:
//   0  success / feasible / valid
//   1  no_go (solve) or infeasible (sharp)
//   2  parse error, invalid flags, or a size cap exceeded
//   3  pseudometric axiom violation, or a selection failing verification
//   4  estimate: no selection with seminorm <= hi

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "io.hpp"
#include "oracle.hpp"
#include "polygon.hpp"
#include "selection.hpp"

namespace lipsel::cli {

enum Exit : int { kOk = 0, kNoGo = 1, kUsage = 2, kAxiom = 3, kNoUpper = 4 };

struct ValidateArgs {
  std::string path;
  std::optional<std::string> result_path;  // verify this result's selection
  std::optional<double> bound;             // defaults to the result's "bound"
  double tol = 1e-7;
};

struct SolveArgs {
  std::string path;
  std::optional<double> lambda;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  std::uint64_t seed = kDefaultSeed;
  bool trace = false;
  bool assume_metric = false;
};

struct SharpArgs {
  std::string path;
  std::string lambda;
};

struct EstimateArgs {
  std::string path;
  std::string lo = "0";
  std::string hi;
  int iters = 20;
};

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline io::json violation_json(const MetricViolation& v) {
  const char* axiom = v.axiom == MetricViolation::Axiom::ZeroDiagonal ? "zero_diagonal"
                      : v.axiom == MetricViolation::Axiom::Symmetry   ? "symmetry"
                                                                      : "triangle";
  return {{"axiom", axiom}, {"indices", {v.i, v.j, v.k}}, {"message", v.describe()}};
}

// Loads and validates; on failure writes the report and sets `code`.
struct Loaded {
  io::Instance inst;
  std::optional<PseudometricSpace> space;
};

inline std::optional<Loaded> load(const std::string& path, bool check_triangle, std::ostream& out,
                                  std::ostream& err, int& code) {
  Loaded l;
  try {
    l.inst = io::parse_instance_text(slurp(path));
    auto space = io::build_space(l.inst, check_triangle);
    if (auto* v = std::get_if<MetricViolation>(&space)) {
      out << io::json{{"valid", false}, {"violation", violation_json(*v)}}.dump(2) << "\n";
      code = kAxiom;
      return std::nullopt;
    }
    l.space = std::move(std::get<PseudometricSpace>(space));
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    code = kUsage;
    return std::nullopt;
  }
  return l;
}

inline SelectionReport verify(const Loaded& l, const std::vector<Point2>& f, double bound, double tol) {
  if (l.inst.polygons) return verify_polygon_selection(PolygonInstance(*l.space, l.inst.polys), f, bound, tol);
  return verify_selection(l.inst.halfplane_instance(*l.space), f, bound, tol);
}

inline RationalInstance exact_instance(const Loaded& l) { return l.inst.exact; }

}  // namespace detail

inline int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto loaded = detail::load(args.path, true, out, err, code);
  if (!loaded) return code;
  io::json report{{"valid", true},
                  {"n", loaded->inst.n},
                  {"kind", loaded->inst.polygons ? "polygons" : "halfplanes"},
                  {"closed_pre_metric", loaded->inst.from_pre_metric}};
  if (args.result_path) {
    std::vector<Point2> f;
    double bound = 0.0;
    try {
      const io::json res = io::json::parse(detail::slurp(*args.result_path));
      f = io::read_selection(res);
      if (args.bound) {
        bound = *args.bound;
      } else if (res.contains("bound") && res["bound"].is_number()) {
        bound = res["bound"].get<double>();
      } else {
        throw io::ParseError("result: no \"bound\" and none given");
      }
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
    if (f.size() != loaded->inst.n) {
      err << "error: result has " << f.size() << " points, instance has " << loaded->inst.n << "\n";
      return kUsage;
    }
    const SelectionReport rep = detail::verify(*loaded, f, bound, args.tol);
    report["selection"] = {{"ok", rep.ok}, {"seminorm", io::ext_json(rep.seminorm)}, {"bound", bound}};
    if (!rep.ok) report["selection"]["message"] = rep.message;
    out << report.dump(2) << "\n";
    return rep.ok ? kOk : kAxiom;
  }
  out << report.dump(2) << "\n";
  return kOk;
}

inline int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  LambdaPair lambdas;
  const bool pair_given = args.lambda1 || args.lambda2;
  if (args.lambda.has_value() == pair_given || (pair_given && !(args.lambda1 && args.lambda2))) {
    err << "error: give either --lambda or both --lambda1 and --lambda2\n";
    return kUsage;
  }
  try {
    if (args.lambda) {
      if (!(*args.lambda > 0.0)) throw std::invalid_argument("--lambda must be positive");
      lambdas = LambdaPair::uniform(*args.lambda);
    } else {
      lambdas = LambdaPair(*args.lambda1, *args.lambda2);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  int code = kOk;
  auto loaded = detail::load(args.path, !args.assume_metric, out, err, code);
  if (!loaded) return code;
  if (loaded->inst.polygons && !args.lambda) {
    err << "error: polygon instances take a single --lambda\n";
    return kUsage;
  }

  SolverOptions opts;
  opts.seed = args.seed;
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (loaded->inst.polygons) {
      o = solve_polygon(PolygonInstance(*loaded->space, loaded->inst.polys), *args.lambda, opts);
    } else {
      o = run_projection_algorithm(loaded->inst.halfplane_instance(*loaded->space), lambdas, opts);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (args.trace) {
    err << "n=" << loaded->inst.n << " lambda1=" << lambdas.l1 << " lambda2=" << lambdas.l2 << "\n";
    if (o.no_go()) {
      err << "stage " << o.stage << ": empty refinement at point " << o.witness << "\n";
    } else {
      err << "stage 1: all refinements nonempty\n"
          << "stage 2: " << o.hulls.size() << " rectangular hulls\n"
          << "stage 3: all refined rectangles nonempty\n"
          << "stage 4-5: selection with seminorm " << to_string(o.seminorm) << "\n";
    }
    err << "solve time " << ms << " ms\n";
  }

  if (o.success()) {
    const SelectionReport rep = detail::verify(*loaded, o.f, lambdas.success_bound(), 1e-7);
    if (!rep.ok) {
      err << "error: internal verification failed: " << rep.message << "\n";
      return kAxiom;
    }
  }
  out << io::outcome_json(o, lambdas, args.trace).dump(2) << "\n";
  return o.success() ? kOk : kNoGo;
}

inline int cmd_sharp(const SharpArgs& args, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto loaded = detail::load(args.path, true, out, err, code);
  if (!loaded) return code;
  Rational lambda;
  try {
    lambda = parse_rational(args.lambda);
    if (lambda < 0) throw std::invalid_argument("--lambda must be nonnegative");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (2 * loaded->inst.n > kFmVarCap) {
    err << "error: the exact oracle supports at most " << kFmVarCap / 2 << " points\n";
    return kUsage;
  }
  const FmResult r = sharp_feasible(loaded->inst.exact, lambda);
  io::json doc{{"lambda", io::rational_string(lambda)}, {"feasible", r.feasible}};
  if (r.feasible) {
    io::json w = io::json::array();
    for (std::size_t i = 0; i < loaded->inst.n; ++i)
      w.push_back({io::rational_string(r.witness[2 * i]), io::rational_string(r.witness[2 * i + 1])});
    doc["witness"] = std::move(w);
  }
  out << doc.dump(2) << "\n";
  return r.feasible ? kOk : kNoGo;
}

inline int cmd_estimate(const EstimateArgs& args, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto loaded = detail::load(args.path, true, out, err, code);
  if (!loaded) return code;
  if (2 * loaded->inst.n > kFmVarCap) {
    err << "error: the exact oracle supports at most " << kFmVarCap / 2 << " points\n";
    return kUsage;
  }
  Rational lo, hi;
  try {
    lo = parse_rational(args.lo);
    hi = parse_rational(args.hi);
    if (lo < 0 || !(lo < hi) || args.iters < 0) throw std::invalid_argument("need 0 <= lo < hi and iters >= 0");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (!sharp_feasible(loaded->inst.exact, hi)) {
    err << "error: no selection with seminorm <= " << io::rational_string(hi) << "\n";
    return kNoUpper;
  }
  const SeminormBracket b = estimate_min_seminorm(loaded->inst.exact, lo, hi, args.iters);
  out << io::json{{"lo", io::rational_string(b.lo)},
                  {"hi", io::rational_string(b.hi)},
                  {"lo_value", b.lo.get_d()},
                  {"hi_value", b.hi.get_d()}}
             .dump(2)
      << "\n";
  return kOk;
}

}  // namespace lipsel::cli
