// Command-line front end: lipsel {validate|solve|sharp|estimate} ...

#include <CLI11.hpp>

#include <iostream>

#include "lipsel/cli.hpp"

int main(int argc, char** argv) {
  using namespace lipsel::cli;

  CLI::App app{"Near-optimal Lipschitz selections of half-plane and polygon valued mappings"};
  app.require_subcommand(1);

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "Check an instance (and optionally a result's selection)");
  v->add_option("path", validate.path, "Instance file")->required();
  v->add_option("--verify", validate.result_path, "Result file whose selection is re-verified");
  v->add_option("--bound", validate.bound, "Seminorm bound (default: the result's bound)");
  v->add_option("--tol", validate.tol, "Verification tolerance");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run the projection algorithm");
  s->add_option("path", solve.path, "Instance file")->required();
  s->add_option("--lambda", solve.lambda, "Sets lambda1 = lambda2 = lambda");
  s->add_option("--lambda1", solve.lambda1, "Refinement constant for stages 1, 2 and 5");
  s->add_option("--lambda2", solve.lambda2, "Refinement constant for stage 3");
  s->add_option("--seed", solve.seed, "Seed for the randomized linear programs");
  s->add_flag("--trace", solve.trace, "Per-stage diagnostics (stderr and result document)");
  s->add_flag("--assume-metric", solve.assume_metric, "Skip the cubic triangle-inequality check");

  SharpArgs sharp;
  auto* sh = app.add_subcommand("sharp", "Exact feasibility of a selection with seminorm <= lambda");
  sh->add_option("path", sharp.path, "Instance file")->required();
  sh->add_option("--lambda", sharp.lambda, "Exact rational, e.g. 3, 7/2 or 0.25")->required();

  EstimateArgs est;
  auto* e = app.add_subcommand("estimate", "Bracket the optimal seminorm by exact bisection");
  e->add_option("path", est.path, "Instance file")->required();
  e->add_option("--lo", est.lo, "Lower end of the search interval");
  e->add_option("--hi", est.hi, "Upper end; must admit a selection")->required();
  e->add_option("--iters", est.iters, "Bisection steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : kUsage;
  }

  if (*v) return cmd_validate(validate, std::cout, std::cerr);
  if (*s) return cmd_solve(solve, std::cout, std::cerr);
  if (*sh) return cmd_sharp(sharp, std::cout, std::cerr);
  return cmd_estimate(est, std::cout, std::cerr);
}
