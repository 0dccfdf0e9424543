#include <iostream>

#include "CLI11.hpp"
#include "pants/cli.hpp"

int main(int argc, char** argv) {
  using namespace pants::cli;

  CLI::App app{"Shortest pants decompositions of the punctured plane"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Exact solver for collinear or box-restricted decompositions");
  solve_cmd->add_option("--mode", solve.mode, "collinear | box")
      ->check(CLI::IsMember({"collinear", "box"}))
      ->capture_default_str();
  solve_cmd->add_option("--algo", solve.algo, "naive | fast | window (box only; inexact window rule)")
      ->check(CLI::IsMember({"naive", "fast", "window"}))
      ->capture_default_str();
  solve_cmd->add_option("--in", solve.in, "Instance file")->required();
  solve_cmd->add_option("--out", solve.out, "Result document (JSON)")->required();
  solve_cmd->add_flag("--check", solve.check, "Also run the other algorithm; exit 3 on cost mismatch");

  ApproxOptions approx;
  auto* approx_cmd = app.add_subcommand("approx", "O(log n)-approximation from an MST-based tour");
  approx_cmd->add_option("--schedule", approx.schedule, "balanced | greedy")
      ->check(CLI::IsMember({"balanced", "greedy"}))
      ->capture_default_str();
  approx_cmd->add_option("--in", approx.in, "Instance file")->required();
  approx_cmd->add_option("--out", approx.out, "Result document (JSON)")->required();

  ValidateOptions validate;
  bool loose = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check a result document against its instance");
  validate_cmd->add_option("--in", validate.result, "Result document")->required();
  validate_cmd->add_option("--points", validate.points, "Instance file")->required();
  validate_cmd->add_flag("--no-tight", loose, "Do not require box cycles to be tight bounding boxes");

  RenderOptionsCli render;
  double inflate = -1.0;
  auto* render_cmd = app.add_subcommand("render", "Draw a result as SVG");
  render_cmd->add_option("--in", render.result, "Result document")->required();
  render_cmd->add_option("--points", render.points, "Instance file")->required();
  render_cmd->add_option("--out", render.out, "SVG output")->required();
  render_cmd->add_option("--inflate", inflate, "Per-level outward offset (default: 0.5% of bbox diagonal)")
      ->check(CLI::NonNegativeNumber);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a reproducible instance");
  gen_cmd->add_option("--n", gen.n, "Number of points")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dist", gen.dist, "uniform | collinear | grid")
      ->check(CLI::IsMember({"uniform", "collinear", "grid"}))
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Seed for mt19937_64")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Instance file")->required();

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time solvers over a range of sizes; writes CSV");
  bench_cmd->add_option("--mode", bench.mode, "collinear | box | approx")
      ->check(CLI::IsMember({"collinear", "box", "approx"}))
      ->capture_default_str();
  bench_cmd->add_option("--algo", bench.algo, "naive | fast (balanced | greedy for approx)")->capture_default_str();
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated sizes")->required()->delimiter(',');
  bench_cmd->add_option("--seed", bench.seed, "Instance seed")->capture_default_str();
  bench_cmd->add_option("--reps", bench.reps, "Repetitions per size")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (*solve_cmd) return cmd_solve(solve, std::cerr);
  if (*approx_cmd) return cmd_approx(approx, std::cerr);
  if (*validate_cmd) {
    validate.require_tight = !loose;
    return cmd_validate(validate, std::cout, std::cerr);
  }
  if (*render_cmd) {
    if (inflate >= 0) render.inflate = inflate;
    return cmd_render(render, std::cerr);
  }
  if (*gen_cmd) return cmd_gen(gen, std::cerr);
  if (*bench_cmd) return cmd_bench(bench, std::cerr);
  return kInputError;
}
