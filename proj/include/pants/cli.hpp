#pragma once

// Command implementations behind the `pants` executable. Each returns a
// process exit code: 0 success, 1 input error, 2 validation failure,
// 3 solver mismatch / internal error.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pants/approx.hpp"
#include "pants/boxsolver.hpp"
#include "pants/collinear.hpp"
#include "pants/io.hpp"
#include "pants/random.hpp"
#include "pants/svg.hpp"

namespace pants::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kValidationFailure = 2,
  kMismatch = 3,
};

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::MergeBoundExceeded:
    case ErrorCode::CycleClassMismatch:
    case ErrorCode::MissingTour:
    case ErrorCode::InconsistentTables:
      return kValidationFailure;
    case ErrorCode::Internal:
      return kMismatch;
    default:
      return kInputError;
  }
}

inline MergeSchedule parse_schedule(const std::string& s) {
  if (s == "balanced") return MergeSchedule::BalancedRounds;
  if (s == "greedy") return MergeSchedule::GreedyMinPair;
  throw Error(ErrorCode::Parse, "unknown schedule '" + s + "'");
}

/// Solves one instance and wraps the result as a document.
/// mode: "collinear" | "box"; algo: "naive" | "fast", plus "window" for box
/// (the per-axis window rule, which is not exact).
inline ResultDocument solve_document(const PointSet& ps, const std::string& mode, const std::string& algo) {
  const bool window = mode == "box" && algo == "window";
  if (algo != "naive" && algo != "fast" && !window) {
    throw Error(ErrorCode::Parse, "unknown algo '" + algo + "' for mode " + mode);
  }
  SolveResult r;
  if (mode == "collinear") {
    auto inst = CollinearInstance::from_points(ps);
    r = (algo == "naive" ? solve_collinear_naive(inst) : solve_collinear_yao(inst)).result;
  } else if (mode == "box") {
    if (algo == "naive") {
      r = solve_box_naive(ps).result;
    } else {
      r = solve_box_speedup(ps, window ? BoxWindow::PerAxisTransplant : BoxWindow::Distinct).result;
    }
  } else {
    throw Error(ErrorCode::Parse, "unknown mode '" + mode + "'");
  }
  return {mode, algo, r.cost, ps.size(), std::move(r.tree), to_result_stats(r.stats), std::nullopt};
}

inline ResultDocument approx_document(const PointSet& ps, MergeSchedule schedule) {
  auto a = approx_decompose(ps, schedule);
  ApproxFields extra{a.mst.length, a.tour.closed_length, a.tour.path_length, a.bound_factor, a.tour.order};
  return {"approx",
          schedule == MergeSchedule::BalancedRounds ? "balanced" : "greedy",
          a.solve.cost,
          ps.size(),
          std::move(a.solve.tree),
          to_result_stats(a.solve.stats),
          std::move(extra)};
}

/// Checks the tree against its cycle class and the reported cost against
/// the recomputed total length (relative tolerance 1e-9).
inline ValidationReport validate_document(const ResultDocument& doc, const PointSet& ps, bool require_tight = true) {
  ValidationReport report;
  if (doc.n != ps.size()) {
    report.add("size", 0, std::nullopt,
               "document has n=" + std::to_string(doc.n) + ", instance has " + std::to_string(ps.size()));
    return report;
  }
  if (doc.tree.empty()) {
    report.add("V1", 0, std::nullopt, "document has no tree");
    return report;
  }
  std::optional<Tour> tour;
  try {
    if (doc.mode == "collinear") {
      report = validate_interval_tree(doc.tree, ps);
    } else if (doc.mode == "box") {
      report = validate_box_tree(doc.tree, ps, {.require_tight = require_tight});
    } else if (doc.mode == "approx") {
      if (!doc.approx) {
        report.add("tour", 0, std::nullopt, "approx document without a tour");
        return report;
      }
      std::vector<std::size_t> sorted = doc.approx->tour;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted.size() != ps.size() || sorted[i] != i) {
          report.add("tour", 0, std::nullopt, "tour is not a permutation of the points");
          return report;
        }
      }
      tour = make_tour(ps, doc.approx->tour);
      report = validate_run_tree(doc.tree, *tour);
    } else {
      report.add("mode", 0, std::nullopt, "unknown mode '" + doc.mode + "'");
      return report;
    }
  } catch (const Error& e) {
    report.add("class", 0, std::nullopt, e.what());
    return report;
  }
  if (!report.ok()) return report;
  const double length = total_length(doc.tree, ps, tour ? &*tour : nullptr);
  if (!nearly_equal(length, doc.cost)) {
    report.add("cost mismatch", doc.tree.root(), std::nullopt,
               "document cost " + format_number(doc.cost) + ", cycles sum to " + format_number(length));
  }
  return report;
}

// ---------------------------------------------------------------------------

struct SolveOptions {
  std::string mode = "box";
  std::string algo = "fast";
  std::filesystem::path in;
  std::filesystem::path out;
  /// Also run the other algorithm and require identical cost.
  bool check = false;
};

inline int cmd_solve(const SolveOptions& o, std::ostream& err) {
  try {
    PointSet ps(read_instance(o.in));
    ResultDocument doc = solve_document(ps, o.mode, o.algo);
    if (auto rep = validate_document(doc, ps); !rep.ok()) {
      for (const auto& v : rep.violations) err << "invalid output: " << v.kind << ": " << v.detail << "\n";
      return kValidationFailure;
    }
    if (o.check) {
      ResultDocument other = solve_document(ps, o.mode, o.algo == "naive" ? "fast" : "naive");
      const bool same = ps.exact_mode() ? other.cost == doc.cost : nearly_equal(other.cost, doc.cost);
      if (!same) {
        err << "solver mismatch: " << o.algo << " cost " << format_number(doc.cost) << ", " << other.algo
            << " cost " << format_number(other.cost) << "\ninstance:\n"
            << format_instance(ps.points());
        return kMismatch;
      }
    }
    write_text_file_atomic(o.out, serialize(doc));
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

struct ApproxOptions {
  std::string schedule = "balanced";
  std::filesystem::path in;
  std::filesystem::path out;
};

inline int cmd_approx(const ApproxOptions& o, std::ostream& err) {
  try {
    PointSet ps(read_instance(o.in));
    ResultDocument doc = approx_document(ps, parse_schedule(o.schedule));
    if (auto rep = validate_document(doc, ps); !rep.ok()) {
      for (const auto& v : rep.violations) err << "invalid output: " << v.kind << ": " << v.detail << "\n";
      return kValidationFailure;
    }
    write_text_file_atomic(o.out, serialize(doc));
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

struct ValidateOptions {
  std::filesystem::path result;
  std::filesystem::path points;
  bool require_tight = true;
};

inline int cmd_validate(const ValidateOptions& o, std::ostream& out, std::ostream& err) {
  try {
    PointSet ps(read_instance(o.points));
    ResultDocument doc = parse_result(read_text_file(o.result));
    ValidationReport rep = validate_document(doc, ps, o.require_tight);
    if (!rep.ok()) {
      for (const auto& v : rep.violations) {
        out << v.kind << " node " << v.node;
        if (v.other) out << " / " << *v.other;
        out << ": " << v.detail << "\n";
      }
      return kValidationFailure;
    }
    out << "ok: " << doc.mode << " decomposition of " << doc.n << " points, cost " << format_number(doc.cost)
        << "\n";
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

struct RenderOptionsCli {
  std::filesystem::path result;
  std::filesystem::path points;
  std::filesystem::path out;
  std::optional<double> inflate;
};

inline int cmd_render(const RenderOptionsCli& o, std::ostream& err) {
  try {
    PointSet ps(read_instance(o.points));
    ResultDocument doc = parse_result(read_text_file(o.result));
    if (doc.n != ps.size()) throw Error(ErrorCode::Parse, "result and instance sizes differ");
    write_text_file_atomic(o.out, render_svg(doc, ps, {o.inflate}));
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

struct GenOptions {
  std::size_t n = 0;
  std::string dist = "uniform";
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

inline std::string gen_text(const GenOptions& o) {
  auto pts = generate_instance(o.n, parse_distribution(o.dist), o.seed);
  return "# pants gen n=" + std::to_string(o.n) + " dist=" + o.dist + " seed=" + std::to_string(o.seed) +
         " rng=mt19937_64\n" + format_instance(pts);
}

inline int cmd_gen(const GenOptions& o, std::ostream& err) {
  try {
    write_text_file_atomic(o.out, gen_text(o));
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

// ---------------------------------------------------------------------------

inline constexpr const char* kBenchHeader = "mode,algo,n,rep,seed,cost,states,candidates,wall_ms";

struct BenchOptions {
  std::string mode = "collinear";  // collinear | box | approx
  std::string algo = "fast";       // naive | fast | window, or balanced | greedy for approx
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 0;
  std::size_t reps = 1;
  std::filesystem::path out;
};

/// One row per (size, rep). Every rep of a size runs the same instance, so
/// the cost column repeats and only wall_ms varies.
inline std::string bench_csv(const BenchOptions& o) {
  if (o.sizes.empty()) throw Error(ErrorCode::Parse, "no sizes given");
  if (o.reps == 0) throw Error(ErrorCode::Parse, "reps must be positive");
  if (o.mode == "approx") {
    parse_schedule(o.algo);
  } else if (o.mode != "collinear" && o.mode != "box") {
    throw Error(ErrorCode::Parse, "unknown mode '" + o.mode + "'");
  } else if (o.algo != "naive" && o.algo != "fast" && !(o.mode == "box" && o.algo == "window")) {
    throw Error(ErrorCode::Parse, "unknown algo '" + o.algo + "'");
  }
  std::string csv = std::string(kBenchHeader) + "\n";
  for (std::size_t n : o.sizes) {
    if (n == 0) throw Error(ErrorCode::Parse, "sizes must be positive");
    const auto dist = o.mode == "collinear" ? Distribution::Collinear : Distribution::Uniform;
    PointSet ps(generate_instance(n, dist, o.seed));
    for (std::size_t rep = 0; rep < o.reps; ++rep) {
      ResultDocument doc = o.mode == "approx" ? approx_document(ps, parse_schedule(o.algo))
                                              : solve_document(ps, o.mode, o.algo);
      char wall[32];
      std::snprintf(wall, sizeof wall, "%.3f", doc.stats.wall_time_ms);
      csv += o.mode + "," + o.algo + "," + std::to_string(n) + "," + std::to_string(rep) + "," +
             std::to_string(o.seed) + "," + format_number(doc.cost) + "," +
             std::to_string(doc.stats.states_evaluated) + "," + std::to_string(doc.stats.candidates_examined) + "," +
             wall + "\n";
    }
  }
  return csv;
}

inline int cmd_bench(const BenchOptions& o, std::ostream& err) {
  try {
    write_text_file_atomic(o.out, bench_csv(o));
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace pants::cli
