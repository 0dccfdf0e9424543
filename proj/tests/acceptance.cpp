// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance <path-to-pants-cli> <work-dir>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <malloc.h>
#include <sys/wait.h>

#include "pants/pants.hpp"

namespace fs = std::filesystem;
using namespace pants;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> failures;

  void fail(std::string what) {
    pass = false;
    if (failures.size() < 5) failures.push_back(std::move(what));
  }
};

std::vector<double> random_xs(std::size_t n, std::uint64_t seed) {
  InstanceRng rng(seed);
  std::vector<double> xs;
  // Range 3n leaves room for repeated coordinates.
  for (std::size_t i = 0; i < n; ++i) xs.push_back(static_cast<double>(rng.uniform(0, 3 * static_cast<std::int64_t>(n))));
  std::sort(xs.begin(), xs.end());
  return xs;
}

std::string xs_text(const std::vector<double>& xs) {
  std::string s;
  for (double x : xs) s += format_number(x) + " ";
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

constexpr std::size_t kCollinearInstances = 500;

std::vector<double> collinear_instance(std::size_t idx) { return random_xs(1 + idx % 60, 1000 + idx); }

Outcome ac1() {
  Outcome o;
  std::size_t brute_checked = 0;
  for (std::size_t idx = 0; idx < kCollinearInstances; ++idx) {
    auto xs = collinear_instance(idx);
    auto inst = CollinearInstance::from_xs(xs);
    const double yao = solve_collinear_yao(inst).result.cost;
    const double naive = solve_collinear_naive(inst).result.cost;
    if (yao != naive) o.fail("yao " + format_number(yao) + " vs naive " + format_number(naive) + " on " + xs_text(xs));
    if (xs.size() <= 12) {
      ++brute_checked;
      const double brute = brute_interval(inst).cost;
      if (brute != naive) o.fail("brute " + format_number(brute) + " vs naive on " + xs_text(xs));
    }
  }
  o.summary = std::to_string(kCollinearInstances) + " instances n in [1,60], " + std::to_string(brute_checked) +
              " also checked against exhaustive enumeration";
  return o;
}

Outcome ac2() {
  Outcome o;
  std::uint64_t qi_checks = 0, k_checks = 0;
  for (std::size_t idx = 0; idx < kCollinearInstances; ++idx) {
    auto xs = collinear_instance(idx);
    auto sol = solve_collinear_yao(CollinearInstance::from_xs(xs));
    const auto& t = sol.tables;
    const std::size_t n = xs.size();
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t ip = i; ip <= n; ++ip)
        for (std::size_t j = ip; j <= n; ++j)
          for (std::size_t jp = j; jp <= n; ++jp) {
            ++qi_checks;
            if (t.c(i, j) + t.c(ip, jp) > t.c(ip, j) + t.c(i, jp)) {
              o.fail("QI at (" + std::to_string(i) + "," + std::to_string(ip) + "," + std::to_string(j) + "," +
                     std::to_string(jp) + ") on " + xs_text(xs));
            }
          }
    for (std::size_t i = 1; i + 2 <= n; ++i)
      for (std::size_t j = i + 2; j <= n; ++j) {
        ++k_checks;
        if (!(t.K(i, j - 1) <= t.K(i, j) && t.K(i, j) <= t.K(i + 1, j))) {
          o.fail("K monotonicity at (" + std::to_string(i) + "," + std::to_string(j) + ") on " + xs_text(xs));
        }
      }
  }
  o.summary = std::to_string(qi_checks) + " quadrangle checks, " + std::to_string(k_checks) + " argmin checks";
  return o;
}

Outcome ac3() {
  Outcome o;
  std::ostringstream s;
  // glibc hands blocks above its mmap threshold (at most 32 MB) fresh pages on
  // every call, so without this the n = 2000 tables would be reused warm while
  // every n = 4000 run pays first-touch page faults. Keeping freed memory in
  // the heap times both sizes under the same conditions; the cold first run
  // of each size is reported alongside.
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
  const std::vector<std::size_t> sizes = {1000, 2000, 4000};
  std::vector<CollinearInstance> instances;
  for (std::size_t n : sizes) {
    instances.push_back(CollinearInstance::from_points(PointSet(generate_instance(n, Distribution::Collinear, 3))));
  }
  // Reps interleave the sizes so background load on the host hits all of
  // them alike. Rep 0 is the cold run; the median of the rest is reported.
  constexpr int kReps = 10;
  std::vector<std::vector<double>> ms(sizes.size());
  std::vector<std::uint64_t> cand(sizes.size(), 0);
  for (int rep = 0; rep < kReps; ++rep) {
    for (std::size_t m = 0; m < sizes.size(); ++m) {
      auto sol = solve_collinear_yao(instances[m]);
      ms[m].push_back(sol.result.stats.wall_time.count());
      cand[m] = sol.result.stats.candidates_examined;
    }
  }
  auto median_warm = [&](std::size_t m) {
    std::vector<double> warm(ms[m].begin() + 1, ms[m].end());
    std::sort(warm.begin(), warm.end());
    return warm[warm.size() / 2];
  };
  for (std::size_t m = 0; m < sizes.size(); ++m) {
    const std::size_t n = sizes[m];
    const std::uint64_t limit = 2ull * n * n;
    if (cand[m] > limit) o.fail("n=" + std::to_string(n) + " candidates " + std::to_string(cand[m]) + " > 2n^2");
    s << "n=" << n << " candidates=" << cand[m] << " (2n^2=" << limit << ") median_ms=" << median_warm(m)
      << " cold_ms=" << ms[m][0] << "; ";
  }
  const double ratio = median_warm(2) / median_warm(1);
  if (ratio > 6.0) o.fail("time ratio 4000/2000 = " + std::to_string(ratio) + " > 6");
  s << "ratio 4000/2000 = " << ratio << " (limit 6; cold runs " << ms[2][0] / ms[1][0] << ")";
  o.summary = s.str();
  return o;
}

struct Ac4Extra {
  std::size_t window_mismatches = 0;
  std::size_t window_instances = 0;
  std::string first_window_instance;
  double first_naive = 0, first_window = 0;
};

Outcome ac4(Ac4Extra& extra) {
  Outcome o;
  std::size_t oracle_instances = 0, fast_instances = 0;
  for (std::uint64_t seed = 0; seed < 240; ++seed) {
    const std::size_t n = 1 + seed % 7;
    PointSet ps(generate_instance(n, Distribution::Uniform, 5000 + seed));
    ++oracle_instances;
    const double naive = solve_box_naive(ps).result.cost;
    const double brute = brute_box(ps).cost;
    if (naive != brute) {
      o.fail("naive " + format_number(naive) + " vs exhaustive " + format_number(brute) + "; instance: " +
             format_instance(ps.points()));
    }
  }
  for (std::uint64_t seed = 0; seed < 240; ++seed) {
    const std::size_t n = 1 + seed % 16;
    PointSet ps(generate_instance(n, Distribution::Uniform, 9000 + seed));
    ++fast_instances;
    const double naive = solve_box_naive(ps).result.cost;
    const double fast = solve_box_speedup(ps).result.cost;
    if (naive != fast) {
      o.fail("monotonicity finding: speedup " + format_number(fast) + " vs naive " + format_number(naive) +
             "; replay instance:\n" + format_instance(ps.points()));
    }
    // The per-axis window rule is tracked separately; it is not the shipped solver.
    ++extra.window_instances;
    const double window = solve_box_speedup(ps, BoxWindow::PerAxisTransplant).result.cost;
    if (window != naive) {
      if (extra.window_mismatches++ == 0) {
        extra.first_window_instance = format_instance(ps.points());
        extra.first_naive = naive;
        extra.first_window = window;
      }
    }
  }
  o.summary = std::to_string(oracle_instances) + " instances n<=7 vs exhaustive, " + std::to_string(fast_instances) +
              " instances n<=16 speedup vs naive";
  return o;
}

Outcome ac5() {
  Outcome o;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 1 + seed % 16;
    auto xs = random_xs(n, 20000 + seed);
    std::vector<Point> pts;
    for (double x : xs) pts.push_back({x, 0.0});
    PointSet ps(pts);
    ++count;
    const double line = solve_collinear_yao(CollinearInstance::from_points(ps)).result.cost;
    const double box = solve_box_speedup(ps).result.cost;
    if (box != line) o.fail("box " + format_number(box) + " vs collinear " + format_number(line) + " on " + xs_text(xs));
  }
  o.summary = std::to_string(count) + " collinear instances n<=16 (repeated coordinates allowed)";
  return o;
}

Outcome ac6() {
  Outcome o;
  std::size_t count = 0;
  double worst_ratio = 0;
  for (std::uint64_t seed = 0; seed < 220; ++seed) {
    const std::size_t n = 2 + (seed * 37) % 511;
    PointSet ps(generate_instance(n, Distribution::Uniform, 30000 + seed));
    for (auto sched : {MergeSchedule::BalancedRounds, MergeSchedule::GreedyMinPair}) {
      ++count;
      ApproxResult a;
      try {
        a = approx_decompose(ps, sched);
      } catch (const Error& e) {
        o.fail(std::string("n=") + std::to_string(n) + ": " + e.what());
        continue;
      }
      if (a.tour.closed_length > 2.0 * a.mst.length) o.fail("(a) tour > 2 mst at n=" + std::to_string(n));
      const double bound = 2.0 * static_cast<double>(ceil_log2(n)) * a.tour.path_length;
      if (a.solve.cost > bound) o.fail("(b) cost > bound at n=" + std::to_string(n));
      worst_ratio = std::max(worst_ratio, a.solve.cost / bound);
      if (!validate_run_tree(a.solve.tree, a.tour).ok()) o.fail("(c) invalid run tree at n=" + std::to_string(n));
    }
  }
  o.summary = std::to_string(count) + " runs (both schedules) n in [2,512]; worst cost/bound = " +
              std::to_string(worst_ratio);
  return o;
}

Outcome ac7() {
  Outcome o;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 110; ++seed) {
    const std::size_t n = 1 + seed % 14;
    PointSet ps(generate_instance(n, Distribution::Uniform, 40000 + seed));
    ++count;
    const double opt = solve_box_naive(ps).result.cost;
    const double mst_len = mst(ps).length;
    if (mst_len > opt) o.fail("mst " + format_number(mst_len) + " > box optimum " + format_number(opt));
    if (n >= 2) {
      const double approx = approx_decompose(ps).solve.cost;
      if (approx > 4.0 * static_cast<double>(ceil_log2(n)) * opt) {
        o.fail("approx " + format_number(approx) + " > 4 ceil(log2 n) box optimum; instance:\n" +
               format_instance(ps.points()));
      }
    }
  }
  o.summary = std::to_string(count) + " instances n<=14";
  return o;
}

Outcome ac8() {
  Outcome o;
  auto pin = [&](const std::string& name, double got, double oracle, double expected) {
    if (oracle != expected) o.fail(name + ": oracle gives " + format_number(oracle));
    if (got != expected) o.fail(name + ": solver gives " + format_number(got));
  };
  auto line3 = CollinearInstance::from_xs({0, 1, 3});
  pin("xs=[0,1,3]", solve_collinear_yao(line3).result.cost, brute_interval(line3).cost, 8);
  auto line4 = CollinearInstance::from_xs({0, 1, 2, 3});
  pin("xs=[0,1,2,3]", solve_collinear_yao(line4).result.cost, brute_interval(line4).cost, 10);
  PointSet square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  pin("unit square box", solve_box_speedup(square).result.cost, brute_box(square).cost, 8);
  PointSet tri({{0, 0}, {1, 0}, {0, 1}});
  pin("triangle box", solve_box_speedup(tri).result.cost, brute_box(tri).cost, 6);
  // Approx pin: the oracle here is the hand-derived run tree on tour 0-1-2-3
  // ({0,1}: 2, {2,3}: 2, all: 2*3 = 6), recomputed from the tree's own cycles.
  auto a = approx_decompose(square, MergeSchedule::BalancedRounds);
  pin("unit square approx", a.solve.cost, total_length(a.solve.tree, square, &a.tour), 10);
  if (a.tour.order != std::vector<std::size_t>{0, 1, 2, 3}) o.fail("unit square tour order");
  o.summary = "5 pinned values, each certified by an independent computation";
  return o;
}

// ---------------------------------------------------------------------------

struct Cli {
  fs::path exe;
  fs::path dir;

  int run(const std::string& args) const {
    const std::string cmd = "\"" + exe.string() + "\" " + args + " > \"" + (dir / "cli.log").string() + "\" 2>&1";
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string path(const std::string& name) const { return "\"" + (dir / name).string() + "\""; }
};

Outcome ac9(const Cli& cli) {
  Outcome o;
  std::size_t validated = 0;
  struct Inst {
    std::string name, dist;
    std::size_t n;
  };
  const std::vector<Inst> instances = {
      {"u8", "uniform", 8}, {"u14", "uniform", 14}, {"g9", "grid", 9}, {"c20", "collinear", 20}, {"c1", "collinear", 1}};
  auto expect = [&](int got, int want, const std::string& what) {
    if (got != want) o.fail(what + " exited " + std::to_string(got) + ", expected " + std::to_string(want));
    return got == want;
  };
  auto round_trips = [&](const std::string& file) {
    std::string text = read_text_file(cli.dir / file);
    if (serialize(parse_result(text)) != text) o.fail(file + " does not round-trip");
  };
  for (const auto& in : instances) {
    const std::string pts = in.name + ".txt";
    if (!expect(cli.run("gen --n " + std::to_string(in.n) + " --dist " + in.dist + " --seed 5 --out " + cli.path(pts)),
                0, "gen " + in.name)) {
      continue;
    }
    std::vector<std::pair<std::string, std::string>> jobs = {
        {"box_naive", "solve --mode box --algo naive --check"},
        {"box_fast", "solve --mode box --algo fast --check"},
    };
    if (in.dist == "collinear") {
      jobs.push_back({"col_naive", "solve --mode collinear --algo naive --check"});
      jobs.push_back({"col_fast", "solve --mode collinear --algo fast --check"});
    }
    if (in.n >= 2) {
      jobs.push_back({"approx_balanced", "approx --schedule balanced"});
      jobs.push_back({"approx_greedy", "approx --schedule greedy"});
    }
    for (const auto& [tag, args] : jobs) {
      const std::string out = in.name + "_" + tag + ".json";
      if (!expect(cli.run(args + " --in " + cli.path(pts) + " --out " + cli.path(out)), 0, tag + " " + in.name)) continue;
      if (expect(cli.run("validate --in " + cli.path(out) + " --points " + cli.path(pts)), 0,
                 "validate " + tag + " " + in.name)) {
        ++validated;
      }
      round_trips(out);
      expect(cli.run("render --in " + cli.path(out) + " --points " + cli.path(pts) + " --out " +
                     cli.path(in.name + "_" + tag + ".svg")),
             0, "render " + tag + " " + in.name);
    }
  }

  // Bench CSV schema: exact header, 9 columns, one row per (size, rep).
  if (expect(cli.run("bench --mode collinear --algo fast --sizes 5,10,20 --reps 2 --seed 1 --out " +
                     cli.path("bench.csv")),
             0, "bench")) {
    std::istringstream csv(read_text_file(cli.dir / "bench.csv"));
    std::string line;
    std::getline(csv, line);
    if (line != cli::kBenchHeader) o.fail("bench header '" + line + "'");
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
      ++rows;
      if (std::count(line.begin(), line.end(), ',') != 8) o.fail("bench row '" + line + "'");
    }
    if (rows != 6) o.fail("bench has " + std::to_string(rows) + " rows, expected 6");
  }
  expect(cli.run("solve --mode box --in " + cli.path("missing.txt") + " --out " + cli.path("x.json")), 1,
         "solve on missing input");
  o.summary = std::to_string(validated) + " CLI outputs re-validated with exit 0; documents round-trip; bench schema";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <pants-cli> <work-dir>\n";
    return 2;
  }
  Cli cli{fs::absolute(argv[1]), fs::absolute(argv[2])};
  fs::remove_all(cli.dir);
  fs::create_directories(cli.dir);

  Ac4Extra window;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 collinear equivalence", ac1},
      {"AC2 table properties", ac2},
      {"AC3 instrumented complexity", ac3},
      {"AC4 box correctness", [&] { return ac4(window); }},
      {"AC5 degeneration cross-check", ac5},
      {"AC6 approximation guarantees", ac6},
      {"AC7 lower/upper sandwich", ac7},
      {"AC8 known-value pins", ac8},
      {"AC9 end-to-end", [&] { return ac9(cli); }},
  };

  bool all = true;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.summary.c_str(), seconds_since(t0));
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }

  std::printf("FINDING per-axis window rule (--algo window): %zu of %zu AC4 instances differ from the exact optimum",
              window.window_mismatches, window.window_instances);
  if (window.window_mismatches > 0) {
    std::printf("; first: window %s vs exact %s on\n%s", format_number(window.first_window).c_str(),
                format_number(window.first_naive).c_str(), window.first_window_instance.c_str());
  } else {
    std::printf("\n");
  }
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
