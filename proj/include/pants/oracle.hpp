#pragma once

// Exhaustive ground truth for tiny instances. Deliberately independent of
// the DP solvers: nothing here reads a DP table or a recorded split.

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "pants/approx.hpp"
#include "pants/boxsolver.hpp"
#include "pants/collinear.hpp"
#include "pants/geom.hpp"
#include "pants/io.hpp"
#include "pants/model.hpp"

namespace pants {

inline constexpr std::size_t kIntervalOracleLimit = 14;
inline constexpr std::size_t kBoxOracleLimit = 8;

struct OracleResult {
  double cost = std::numeric_limits<double>::infinity();
  std::uint64_t tree_count = 0;
  std::uint64_t valid_count = 0;
};

/// Costs every full binary tree whose nodes are contiguous runs of the sorted
/// xs (Catalan(n-1) trees) and returns the cheapest.
inline OracleResult brute_interval(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n == 0) throw Error(ErrorCode::EmptyInstance);
  if (n > kIntervalOracleLimit) throw Error(ErrorCode::OracleLimitExceeded, std::to_string(n) + " points");
  for (std::size_t i = 1; i < n; ++i) {
    if (xs[i] < xs[i - 1]) throw Error(ErrorCode::UnsortedInstance);
  }
  // all_costs[{i,j}] lists the cost of every tree over xs[i..j], one entry per tree.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> all_costs;
  for (std::size_t i = 0; i < n; ++i) all_costs[{i, i}] = {0.0};
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len - 1;
      const double outer = 2.0 * (xs[j] - xs[i]);
      std::vector<double> costs;
      for (std::size_t k = i; k < j; ++k) {
        for (double l : all_costs[{i, k}]) {
          for (double r : all_costs[{k + 1, j}]) costs.push_back(outer + l + r);
        }
      }
      all_costs[{i, j}] = std::move(costs);
    }
  }
  OracleResult out;
  for (double c : all_costs[{0, n - 1}]) {
    ++out.tree_count;
    ++out.valid_count;
    out.cost = std::min(out.cost, c);
  }
  return out;
}

inline OracleResult brute_interval(const CollinearInstance& inst) { return brute_interval(inst.xs); }

/// Enumerates all (2n-3)!! unordered leaf-labelled full binary trees, gives
/// each cycle the bounding box of its points, and keeps the cheapest tree
/// that passes validate_box_tree.
inline OracleResult brute_box(const PointSet& ps) {
  const std::size_t n = ps.size();
  if (n > kBoxOracleLimit) throw Error(ErrorCode::OracleLimitExceeded, std::to_string(n) + " points");
  OracleResult out;
  if (n == 1) {
    out.cost = 0.0;
    out.tree_count = out.valid_count = 1;
    return out;
  }

  // Node ids 0..n-1 are leaves; internal nodes follow. kNone marks the root's parent.
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t total = 2 * n - 1;
  std::vector<std::size_t> parent(total, kNone), left(total, kNone), right(total, kNone);
  std::size_t root = 0;
  std::size_t next_internal = n;

  auto evaluate = [&] {
    ++out.tree_count;
    DecompTree tree;
    std::vector<NodeId> id_of(total);
    std::vector<std::vector<std::size_t>> pts(total);
    double cost = 0.0;
    auto build = [&](auto&& self, std::size_t v) -> void {
      if (v < n) {
        pts[v] = {v};
        id_of[v] = tree.add_leaf(v);
        return;
      }
      self(self, left[v]);
      self(self, right[v]);
      pts[v] = pts[left[v]];
      pts[v].insert(pts[v].end(), pts[right[v]].begin(), pts[right[v]].end());
      Rect r = bounding_rect(ps, pts[v]);
      cost += rect_perimeter(r);
      id_of[v] = tree.add_cycle(RectCycle{r}, id_of[left[v]], id_of[right[v]]);
    };
    build(build, root);
    if (validate_box_tree(tree, ps).ok()) {
      ++out.valid_count;
      out.cost = std::min(out.cost, cost);
    }
  };

  // Insert leaf k above every existing node (2k - 1 choices), recursively.
  auto insert = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      evaluate();
      return;
    }
    const std::size_t existing = next_internal;
    std::vector<std::size_t> targets;
    for (std::size_t v = 0; v < existing; ++v) {
      if (v < k || v >= n) targets.push_back(v);
    }
    for (std::size_t x : targets) {
      const std::size_t m = next_internal++;
      const std::size_t px = parent[x];
      left[m] = x;
      right[m] = k;
      parent[m] = px;
      parent[x] = m;
      parent[k] = m;
      if (px == kNone) {
        root = m;
      } else if (left[px] == x) {
        left[px] = m;
      } else {
        right[px] = m;
      }
      self(self, k + 1);
      if (px == kNone) {
        root = x;
      } else if (left[px] == m) {
        left[px] = x;
      } else {
        right[px] = x;
      }
      parent[x] = px;
      parent[k] = kNone;
      left[m] = right[m] = parent[m] = kNone;
      --next_internal;
    }
  };
  insert(insert, 1);
  if (out.valid_count == 0) throw Error(ErrorCode::Internal, "no valid box tree; validator rejected everything");
  return out;
}

struct CrossCheckEntry {
  std::string check;
  bool agree = true;
  std::string detail;
};

struct CrossCheckReport {
  std::vector<CrossCheckEntry> entries;
  /// The instance in the plain-text point format, for replay.
  std::string instance;

  std::size_t violations() const {
    std::size_t k = 0;
    for (const auto& e : entries) k += e.agree ? 0 : 1;
    return k;
  }
};

inline constexpr std::size_t kNaiveBoxCrossCheckLimit = 20;
inline constexpr std::size_t kFastBoxCrossCheckLimit = 40;

/// Runs every solver/oracle pair that applies to the instance and records
/// agreement. Comparisons are exact on integer input, 1e-9 relative otherwise.
inline CrossCheckReport cross_check(const PointSet& ps) {
  CrossCheckReport report;
  report.instance = format_instance(ps.points());
  const std::size_t n = ps.size();
  auto same = [&](double a, double b) { return ps.exact_mode() ? a == b : nearly_equal(a, b); };
  auto record = [&](std::string name, double a, double b) {
    report.entries.push_back({std::move(name), same(a, b), std::to_string(a) + " vs " + std::to_string(b)});
  };
  auto require = [&](std::string name, bool ok, std::string detail) {
    report.entries.push_back({std::move(name), ok, std::move(detail)});
  };

  std::optional<double> collinear_cost;
  if (ps.all_on_horizontal_line()) {
    auto inst = CollinearInstance::from_points(ps);
    auto naive = solve_collinear_naive(inst);
    auto yao = solve_collinear_yao(inst);
    record("collinear naive vs yao", naive.result.cost, yao.result.cost);
    require("collinear naive vs yao K table", naive.tables == yao.tables, "argmin tables compared");
    if (n <= kIntervalOracleLimit) record("collinear naive vs brute_interval", naive.result.cost, brute_interval(inst).cost);
    require("collinear tree valid", validate_interval_tree(yao.result.tree, ps).ok(), "validate_interval_tree");
    collinear_cost = yao.result.cost;
  }

  std::optional<double> box_cost;
  if (n <= kNaiveBoxCrossCheckLimit) {
    auto naive = solve_box_naive(ps);
    box_cost = naive.result.cost;
    require("box naive tree valid", validate_box_tree(naive.result.tree, ps, {.require_tight = true}).ok(),
            "validate_box_tree with tightness");
    if (n <= kBoxOracleLimit) record("box naive vs brute_box", naive.result.cost, brute_box(ps).cost);
  }
  if (n <= kFastBoxCrossCheckLimit) {
    auto fast = solve_box_speedup(ps);
    if (box_cost) record("box naive vs speedup", *box_cost, fast.result.cost);
    box_cost = fast.result.cost;
    require("box speedup tree valid", validate_box_tree(fast.result.tree, ps, {.require_tight = true}).ok(),
            "validate_box_tree with tightness");
  }
  if (box_cost && collinear_cost) record("box vs collinear", *box_cost, *collinear_cost);

  if (n >= 2) {
    auto approx = approx_decompose(ps);
    const double tol = ps.exact_mode() ? 0.0 : 1e-9;
    require("tour <= 2 mst", approx.tour.closed_length <= 2.0 * approx.mst.length * (1 + tol),
            std::to_string(approx.tour.closed_length) + " vs " + std::to_string(approx.mst.length));
    require("approx <= 2 ceil(log2 n) path",
            approx.solve.cost <= static_cast<double>(approx.bound_factor) * approx.tour.path_length * (1 + 1e-9),
            std::to_string(approx.solve.cost));
    require("approx tree valid", validate_run_tree(approx.solve.tree, approx.tour).ok(), "validate_run_tree");
    if (box_cost) {
      require("mst <= box optimum", approx.mst.length <= *box_cost * (1 + 1e-9),
              std::to_string(approx.mst.length) + " vs " + std::to_string(*box_cost));
      require("approx <= 4 ceil(log2 n) box optimum",
              approx.solve.cost <= 2.0 * static_cast<double>(approx.bound_factor) * *box_cost * (1 + 1e-9),
              std::to_string(approx.solve.cost) + " vs " + std::to_string(*box_cost));
    }
  }
  return report;
}

}  // namespace pants
