#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "pants/geom.hpp"
#include "pants/model.hpp"

namespace pants {

/// Sorted x-coordinates of collinear punctures. point_of_rank maps the
/// 1-based rank r to the input point index point_of_rank[r - 1].
struct CollinearInstance {
  std::vector<double> xs;
  std::vector<std::size_t> point_of_rank;

  std::size_t size() const { return xs.size(); }
  double x(std::size_t rank) const { return xs[rank - 1]; }

  static CollinearInstance from_xs(std::vector<double> xs) {
    if (xs.empty()) throw Error(ErrorCode::EmptyInstance);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i])) throw Error(ErrorCode::InvalidCoordinate, "x[" + std::to_string(i) + "]");
      if (i > 0 && xs[i] < xs[i - 1]) throw Error(ErrorCode::UnsortedInstance, "x[" + std::to_string(i) + "]");
    }
    CollinearInstance inst;
    inst.point_of_rank.resize(xs.size());
    std::iota(inst.point_of_rank.begin(), inst.point_of_rank.end(), std::size_t{0});
    inst.xs = std::move(xs);
    return inst;
  }

  /// Requires every point on one horizontal line.
  static CollinearInstance from_points(const PointSet& ps) {
    if (!ps.all_on_horizontal_line()) throw Error(ErrorCode::NotCollinear, "points must share one y-coordinate");
    CollinearInstance inst;
    inst.point_of_rank = ps.x_rank();
    for (std::size_t p : inst.point_of_rank) inst.xs.push_back(ps[p].x);
    return inst;
  }

  /// The same punctures as planar points on the x-axis, in rank order.
  PointSet as_point_set() const {
    std::vector<Point> pts;
    pts.reserve(xs.size());
    for (double x : xs) pts.push_back({x, 0.0});
    return PointSet(std::move(pts));
  }
};

/// Upper-triangular cost table c(i,j) and argmin table K(i,j), 1 <= i <= j <= n.
/// K(i,i) = i is stored as the window seed for the first diagonal. Storage is
/// diagonal-major (all entries with the same j - i are adjacent), matching the
/// order in which the solvers fill the tables.
class DPTables {
 public:
  DPTables() = default;
  explicit DPTables(std::size_t n) : n_(n), diag_(n + 1, 0) {
    std::size_t off = 0;
    for (std::size_t d = 0; d < n; ++d) {
      diag_[d] = off - 1;  // ranks are 1-based; wraps for d = 0 and index() wraps back
      off += n - d;
    }
    c_.assign(off, 0.0);
    k_.assign(off, 0);
    for (std::size_t i = 1; i <= n; ++i) k_[index(i, i)] = static_cast<std::uint32_t>(i);
  }

  std::size_t size() const { return n_; }
  double c(std::size_t i, std::size_t j) const { return c_[index(i, j)]; }
  std::size_t K(std::size_t i, std::size_t j) const { return k_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double cost, std::size_t k) {
    c_[index(i, j)] = cost;
    k_[index(i, j)] = static_cast<std::uint32_t>(k);
  }

  friend bool operator==(const DPTables&, const DPTables&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const { return diag_[j - i] + i; }

  std::size_t n_ = 0;
  std::vector<std::size_t> diag_;
  std::vector<double> c_;
  std::vector<std::uint32_t> k_;
};

struct CollinearSolution {
  SolveResult result;
  DPTables tables;
  /// Split candidates evaluated on each diagonal d = j - i (index d).
  std::vector<std::uint64_t> diagonal_candidates;
};

/// Rebuilds the decomposition by splitting [i,j] at K(i,j) recursively.
inline DecompTree reconstruct_interval_tree(const DPTables& tables, const CollinearInstance& inst) {
  const std::size_t n = inst.size();
  if (tables.size() != n || n == 0) throw Error(ErrorCode::InconsistentTables, "table size does not match instance");
  DecompTree tree;
  struct Frame {
    std::size_t i, j;
    bool expanded;
  };
  std::vector<Frame> stack{{1, n, false}};
  std::vector<NodeId> built;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.i == f.j) {
      built.push_back(tree.add_leaf(inst.point_of_rank[f.i - 1]));
      continue;
    }
    if (f.expanded) {
      NodeId right = built.back();
      built.pop_back();
      NodeId left = built.back();
      built.pop_back();
      built.push_back(tree.add_cycle(IntervalCycle{f.i, f.j}, left, right));
      continue;
    }
    std::size_t k = tables.K(f.i, f.j);
    if (k < f.i || k >= f.j) {
      throw Error(ErrorCode::InconsistentTables,
                  "K(" + std::to_string(f.i) + "," + std::to_string(f.j) + ") = " + std::to_string(k));
    }
    stack.push_back({f.i, f.j, true});
    stack.push_back({k + 1, f.j, false});
    stack.push_back({f.i, k, false});
  }
  tree.set_root(built.back());
  return tree;
}

namespace detail {

// Fills c(i,j) for j > i by diagonals. window(i, j) yields the inclusive
// candidate range of k. Ties keep the largest k.
template <class Window>
CollinearSolution solve_collinear(const CollinearInstance& inst, Window window) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = inst.size();
  if (n == 0) throw Error(ErrorCode::EmptyInstance);
  for (std::size_t r = 2; r <= n; ++r) {
    if (inst.x(r) < inst.x(r - 1)) throw Error(ErrorCode::UnsortedInstance, "rank " + std::to_string(r));
  }
  CollinearSolution sol;
  sol.tables = DPTables(n);
  sol.diagonal_candidates.assign(n, 0);
  DPTables& t = sol.tables;
  SolveStats& stats = sol.result.stats;

  for (std::size_t d = 1; d < n; ++d) {
    for (std::size_t i = 1; i + d <= n; ++i) {
      const std::size_t j = i + d;
      auto [lo, hi] = window(t, i, j);
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_k = lo;
      for (std::size_t k = lo; k <= hi; ++k) {
        double v = t.c(i, k) + t.c(k + 1, j);
        if (v <= best) {
          best = v;
          best_k = k;
        }
      }
      sol.diagonal_candidates[d] += hi - lo + 1;
      t.set(i, j, 2.0 * (inst.x(j) - inst.x(i)) + best, best_k);
      ++stats.states_evaluated;
    }
    stats.candidates_examined += sol.diagonal_candidates[d];
  }
  sol.result.cost = t.c(1, n);
  sol.result.tree = reconstruct_interval_tree(t, inst);
  stats.wall_time = std::chrono::steady_clock::now() - start;
  return sol;
}

}  // namespace detail

/// Cubic DP: every k in [i, j) is examined.
inline CollinearSolution solve_collinear_naive(const CollinearInstance& inst) {
  return detail::solve_collinear(inst, [](const DPTables&, std::size_t i, std::size_t j) {
    return std::pair{i, j - 1};
  });
}

/// Quadratic DP: k is restricted to [K(i,j-1), K(i+1,j)], which is sound
/// because the interval weight satisfies the quadrangle inequality.
inline CollinearSolution solve_collinear_yao(const CollinearInstance& inst) {
  return detail::solve_collinear(inst, [](const DPTables& t, std::size_t i, std::size_t j) {
    std::size_t lo = std::max(i, t.K(i, j - 1));
    std::size_t hi = std::min(j - 1, t.K(i + 1, j));
    if (lo > hi) throw Error(ErrorCode::Internal, "empty split window");
    return std::pair{lo, hi};
  });
}

}  // namespace pants
