#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pants/geom.hpp"
#include "pants/model.hpp"

namespace pants {

/// Rank-space box: x-ranks i1..i2 and y-ranks j1..j2, all 1-based and
/// inclusive. Its subset is every point whose x-rank and y-rank fall inside.
struct BoxState {
  std::size_t i1 = 1;
  std::size_t i2 = 1;
  std::size_t j1 = 1;
  std::size_t j2 = 1;

  std::size_t width() const { return i2 - i1; }
  std::size_t height() const { return j2 - j1; }

  friend bool operator==(const BoxState&, const BoxState&) = default;
};

inline std::string to_string(const BoxState& s) {
  return "(" + std::to_string(s.i1) + "," + std::to_string(s.i2) + "," + std::to_string(s.j1) + "," +
         std::to_string(s.j2) + ")";
}

enum class Axis : std::uint8_t {
  Vertical,    // split by x-rank: left part has x-ranks <= k
  Horizontal,  // split by y-rank: lower part has y-ranks <= k
};

struct BoxSplit {
  Axis axis = Axis::Vertical;
  std::size_t k = 0;
  friend bool operator==(const BoxSplit&, const BoxSplit&) = default;
};

/// Largest instance the dense box tables accept (memory grows as n^4).
inline constexpr std::size_t kBoxMaxPoints = 64;

/// Rank-space queries over a point set. Borrows the PointSet.
class BoxGeometry {
 public:
  explicit BoxGeometry(const PointSet& ps) : ps_(&ps), n_(ps.size()) {}

  std::size_t size() const { return n_; }
  const PointSet& points() const { return *ps_; }

  std::size_t point_at_x(std::size_t rank) const { return ps_->x_rank()[rank - 1]; }
  std::size_t point_at_y(std::size_t rank) const { return ps_->y_rank()[rank - 1]; }
  std::size_t x_rank_of(std::size_t p) const { return ps_->x_pos(p) + 1; }
  std::size_t y_rank_of(std::size_t p) const { return ps_->y_pos(p) + 1; }

  bool contains(const BoxState& s, std::size_t p) const {
    std::size_t xr = x_rank_of(p);
    std::size_t yr = y_rank_of(p);
    return s.i1 <= xr && xr <= s.i2 && s.j1 <= yr && yr <= s.j2;
  }

  /// A box is tight iff the four points sitting on its extreme ranks all lie inside it.
  bool is_tight(const BoxState& s) const {
    if (s.i1 < 1 || s.i1 > s.i2 || s.i2 > n_ || s.j1 < 1 || s.j1 > s.j2 || s.j2 > n_) return false;
    return contains(s, point_at_x(s.i1)) && contains(s, point_at_x(s.i2)) && contains(s, point_at_y(s.j1)) &&
           contains(s, point_at_y(s.j2));
  }

  /// Smallest tight box with the same subset, or nullopt if the subset is empty.
  std::optional<BoxState> tighten(const BoxState& s) const {
    std::optional<BoxState> out;
    for (std::size_t r = s.i1; r <= s.i2; ++r) {
      std::size_t yr = y_rank_of(point_at_x(r));
      if (yr < s.j1 || yr > s.j2) continue;
      if (!out) {
        out = BoxState{r, r, yr, yr};
      } else {
        out->i2 = r;
        out->j1 = std::min(out->j1, yr);
        out->j2 = std::max(out->j2, yr);
      }
    }
    return out;
  }

  std::vector<std::size_t> subset(const BoxState& s) const {
    std::vector<std::size_t> out;
    for (std::size_t r = s.i1; r <= s.i2; ++r) {
      std::size_t p = point_at_x(r);
      if (contains(s, p)) out.push_back(p);
    }
    return out;
  }

  Rect rect(const BoxState& s) const {
    return {(*ps_)[point_at_x(s.i1)].x, (*ps_)[point_at_x(s.i2)].x, (*ps_)[point_at_y(s.j1)].y,
            (*ps_)[point_at_y(s.j2)].y};
  }

  double perimeter(const BoxState& s) const { return rect_perimeter(rect(s)); }

  /// Children of every split of a tight state along one axis. Entry k - lo of
  /// each vector is the tight (low, high) pair for split rank k in [lo, hi].
  struct SplitChildren {
    std::vector<BoxState> low;
    std::vector<BoxState> high;
  };

  SplitChildren split_children(const BoxState& s, Axis axis, std::size_t lo, std::size_t hi) const {
    const bool vertical = axis == Axis::Vertical;
    const std::size_t a = vertical ? s.i1 : s.j1;
    const std::size_t b = vertical ? s.i2 : s.j2;
    const std::size_t c1 = vertical ? s.j1 : s.i1;
    const std::size_t c2 = vertical ? s.j2 : s.i2;
    auto along = [&](std::size_t r) { return vertical ? point_at_x(r) : point_at_y(r); };
    auto across = [&](std::size_t p) { return vertical ? y_rank_of(p) : x_rank_of(p); };
    auto make = [&](std::size_t a1, std::size_t a2, std::size_t b1, std::size_t b2) {
      return vertical ? BoxState{a1, a2, b1, b2} : BoxState{b1, b2, a1, a2};
    };

    SplitChildren out;
    out.low.resize(hi - lo + 1);
    out.high.resize(hi - lo + 1);
    std::size_t last = a;
    std::size_t cmin = n_ + 1;
    std::size_t cmax = 0;
    for (std::size_t r = a; r <= hi; ++r) {
      std::size_t cr = across(along(r));
      if (c1 <= cr && cr <= c2) {
        last = r;
        cmin = std::min(cmin, cr);
        cmax = std::max(cmax, cr);
      }
      if (r >= lo) out.low[r - lo] = make(a, last, cmin, cmax);
    }
    std::size_t first = b;
    cmin = n_ + 1;
    cmax = 0;
    for (std::size_t r = b; r > lo; --r) {
      std::size_t cr = across(along(r));
      if (c1 <= cr && cr <= c2) {
        first = r;
        cmin = std::min(cmin, cr);
        cmax = std::max(cmax, cr);
      }
      if (r - 1 <= hi) out.high[r - 1 - lo] = make(first, b, cmin, cmax);
    }
    return out;
  }

  BoxState full() const { return {1, n_, 1, n_}; }

 private:
  const PointSet* ps_;
  std::size_t n_;
};

/// The tight state whose rank bounds are the extremes of the subset.
inline BoxState canonicalize(const PointSet& ps, std::span<const std::size_t> subset) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset);
  BoxState s{ps.size(), 1, ps.size(), 1};
  for (std::size_t p : subset) {
    std::size_t xr = ps.x_pos(p) + 1;
    std::size_t yr = ps.y_pos(p) + 1;
    s.i1 = std::min(s.i1, xr);
    s.i2 = std::max(s.i2, xr);
    s.j1 = std::min(s.j1, yr);
    s.j2 = std::max(s.j2, yr);
  }
  return s;
}

/// Cost and split tables over tight states, densely indexed by (i1,i2,j1,j2).
/// Each state also keeps the best split rank per axis (largest minimizer).
class BoxDPTables {
 public:
  BoxDPTables() = default;
  explicit BoxDPTables(std::size_t n) : n_(n) {
    if (n > kBoxMaxPoints) {
      throw Error(ErrorCode::InstanceTooLarge, "box solver supports at most " + std::to_string(kBoxMaxPoints) + " points");
    }
    const std::size_t cells = n * n * n * n;
    cost_.assign(cells, std::numeric_limits<double>::quiet_NaN());
    kv_.assign(cells, 0);
    kh_.assign(cells, 0);
    axis_.assign(cells, Axis::Vertical);
  }

  std::size_t size() const { return n_; }
  bool contains(const BoxState& s) const { return !std::isnan(cost_[index(s)]); }
  double cost(const BoxState& s) const { return cost_[index(s)]; }

  /// The chosen split; meaningless for single-point states.
  BoxSplit split(const BoxState& s) const {
    Axis a = axis_[index(s)];
    return {a, a == Axis::Vertical ? kv_[index(s)] : kh_[index(s)]};
  }

  /// Largest minimizing split rank on one axis, if that axis was evaluated.
  std::optional<std::size_t> axis_argmin(const BoxState& s, Axis a) const {
    std::uint16_t k = a == Axis::Vertical ? kv_[index(s)] : kh_[index(s)];
    if (k == 0) return std::nullopt;
    return k;
  }

  void set_leaf(const BoxState& s) { cost_[index(s)] = 0.0; }
  void set(const BoxState& s, double cost, std::size_t kv, std::size_t kh, Axis chosen) {
    const std::size_t i = index(s);
    cost_[i] = cost;
    kv_[i] = static_cast<std::uint16_t>(kv);
    kh_[i] = static_cast<std::uint16_t>(kh);
    axis_[i] = chosen;
  }

 private:
  std::size_t index(const BoxState& s) const {
    return (((s.i1 - 1) * n_ + (s.i2 - 1)) * n_ + (s.j1 - 1)) * n_ + (s.j2 - 1);
  }

  std::size_t n_ = 0;
  std::vector<double> cost_;
  std::vector<std::uint16_t> kv_;
  std::vector<std::uint16_t> kh_;
  std::vector<Axis> axis_;
};

struct BoxSolution {
  SolveResult result;
  BoxDPTables tables;
  /// PerAxisTransplant only: windows that fell back to the full split range
  /// (neighbor state missing, non-tight, or an inverted window).
  std::uint64_t window_fallbacks = 0;
  std::uint64_t window_inversions = 0;
};

/// Rebuilds the rectangle tree from recorded splits. Every node's rectangle
/// is the tight bounding box of the points below it.
inline DecompTree reconstruct_box_tree(const BoxDPTables& tables, const PointSet& ps) {
  BoxGeometry geo(ps);
  if (tables.size() != ps.size()) throw Error(ErrorCode::InconsistentTables, "table size does not match instance");
  DecompTree tree;
  struct Frame {
    BoxState s;
    bool expanded;
  };
  std::vector<Frame> stack{{geo.full(), false}};
  std::vector<NodeId> built;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (!tables.contains(f.s) || !geo.is_tight(f.s)) {
      throw Error(ErrorCode::InconsistentTables, "state " + to_string(f.s) + " missing");
    }
    if (f.s.i1 == f.s.i2) {
      built.push_back(tree.add_leaf(geo.point_at_x(f.s.i1)));
      continue;
    }
    if (f.expanded) {
      NodeId right = built.back();
      built.pop_back();
      NodeId left = built.back();
      built.pop_back();
      built.push_back(tree.add_cycle(RectCycle{geo.rect(f.s)}, left, right));
      continue;
    }
    BoxSplit sp = tables.split(f.s);
    const std::size_t a = sp.axis == Axis::Vertical ? f.s.i1 : f.s.j1;
    const std::size_t b = sp.axis == Axis::Vertical ? f.s.i2 : f.s.j2;
    if (sp.k < a || sp.k >= b) {
      throw Error(ErrorCode::InconsistentTables, "split " + std::to_string(sp.k) + " of " + to_string(f.s));
    }
    auto kids = geo.split_children(f.s, sp.axis, sp.k, sp.k);
    stack.push_back({f.s, true});
    stack.push_back({kids.high.front(), false});
    stack.push_back({kids.low.front(), false});
  }
  tree.set_root(built.back());
  return tree;
}

namespace detail {

struct AxisBest {
  double value = std::numeric_limits<double>::infinity();
  std::size_t k = 0;
};

// Evaluates splits k in [lo, hi] of one axis; cost_of must return the cost of
// an already solved (or solvable) child state. Ties keep the largest k. With
// distinct_only, a split rank is evaluated only if rank k + 1 holds a point of
// s: other ranks repeat the partition of the next evaluated rank.
template <class CostOf>
AxisBest best_split(const BoxGeometry& geo, const BoxState& s, Axis axis, std::size_t lo, std::size_t hi,
                    CostOf&& cost_of, SolveStats& stats, bool distinct_only = false) {
  AxisBest best;
  auto kids = geo.split_children(s, axis, lo, hi);
  for (std::size_t k = lo; k <= hi; ++k) {
    if (distinct_only) {
      const std::size_t next = axis == Axis::Vertical ? geo.point_at_x(k + 1) : geo.point_at_y(k + 1);
      if (!geo.contains(s, next)) continue;
    }
    double v = cost_of(kids.low[k - lo]) + cost_of(kids.high[k - lo]);
    ++stats.candidates_examined;
    if (v <= best.value) {
      best.value = v;
      best.k = k;
    }
  }
  return best;
}

inline void finish_state(BoxDPTables& tables, const BoxGeometry& geo, const BoxState& s, const AxisBest& v,
                         const AxisBest& h) {
  const bool vertical = v.value <= h.value;
  tables.set(s, geo.perimeter(s) + (vertical ? v.value : h.value), v.k, h.k,
             vertical ? Axis::Vertical : Axis::Horizontal);
}

}  // namespace detail

/// Memoized recursion from the full state over every split on both axes.
/// Tie-break: vertical before horizontal, then the largest split rank.
inline BoxSolution solve_box_naive(const PointSet& ps) {
  const auto start = std::chrono::steady_clock::now();
  BoxGeometry geo(ps);
  BoxSolution sol;
  sol.tables = BoxDPTables(ps.size());
  SolveStats& stats = sol.result.stats;

  auto solve = [&](auto&& self, const BoxState& s) -> double {
    if (sol.tables.contains(s)) return sol.tables.cost(s);
    if (s.i1 == s.i2) {
      sol.tables.set_leaf(s);
      return 0.0;
    }
    auto cost_of = [&](const BoxState& child) { return self(self, child); };
    auto v = detail::best_split(geo, s, Axis::Vertical, s.i1, s.i2 - 1, cost_of, stats);
    auto h = detail::best_split(geo, s, Axis::Horizontal, s.j1, s.j2 - 1, cost_of, stats);
    detail::finish_state(sol.tables, geo, s, v, h);
    ++stats.states_evaluated;
    return sol.tables.cost(s);
  };
  sol.result.cost = solve(solve, geo.full());
  sol.result.tree = reconstruct_box_tree(sol.tables, ps);
  stats.wall_time = std::chrono::steady_clock::now() - start;
  return sol;
}

/// Split-range policy for solve_box_speedup.
enum class BoxWindow {
  /// Every distinct partition on both axes; exact.
  Distinct,
  /// The 1D argmin-window rule applied per axis: splits on an axis are
  /// limited to [K(lower neighbor), K(upper neighbor)], where the neighbors
  /// drop the first or last rank on that axis, falling back to the full range
  /// when either neighbor is not a tight state. NOT exact: the points
  /// (3,9) (0,8) (10,7) (1,1) give 68 instead of 66.
  PerAxisTransplant,
};

/// Bottom-up over every tight state, ordered by max(width, height) then by
/// width + height, so all proper sub-boxes are solved first.
inline BoxSolution solve_box_speedup(const PointSet& ps, BoxWindow policy = BoxWindow::Distinct) {
  const auto start = std::chrono::steady_clock::now();
  BoxGeometry geo(ps);
  const std::size_t n = ps.size();
  BoxSolution sol;
  sol.tables = BoxDPTables(n);
  BoxDPTables& tables = sol.tables;
  SolveStats& stats = sol.result.stats;

  auto cost_of = [&](const BoxState& child) {
    if (!tables.contains(child)) throw Error(ErrorCode::Internal, "child " + to_string(child) + " not yet solved");
    return tables.cost(child);
  };

  auto window = [&](const BoxState& s, Axis axis) -> std::pair<std::size_t, std::size_t> {
    const bool vertical = axis == Axis::Vertical;
    const std::size_t a = vertical ? s.i1 : s.j1;
    const std::size_t b = vertical ? s.i2 : s.j2;
    if (policy == BoxWindow::Distinct) return {a, b - 1};
    if (b - a >= 2) {
      BoxState lower = s;
      BoxState upper = s;
      if (vertical) {
        lower.i2 -= 1;
        upper.i1 += 1;
      } else {
        lower.j2 -= 1;
        upper.j1 += 1;
      }
      if (geo.is_tight(lower) && geo.is_tight(upper)) {
        auto klo = tables.axis_argmin(lower, axis);
        auto khi = tables.axis_argmin(upper, axis);
        if (klo && khi) {
          std::size_t lo = std::max(a, *klo);
          std::size_t hi = std::min(b - 1, *khi);
          if (lo <= hi) return {lo, hi};
          ++sol.window_inversions;
        }
      }
    }
    ++sol.window_fallbacks;
    return {a, b - 1};
  };

  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t sum = m; sum <= 2 * m; ++sum) {
      // (d1, d2) with max(d1, d2) == m and d1 + d2 == sum
      for (std::size_t d1 = sum - m; d1 <= m; ++d1) {
        const std::size_t d2 = sum - d1;
        if (std::max(d1, d2) != m) continue;
        for (std::size_t i1 = 1; i1 + d1 <= n; ++i1) {
          for (std::size_t j1 = 1; j1 + d2 <= n; ++j1) {
            const BoxState s{i1, i1 + d1, j1, j1 + d2};
            if (!geo.is_tight(s)) continue;
            if (d1 == 0) {
              tables.set_leaf(s);
              continue;
            }
            auto [vlo, vhi] = window(s, Axis::Vertical);
            auto [hlo, hhi] = window(s, Axis::Horizontal);
            const bool distinct = policy == BoxWindow::Distinct;
            auto v = detail::best_split(geo, s, Axis::Vertical, vlo, vhi, cost_of, stats, distinct);
            auto h = detail::best_split(geo, s, Axis::Horizontal, hlo, hhi, cost_of, stats, distinct);
            detail::finish_state(tables, geo, s, v, h);
            ++stats.states_evaluated;
          }
        }
      }
    }
  }
  sol.result.cost = tables.cost(geo.full());
  sol.result.tree = reconstruct_box_tree(tables, ps);
  stats.wall_time = std::chrono::steady_clock::now() - start;
  return sol;
}

}  // namespace pants
