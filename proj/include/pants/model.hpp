#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pants/error.hpp"
#include "pants/geom.hpp"

namespace pants {

/// Collinear cycle around the x-ranks first..last (1-based, inclusive).
struct IntervalCycle {
  std::size_t first = 1;
  std::size_t last = 1;
  friend bool operator==(const IntervalCycle&, const IntervalCycle&) = default;
};

struct RectCycle {
  Rect rect;
  friend bool operator==(const RectCycle&, const RectCycle&) = default;
};

/// Out-and-back cycle along tour positions first..last (0-based, inclusive).
struct RunCycle {
  std::size_t first = 0;
  std::size_t last = 0;
  friend bool operator==(const RunCycle&, const RunCycle&) = default;
};

using CycleGeom = std::variant<IntervalCycle, RectCycle, RunCycle>;

enum class CycleClass { Interval, Rect, Run };

inline CycleClass cycle_class(const CycleGeom& g) { return static_cast<CycleClass>(g.index()); }

/// A tour through all points. order[pos] is the point visited at position pos.
struct Tour {
  std::vector<std::size_t> order;
  double closed_length = 0.0;
  double path_length = 0.0;

  /// Length of the path edge between positions pos and pos + 1.
  double edge(const PointSet& ps, std::size_t pos) const { return euclid_dist(ps[order[pos]], ps[order[pos + 1]]); }
};

inline Tour make_tour(const PointSet& ps, std::vector<std::size_t> order) {
  Tour t;
  t.order = std::move(order);
  for (std::size_t pos = 0; pos + 1 < t.order.size(); ++pos) t.path_length += t.edge(ps, pos);
  t.closed_length = t.path_length;
  if (t.order.size() > 1) t.closed_length += euclid_dist(ps[t.order.back()], ps[t.order.front()]);
  return t;
}

using NodeId = std::uint32_t;

struct Leaf {
  std::size_t point = 0;
  friend bool operator==(const Leaf&, const Leaf&) = default;
};

struct Cycle {
  CycleGeom geom;
  NodeId left = 0;
  NodeId right = 0;
};

using TreeNode = std::variant<Leaf, Cycle>;

/// Full binary tree: leaves are punctures, internal nodes are cycles. Nodes
/// live in a flat arena; children are always added before their parent.
class DecompTree {
 public:
  NodeId add_leaf(std::size_t point) {
    nodes_.emplace_back(Leaf{point});
    root_ = last_id();
    return root_;
  }

  NodeId add_cycle(CycleGeom geom, NodeId left, NodeId right) {
    if (left >= nodes_.size() || right >= nodes_.size() || left == right) {
      throw Error(ErrorCode::Internal, "cycle children must be distinct existing nodes");
    }
    nodes_.emplace_back(Cycle{geom, left, right});
    root_ = last_id();
    return root_;
  }

  bool empty() const { return nodes_.empty(); }
  NodeId root() const { return root_; }
  void set_root(NodeId id) { root_ = id; }
  std::size_t node_count() const { return nodes_.size(); }
  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  TreeNode& node(NodeId id) { return nodes_.at(id); }

  bool is_leaf(NodeId id) const { return std::holds_alternative<Leaf>(nodes_.at(id)); }
  const Leaf& leaf(NodeId id) const { return std::get<Leaf>(nodes_.at(id)); }
  const Cycle& cycle(NodeId id) const { return std::get<Cycle>(nodes_.at(id)); }

  /// Nodes reachable from the root, children before parents.
  std::vector<NodeId> postorder() const {
    std::vector<NodeId> out;
    if (nodes_.empty()) return out;
    std::vector<std::pair<NodeId, bool>> stack{{root_, false}};
    while (!stack.empty()) {
      auto [id, expanded] = stack.back();
      stack.pop_back();
      if (expanded || is_leaf(id)) {
        out.push_back(id);
        continue;
      }
      if (out.size() + stack.size() > 2 * nodes_.size()) {
        throw Error(ErrorCode::Internal, "tree contains a cycle");
      }
      const Cycle& c = cycle(id);
      stack.emplace_back(id, true);
      stack.emplace_back(c.right, false);
      stack.emplace_back(c.left, false);
    }
    return out;
  }

  std::vector<std::size_t> leaf_points() const {
    std::vector<std::size_t> pts;
    for (NodeId id : postorder()) {
      if (is_leaf(id)) pts.push_back(leaf(id).point);
    }
    return pts;
  }

  std::size_t cycle_count() const {
    std::size_t k = 0;
    for (NodeId id : postorder()) k += is_leaf(id) ? 0 : 1;
    return k;
  }

  /// Structural equality from the roots; arena layout is irrelevant.
  friend bool operator==(const DecompTree& a, const DecompTree& b) {
    if (a.empty() || b.empty()) return a.empty() == b.empty();
    std::vector<std::pair<NodeId, NodeId>> stack{{a.root_, b.root_}};
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      if (a.is_leaf(x) != b.is_leaf(y)) return false;
      if (a.is_leaf(x)) {
        if (a.leaf(x) != b.leaf(y)) return false;
        continue;
      }
      const Cycle& cx = a.cycle(x);
      const Cycle& cy = b.cycle(y);
      if (!(cx.geom == cy.geom)) return false;
      stack.emplace_back(cx.left, cy.left);
      stack.emplace_back(cx.right, cy.right);
    }
    return true;
  }

 private:
  NodeId last_id() const { return static_cast<NodeId>(nodes_.size() - 1); }

  std::vector<TreeNode> nodes_;
  NodeId root_ = 0;
};

struct SolveStats {
  std::uint64_t states_evaluated = 0;
  std::uint64_t candidates_examined = 0;
  std::chrono::duration<double, std::milli> wall_time{0};
};

struct SolveResult {
  double cost = 0.0;
  DecompTree tree;
  SolveStats stats;
};

inline double cycle_length(const CycleGeom& geom, const PointSet& ps, const Tour* tour) {
  return std::visit(
      [&](const auto& g) -> double {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, IntervalCycle>) {
          return 2.0 * (ps[ps.x_rank().at(g.last - 1)].x - ps[ps.x_rank().at(g.first - 1)].x);
        } else if constexpr (std::is_same_v<G, RectCycle>) {
          return rect_perimeter(g.rect);
        } else {
          if (tour == nullptr) throw Error(ErrorCode::MissingTour);
          double len = 0.0;
          for (std::size_t pos = g.first; pos < g.last; ++pos) len += tour->edge(ps, pos);
          return 2.0 * len;
        }
      },
      geom);
}

/// Sum of all cycle lengths, each traversal counted with multiplicity.
inline double total_length(const DecompTree& t, const PointSet& ps, const Tour* tour = nullptr) {
  double sum = 0.0;
  for (NodeId id : t.postorder()) {
    if (!t.is_leaf(id)) sum += cycle_length(t.cycle(id).geom, ps, tour);
  }
  return sum;
}

struct Violation {
  std::string kind;
  NodeId node = 0;
  std::optional<NodeId> other;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& kind) const {
    for (const auto& v : violations) {
      if (v.kind == kind) return true;
    }
    return false;
  }
  void add(std::string kind, NodeId node, std::optional<NodeId> other, std::string detail) {
    violations.push_back({std::move(kind), node, other, std::move(detail)});
  }
};

namespace detail {

inline void require_class(const DecompTree& t, CycleClass want) {
  for (NodeId id : t.postorder()) {
    if (!t.is_leaf(id) && cycle_class(t.cycle(id).geom) != want) {
      throw Error(ErrorCode::CycleClassMismatch, "node " + std::to_string(id));
    }
  }
}

inline void check_leaf_permutation(const DecompTree& t, std::size_t n, ValidationReport& report) {
  std::vector<int> seen(n, 0);
  for (NodeId id : t.postorder()) {
    if (!t.is_leaf(id)) continue;
    std::size_t p = t.leaf(id).point;
    if (p >= n) {
      report.add("V1", id, std::nullopt, "leaf point " + std::to_string(p) + " out of range");
    } else if (++seen[p] > 1) {
      report.add("V1", id, std::nullopt, "leaf point " + std::to_string(p) + " repeated");
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (seen[p] == 0) report.add("V1", t.root(), std::nullopt, "point " + std::to_string(p) + " missing");
  }
}

// Shared by the interval and run validators: every node spans a contiguous
// block of a linear order, and each cycle's children split its block in two.
template <class SpanOf>
void check_contiguous_partition(const DecompTree& t, std::size_t lo, std::size_t hi, SpanOf span_of,
                                ValidationReport& report) {
  for (NodeId id : t.postorder()) {
    if (t.is_leaf(id)) continue;
    const Cycle& c = t.cycle(id);
    auto [a, b] = span_of(id);
    auto [la, lb] = span_of(c.left);
    auto [ra, rb] = span_of(c.right);
    if (a > b) {
      report.add("partition", id, std::nullopt, "empty span");
      continue;
    }
    if (la != a || rb != b || lb + 1 != ra || la > lb || ra > rb) {
      report.add("partition", id, std::nullopt,
                 "children [" + std::to_string(la) + "," + std::to_string(lb) + "] and [" + std::to_string(ra) +
                     "," + std::to_string(rb) + "] do not partition [" + std::to_string(a) + "," +
                     std::to_string(b) + "]");
    }
  }
  auto [a, b] = span_of(t.root());
  if (a != lo || b != hi) {
    report.add("root", t.root(), std::nullopt,
               "root spans [" + std::to_string(a) + "," + std::to_string(b) + "], expected [" +
                   std::to_string(lo) + "," + std::to_string(hi) + "]");
  }
}

}  // namespace detail

/// Checks a rank-interval tree: leaves form a permutation of the points and
/// every cycle [i,j] has children [i,k] and [k+1,j]. A leaf spans its own x-rank.
inline ValidationReport validate_interval_tree(const DecompTree& t, const PointSet& ps) {
  ValidationReport report;
  if (t.empty()) {
    report.add("V1", 0, std::nullopt, "empty tree");
    return report;
  }
  detail::require_class(t, CycleClass::Interval);
  const std::size_t n = ps.size();
  detail::check_leaf_permutation(t, n, report);
  auto span_of = [&](NodeId id) -> std::pair<std::size_t, std::size_t> {
    if (t.is_leaf(id)) {
      std::size_t p = t.leaf(id).point;
      std::size_t r = p < n ? ps.x_pos(p) + 1 : 0;
      return {r, r};
    }
    const auto& g = std::get<IntervalCycle>(t.cycle(id).geom);
    return {g.first, g.last};
  };
  detail::check_contiguous_partition(t, 1, n, span_of, report);
  return report;
}

/// Same partition check in tour-position space; the root must be [0, n-1].
inline ValidationReport validate_run_tree(const DecompTree& t, const Tour& tour) {
  ValidationReport report;
  if (t.empty()) {
    report.add("V1", 0, std::nullopt, "empty tree");
    return report;
  }
  detail::require_class(t, CycleClass::Run);
  const std::size_t n = tour.order.size();
  detail::check_leaf_permutation(t, n, report);
  std::vector<std::size_t> pos_of(n, n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (tour.order[pos] < n) pos_of[tour.order[pos]] = pos;
  }
  auto span_of = [&](NodeId id) -> std::pair<std::size_t, std::size_t> {
    if (t.is_leaf(id)) {
      std::size_t p = t.leaf(id).point;
      std::size_t pos = p < n ? pos_of[p] : n;
      return {pos, pos};
    }
    const auto& g = std::get<RunCycle>(t.cycle(id).geom);
    return {g.first, g.last};
  };
  detail::check_contiguous_partition(t, 0, n - 1, span_of, report);
  return report;
}

struct BoxCheck {
  /// Additionally require every rectangle to be the tight bbox of its descendants.
  bool require_tight = false;
};

/// Checks a rectangle tree for non-crossing validity:
///   V1 leaves are a permutation of 0..n-1;
///   V2 each rectangle contains (closed) its descendant points and child rectangles;
///   V3 sibling rectangles have disjoint open interiors;
///   V4 no point lies in the open interior of a rectangle that is not its ancestor.
inline ValidationReport validate_box_tree(const DecompTree& t, const PointSet& ps, BoxCheck opts = {}) {
  ValidationReport report;
  if (t.empty()) {
    report.add("V1", 0, std::nullopt, "empty tree");
    return report;
  }
  detail::require_class(t, CycleClass::Rect);
  const std::size_t n = ps.size();
  detail::check_leaf_permutation(t, n, report);
  if (!report.ok()) return report;

  const auto order = t.postorder();
  std::vector<std::vector<std::size_t>> below(t.node_count());
  auto rect_of = [&](NodeId id) -> std::optional<Rect> {
    if (t.is_leaf(id)) return std::nullopt;
    return std::get<RectCycle>(t.cycle(id).geom).rect;
  };

  for (NodeId id : order) {
    if (t.is_leaf(id)) {
      below[id] = {t.leaf(id).point};
      continue;
    }
    const Cycle& c = t.cycle(id);
    const Rect r = *rect_of(id);
    below[id] = below[c.left];
    below[id].insert(below[id].end(), below[c.right].begin(), below[c.right].end());

    for (std::size_t p : below[id]) {
      if (!r.contains(ps[p])) {
        report.add("V2", id, std::nullopt, "point " + std::to_string(p) + " outside its enclosing rectangle");
      }
    }
    for (NodeId child : {c.left, c.right}) {
      if (auto cr = rect_of(child); cr && !r.contains(*cr)) {
        report.add("V2", id, child, "child rectangle not contained in parent");
      }
    }
    auto lr = rect_of(c.left);
    auto rr = rect_of(c.right);
    if (lr && rr && lr->interiors_overlap(*rr)) {
      report.add("V3", c.left, c.right, "sibling rectangles overlap in their interiors");
    }
    if (opts.require_tight && !(bounding_rect(ps, below[id]) == r)) {
      report.add("tight", id, std::nullopt, "rectangle is not the bounding box of its points");
    }
  }

  for (NodeId id : order) {
    if (t.is_leaf(id)) continue;
    const Rect r = *rect_of(id);
    std::vector<char> inside(n, 0);
    for (std::size_t p : below[id]) inside[p] = 1;
    for (std::size_t p = 0; p < n; ++p) {
      if (!inside[p] && r.interior_contains(ps[p])) {
        report.add("V4", id, std::nullopt, "point " + std::to_string(p) + " inside a non-ancestor rectangle");
      }
    }
  }
  return report;
}

inline std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace pants
