#pragma once

#include <chrono>
#include <limits>
#include <utility>
#include <vector>

#include "pants/geom.hpp"
#include "pants/model.hpp"

namespace pants {

struct MSTResult {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  double length = 0.0;
};

enum class MergeSchedule { BalancedRounds, GreedyMinPair };

/// Dense Prim over the complete Euclidean graph, O(n^2). Ties on the next
/// vertex go to the smaller index; ties on a vertex's parent go to the
/// smaller parent index, so the edge set is fully determined by the input.
inline MSTResult mst(const PointSet& ps) {
  const std::size_t n = ps.size();
  MSTResult out;
  if (n < 2) return out;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> key(n, inf);
  std::vector<std::size_t> parent(n, 0);
  std::vector<char> in_tree(n, 0);
  key[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (u == n || key[v] < key[u])) u = v;
    }
    in_tree[u] = 1;
    if (step > 0) {
      out.edges.emplace_back(std::min(u, parent[u]), std::max(u, parent[u]));
      out.length += key[u];
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      double d = euclid_dist(ps[u], ps[v]);
      if (d < key[v] || (d == key[v] && u < parent[v])) {
        key[v] = d;
        parent[v] = u;
      }
    }
  }
  return out;
}

/// Tree-doubling tour: preorder walk of the MST from point 0, children in
/// increasing index order. closed_length <= 2 * mst length.
inline Tour tsp_2approx(const PointSet& ps, const MSTResult& tree) {
  const std::size_t n = ps.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : tree.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    if (seen[u]) continue;
    seen[u] = 1;
    order.push_back(u);
    for (auto it = adj[u].rbegin(); it != adj[u].rend(); ++it) {
      if (!seen[*it]) stack.push_back(*it);
    }
  }
  return make_tour(ps, std::move(order));
}

inline Tour tsp_2approx(const PointSet& ps) { return tsp_2approx(ps, mst(ps)); }

namespace detail {

struct Run {
  std::size_t first;
  std::size_t last;
  NodeId node;
  std::size_t size() const { return last - first + 1; }
};

}  // namespace detail

/// Number of merged runs each path edge lies strictly inside; entry pos is the
/// edge between tour positions pos and pos + 1.
inline std::vector<std::size_t> run_depth_per_edge(const DecompTree& t) {
  std::size_t n = 0;
  for (NodeId id : t.postorder()) n += t.is_leaf(id) ? 1 : 0;
  std::vector<std::size_t> depth(n > 0 ? n - 1 : 0, 0);
  for (NodeId id : t.postorder()) {
    if (t.is_leaf(id)) continue;
    const auto& run = std::get<RunCycle>(t.cycle(id).geom);
    for (std::size_t pos = run.first; pos < run.last && pos < depth.size(); ++pos) ++depth[pos];
  }
  return depth;
}

/// Merges tour runs pairwise into a hierarchy of out-and-back cycles. Each
/// merge of runs [a,k] and [k+1,b] produces the cycle doubling path edges a..b.
/// The closing tour edge is never used.
inline SolveResult merge_tour(const PointSet& ps, const Tour& tour, MergeSchedule schedule) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = tour.order.size();
  if (n < 2) throw Error(ErrorCode::InstanceTooSmall, "need at least 2 points, got " + std::to_string(n));

  SolveResult result;
  DecompTree& tree = result.tree;
  std::vector<detail::Run> runs;
  runs.reserve(n);
  for (std::size_t pos = 0; pos < n; ++pos) runs.push_back({pos, pos, tree.add_leaf(tour.order[pos])});

  auto merge = [&](const detail::Run& a, const detail::Run& b) {
    ++result.stats.states_evaluated;
    return detail::Run{a.first, b.last, tree.add_cycle(RunCycle{a.first, b.last}, a.node, b.node)};
  };

  if (schedule == MergeSchedule::BalancedRounds) {
    while (runs.size() > 1) {
      std::vector<detail::Run> next;
      next.reserve((runs.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < runs.size(); i += 2) next.push_back(merge(runs[i], runs[i + 1]));
      if (runs.size() % 2 == 1) next.push_back(runs.back());
      runs = std::move(next);
    }
  } else {
    while (runs.size() > 1) {
      std::size_t best = 0;
      for (std::size_t i = 1; i + 1 < runs.size(); ++i) {
        ++result.stats.candidates_examined;
        if (runs[i].size() + runs[i + 1].size() < runs[best].size() + runs[best + 1].size()) best = i;
      }
      runs[best] = merge(runs[best], runs[best + 1]);
      runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    }
  }
  tree.set_root(runs.front().node);
  result.cost = total_length(tree, ps, &tour);

  const std::size_t bound = ceil_log2(n);
  for (std::size_t depth : run_depth_per_edge(tree)) {
    if (depth > bound) {
      throw Error(ErrorCode::MergeBoundExceeded,
                  "a path edge lies inside " + std::to_string(depth) + " runs, bound is " + std::to_string(bound));
    }
  }
  result.stats.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

struct ApproxResult {
  SolveResult solve;
  MSTResult mst;
  Tour tour;
  /// 2 * ceil(log2 n): cost <= bound_factor * tour.path_length.
  std::size_t bound_factor = 0;
};

/// MST -> preorder tour -> run merging.
inline ApproxResult approx_decompose(const PointSet& ps, MergeSchedule schedule = MergeSchedule::BalancedRounds) {
  if (ps.size() < 2) throw Error(ErrorCode::InstanceTooSmall, "need at least 2 points");
  ApproxResult out;
  out.mst = mst(ps);
  out.tour = tsp_2approx(ps, out.mst);
  out.solve = merge_tour(ps, out.tour, schedule);
  out.bound_factor = 2 * ceil_log2(ps.size());
  return out;
}

}  // namespace pants
