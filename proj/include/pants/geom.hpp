#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "pants/error.hpp"

namespace pants {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Closed axis-aligned rectangle. Zero width and/or height is allowed.
struct Rect {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;

  bool contains(const Point& p) const {
    return xmin <= p.x && p.x <= xmax && ymin <= p.y && p.y <= ymax;
  }
  bool contains(const Rect& r) const {
    return xmin <= r.xmin && r.xmax <= xmax && ymin <= r.ymin && r.ymax <= ymax;
  }
  bool interior_contains(const Point& p) const {
    return xmin < p.x && p.x < xmax && ymin < p.y && p.y < ymax;
  }
  /// True iff the open interiors intersect. Degenerate rectangles have empty interior.
  bool interiors_overlap(const Rect& r) const {
    return std::max(xmin, r.xmin) < std::min(xmax, r.xmax) &&
           std::max(ymin, r.ymin) < std::min(ymax, r.ymax);
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

inline double rect_perimeter(const Rect& r) { return 2.0 * (r.xmax - r.xmin) + 2.0 * (r.ymax - r.ymin); }

inline double euclid_dist(const Point& p, const Point& q) { return std::hypot(p.x - q.x, p.y - q.y); }

/// The punctures. Immutable after construction; rank orders are 0-based
/// permutations (x_rank()[r] is the index of the point with x-rank r).
class PointSet {
 public:
  explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error(ErrorCode::EmptyInstance);
    exact_ = true;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto& p = points_[i];
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw Error(ErrorCode::InvalidCoordinate, "point " + std::to_string(i));
      }
      if (p.x != std::trunc(p.x) || p.y != std::trunc(p.y)) exact_ = false;
    }
    const std::size_t n = points_.size();
    x_rank_.resize(n);
    std::iota(x_rank_.begin(), x_rank_.end(), std::size_t{0});
    y_rank_ = x_rank_;
    std::sort(x_rank_.begin(), x_rank_.end(), [this](std::size_t a, std::size_t b) {
      const auto& p = points_[a];
      const auto& q = points_[b];
      if (p.x != q.x) return p.x < q.x;
      if (p.y != q.y) return p.y < q.y;
      return a < b;
    });
    std::sort(y_rank_.begin(), y_rank_.end(), [this](std::size_t a, std::size_t b) {
      const auto& p = points_[a];
      const auto& q = points_[b];
      if (p.y != q.y) return p.y < q.y;
      if (p.x != q.x) return p.x < q.x;
      return a < b;
    });
    x_pos_.resize(n);
    y_pos_.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      x_pos_[x_rank_[r]] = r;
      y_pos_[y_rank_[r]] = r;
    }
  }

  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  const std::vector<std::size_t>& x_rank() const { return x_rank_; }
  const std::vector<std::size_t>& y_rank() const { return y_rank_; }
  /// Inverse permutations: position of point i in the x / y order.
  std::size_t x_pos(std::size_t i) const { return x_pos_[i]; }
  std::size_t y_pos(std::size_t i) const { return y_pos_[i]; }

  /// True when every coordinate is an integer value; DP costs are then exact.
  bool exact_mode() const { return exact_; }

  bool all_on_horizontal_line() const {
    return std::all_of(points_.begin(), points_.end(),
                       [y = points_.front().y](const Point& p) { return p.y == y; });
  }

 private:
  std::vector<Point> points_;
  std::vector<std::size_t> x_rank_;
  std::vector<std::size_t> y_rank_;
  std::vector<std::size_t> x_pos_;
  std::vector<std::size_t> y_pos_;
  bool exact_ = true;
};

inline PointSet build_point_set(std::vector<Point> points) { return PointSet(std::move(points)); }

inline Rect bounding_rect(const PointSet& ps, std::span<const std::size_t> subset) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset);
  const Point& first = ps[subset.front()];
  Rect r{first.x, first.x, first.y, first.y};
  for (std::size_t i : subset.subspan(1)) {
    const Point& p = ps[i];
    r.xmin = std::min(r.xmin, p.x);
    r.xmax = std::max(r.xmax, p.x);
    r.ymin = std::min(r.ymin, p.y);
    r.ymax = std::max(r.ymax, p.y);
  }
  return r;
}

/// Relative comparison used for costs computed along different routes on
/// non-integer input.
inline bool nearly_equal(double a, double b, double rel = 1e-9) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace pants
