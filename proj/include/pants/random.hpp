#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pants/error.hpp"
#include "pants/geom.hpp"

namespace pants {

/// std::mt19937_64 output is fully specified by the standard; bounded values
/// are drawn by rejection on raw 64-bit outputs (the standard distributions
/// are implementation-defined and would break cross-platform reproducibility).
class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return lo + static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
  }

 private:
  std::mt19937_64 engine_;
};

enum class Distribution { Uniform, Collinear, Grid };

inline Distribution parse_distribution(const std::string& s) {
  if (s == "uniform") return Distribution::Uniform;
  if (s == "collinear") return Distribution::Collinear;
  if (s == "grid") return Distribution::Grid;
  throw Error(ErrorCode::Parse, "unknown distribution '" + s + "'");
}

/// uniform:   distinct integer points of [0, 10n]^2;
/// collinear: sorted distinct integers of [0, 10n] on y = 0;
/// grid:      first n points of the ceil(sqrt n)^2 lattice, row by row.
inline std::vector<Point> generate_instance(std::size_t n, Distribution dist, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::EmptyInstance);
  std::vector<Point> pts;
  pts.reserve(n);
  const auto extent = static_cast<std::int64_t>(10 * n);
  InstanceRng rng(seed);
  switch (dist) {
    case Distribution::Uniform: {
      std::set<std::pair<std::int64_t, std::int64_t>> seen;
      while (pts.size() < n) {
        std::int64_t x = rng.uniform(0, extent);
        std::int64_t y = rng.uniform(0, extent);
        if (seen.insert({x, y}).second) pts.push_back({static_cast<double>(x), static_cast<double>(y)});
      }
      break;
    }
    case Distribution::Collinear: {
      std::set<std::int64_t> xs;
      while (xs.size() < n) xs.insert(rng.uniform(0, extent));
      for (std::int64_t x : xs) pts.push_back({static_cast<double>(x), 0.0});
      break;
    }
    case Distribution::Grid: {
      auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
      while (side * side < n) ++side;
      for (std::size_t k = 0; k < n; ++k) {
        pts.push_back({static_cast<double>(k % side), static_cast<double>(k / side)});
      }
      break;
    }
  }
  return pts;
}

}  // namespace pants
