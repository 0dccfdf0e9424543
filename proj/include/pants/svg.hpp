#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pants/geom.hpp"
#include "pants/io.hpp"
#include "pants/model.hpp"

namespace pants {

struct RenderOptions {
  /// Outward offset per nesting level, in instance units. Defaults to 0.5% of
  /// the instance bounding-box diagonal.
  std::optional<double> inflate;
};

/// Draws punctures as dots and each cycle as a rectangle (box results), a
/// stadium around its rank interval (collinear results) or a rounded band
/// along its tour run (approx results). A cycle whose subtree holds L levels
/// of cycles is pushed outward by L * inflate so nested cycles stay visible.
inline std::string render_svg(const ResultDocument& doc, const PointSet& ps, const RenderOptions& opts = {}) {
  const auto& pts = ps.points();
  std::vector<std::size_t> all(ps.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const Rect box = bounding_rect(ps, all);
  const double diag = std::hypot(box.xmax - box.xmin, box.ymax - box.ymin);
  const double scale = diag > 0 ? diag : 1.0;
  const double step = opts.inflate.value_or(0.005 * scale);
  const double stroke = 0.002 * scale;
  const double dot = 0.008 * scale;

  const DecompTree& t = doc.tree;
  std::vector<std::size_t> level(t.node_count(), 0);
  std::size_t max_level = 0;
  const auto order = t.empty() ? std::vector<NodeId>{} : t.postorder();
  for (NodeId id : order) {
    if (t.is_leaf(id)) continue;
    const Cycle& c = t.cycle(id);
    level[id] = 1 + std::max(level[c.left], level[c.right]);
    max_level = std::max(max_level, level[id]);
  }

  const double margin = static_cast<double>(max_level) * step + 0.05 * scale;
  const double vx = box.xmin - margin;
  const double vy = box.ymin - margin;
  const double vw = box.xmax - box.xmin + 2 * margin;
  const double vh = box.ymax - box.ymin + 2 * margin;
  auto num = [](double v) { return format_number(v); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(vx) + " " + num(-(vy + vh)) + " " + num(vw) +
         " " + num(vh) + "\">\n";
  out += "<!-- mode=" + doc.mode + " algo=" + doc.algo + " cost=" + num(doc.cost) + " -->\n";
  out += "<!-- nested cycles are drawn offset outward by nesting level x " + num(step) +
         "; the offset is for display only and is not part of the cost -->\n";
  out += "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" + num(stroke) + "\">\n";

  const Tour* tour_ptr = nullptr;
  Tour tour;
  if (doc.approx) {
    tour.order = doc.approx->tour;
    tour_ptr = &tour;
  }

  for (NodeId id : order) {
    if (t.is_leaf(id)) continue;
    const double r = static_cast<double>(level[id]) * step;
    const std::string depth_attr = " data-level=\"" + std::to_string(level[id]) + "\"";
    std::visit(
        [&](const auto& g) {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, RectCycle>) {
            out += "<rect class=\"cycle\"" + depth_attr + " x=\"" + num(g.rect.xmin - r) + "\" y=\"" +
                   num(g.rect.ymin - r) + "\" width=\"" + num(g.rect.xmax - g.rect.xmin + 2 * r) + "\" height=\"" +
                   num(g.rect.ymax - g.rect.ymin + 2 * r) + "\" stroke=\"#1f5fa8\"/>\n";
          } else if constexpr (std::is_same_v<G, IntervalCycle>) {
            const Point& a = pts[ps.x_rank().at(g.first - 1)];
            const Point& b = pts[ps.x_rank().at(g.last - 1)];
            out += "<rect class=\"cycle\"" + depth_attr + " x=\"" + num(a.x - r) + "\" y=\"" + num(a.y - r) +
                   "\" width=\"" + num(b.x - a.x + 2 * r) + "\" height=\"" + num(2 * r) + "\" rx=\"" + num(r) +
                   "\" ry=\"" + num(r) + "\" stroke=\"#a83a1f\"/>\n";
          } else {
            if (!tour_ptr) throw Error(ErrorCode::MissingTour);
            std::string line;
            for (std::size_t pos = g.first; pos <= g.last; ++pos) {
              const Point& p = pts[tour_ptr->order.at(pos)];
              line += (pos == g.first ? "" : " ") + num(p.x) + "," + num(p.y);
            }
            out += "<polyline class=\"cycle\"" + depth_attr + " points=\"" + line +
                   "\" stroke=\"#2f8a3a\" stroke-opacity=\"0.35\" stroke-linecap=\"round\" stroke-linejoin=\"round\" "
                   "style=\"stroke-width:" +
                   num(std::max(2 * r, stroke)) + "\"/>\n";
          }
        },
        t.cycle(id).geom);
  }
  for (const auto& p : pts) {
    out += "<circle class=\"puncture\" cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"" + num(dot) +
           "\" fill=\"#000\" stroke=\"none\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace pants
