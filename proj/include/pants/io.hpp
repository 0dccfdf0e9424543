#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pants/geom.hpp"
#include "pants/model.hpp"

namespace pants {

// ---------------------------------------------------------------------------
// Instance files: one point per line, "x y" (or a bare "x" meaning y = 0).
// '#' starts a comment line; blank lines are skipped. A file must use one
// column count throughout.

inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_instance(const std::vector<Point>& pts) {
  std::string out;
  for (const auto& p : pts) out += format_number(p.x) + " " + format_number(p.y) + "\n";
  return out;
}

inline std::vector<Point> parse_instance(std::string_view text) {
  std::vector<Point> pts;
  std::optional<std::size_t> columns;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<double> values;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    };
    skip_ws();
    if (i == line.size() || line[i] == '#') continue;
    while (i < line.size()) {
      if (line[i] == '+') ++i;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
      if (ec != std::errc{} || !std::isfinite(v)) {
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected a finite number");
      }
      values.push_back(v);
      i = static_cast<std::size_t>(ptr - line.data());
      if (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": unexpected character");
      }
      skip_ws();
    }
    if (values.size() != 1 && values.size() != 2) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 'x y'");
    }
    if (columns && *columns != values.size()) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": mixed column counts");
    }
    columns = values.size();
    pts.push_back({values[0], values.size() == 2 ? values[1] : 0.0});
  }
  if (pts.empty()) throw Error(ErrorCode::EmptyInstance);
  return pts;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes via a sibling temp file and rename, so readers never see a partial file.
inline void write_text_file_atomic(const std::filesystem::path& path, std::string_view text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot rename to " + path.string() + ": " + ec.message());
}

inline std::vector<Point> read_instance(const std::filesystem::path& path) { return parse_instance(read_text_file(path)); }

// ---------------------------------------------------------------------------
// Result documents (JSON).

struct ResultStats {
  std::uint64_t states_evaluated = 0;
  std::uint64_t candidates_examined = 0;
  double wall_time_ms = 0.0;
  friend bool operator==(const ResultStats&, const ResultStats&) = default;
};

/// Extra fields written for mode "approx".
struct ApproxFields {
  double mst_length = 0.0;
  double tour_length = 0.0;
  double path_length = 0.0;
  std::size_t bound_factor = 0;
  std::vector<std::size_t> tour;
  friend bool operator==(const ApproxFields&, const ApproxFields&) = default;
};

struct ResultDocument {
  std::string mode;  // "collinear" | "box" | "approx"
  std::string algo;
  double cost = 0.0;
  std::size_t n = 0;
  DecompTree tree;
  ResultStats stats;
  std::optional<ApproxFields> approx;

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

inline ResultStats to_result_stats(const SolveStats& s) {
  return {s.states_evaluated, s.candidates_examined, s.wall_time.count()};
}

namespace detail {

inline nlohmann::json geom_to_json(const CycleGeom& g) {
  return std::visit(
      [](const auto& c) -> nlohmann::json {
        using G = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<G, IntervalCycle>) {
          return {{"type", "interval"}, {"i", c.first}, {"j", c.last}};
        } else if constexpr (std::is_same_v<G, RectCycle>) {
          return {{"type", "rect"},
                  {"xmin", c.rect.xmin},
                  {"xmax", c.rect.xmax},
                  {"ymin", c.rect.ymin},
                  {"ymax", c.rect.ymax}};
        } else {
          return {{"type", "run"}, {"a", c.first}, {"b", c.last}};
        }
      },
      g);
}

inline CycleGeom geom_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "interval") return IntervalCycle{j.at("i").get<std::size_t>(), j.at("j").get<std::size_t>()};
  if (type == "rect") {
    return RectCycle{Rect{j.at("xmin").get<double>(), j.at("xmax").get<double>(), j.at("ymin").get<double>(),
                          j.at("ymax").get<double>()}};
  }
  if (type == "run") return RunCycle{j.at("a").get<std::size_t>(), j.at("b").get<std::size_t>()};
  throw Error(ErrorCode::Parse, "unknown cycle type '" + type + "'");
}

inline nlohmann::json tree_to_json(const DecompTree& t, NodeId id) {
  if (t.is_leaf(id)) return {{"leaf", t.leaf(id).point}};
  const Cycle& c = t.cycle(id);
  nlohmann::json j;
  j["cycle"] = geom_to_json(c.geom);
  j["left"] = tree_to_json(t, c.left);
  j["right"] = tree_to_json(t, c.right);
  return j;
}

inline NodeId tree_from_json(const nlohmann::json& j, DecompTree& t) {
  if (j.contains("leaf")) return t.add_leaf(j.at("leaf").get<std::size_t>());
  NodeId l = tree_from_json(j.at("left"), t);
  NodeId r = tree_from_json(j.at("right"), t);
  return t.add_cycle(geom_from_json(j.at("cycle")), l, r);
}

}  // namespace detail

inline nlohmann::json to_json(const ResultDocument& doc) {
  nlohmann::json j;
  j["mode"] = doc.mode;
  j["algo"] = doc.algo;
  j["cost"] = doc.cost;
  j["n"] = doc.n;
  j["tree"] = doc.tree.empty() ? nlohmann::json(nullptr) : detail::tree_to_json(doc.tree, doc.tree.root());
  j["stats"] = {{"states_evaluated", doc.stats.states_evaluated},
                {"candidates_examined", doc.stats.candidates_examined},
                {"wall_time_ms", doc.stats.wall_time_ms}};
  if (doc.approx) {
    j["mst_length"] = doc.approx->mst_length;
    j["tour_length"] = doc.approx->tour_length;
    j["path_length"] = doc.approx->path_length;
    j["bound_factor"] = doc.approx->bound_factor;
    j["tour"] = doc.approx->tour;
  }
  return j;
}

inline ResultDocument result_from_json(const nlohmann::json& j) {
  try {
    ResultDocument doc;
    doc.mode = j.at("mode").get<std::string>();
    doc.algo = j.at("algo").get<std::string>();
    doc.cost = j.at("cost").get<double>();
    doc.n = j.at("n").get<std::size_t>();
    if (!j.at("tree").is_null()) {
      DecompTree t;
      t.set_root(detail::tree_from_json(j.at("tree"), t));
      doc.tree = std::move(t);
    }
    const auto& s = j.at("stats");
    doc.stats = {s.at("states_evaluated").get<std::uint64_t>(), s.at("candidates_examined").get<std::uint64_t>(),
                 s.at("wall_time_ms").get<double>()};
    if (doc.mode == "approx") {
      ApproxFields a;
      a.mst_length = j.at("mst_length").get<double>();
      a.tour_length = j.at("tour_length").get<double>();
      a.path_length = j.at("path_length").get<double>();
      a.bound_factor = j.at("bound_factor").get<std::size_t>();
      a.tour = j.at("tour").get<std::vector<std::size_t>>();
      doc.approx = std::move(a);
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

inline std::string serialize(const ResultDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline ResultDocument parse_result(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  return result_from_json(j);
}

}  // namespace pants
