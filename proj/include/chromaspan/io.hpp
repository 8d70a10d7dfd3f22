#pragma once

// CSV ingestion, index files, JSON answer records and SVG rendering.

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "chromaspan/answer.hpp"
#include "chromaspan/circles.hpp"
#include "chromaspan/envelope.hpp"
#include "chromaspan/geometry.hpp"
#include "chromaspan/intervals.hpp"
#include "chromaspan/rectangles.hpp"
#include "chromaspan/squares.hpp"
#include "chromaspan/triangles.hpp"

namespace chromaspan {

// ---------------------------------------------------------------------------
// CSV

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NonIntegerColor : public ParseError {
 public:
  explicit NonIntegerColor(std::size_t line) : ParseError(line, "color is not a non-negative integer") {}
};

class NaNCoordinate : public ParseError {
 public:
  explicit NaNCoordinate(std::size_t line) : ParseError(line, "coordinate is not finite") {}
};

struct Dataset {
  int dimension = 2;  // 1: rows are x,color and y is 0
  PointSet points;
  int k = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t at = 0;
  while (true) {
    const std::size_t c = s.find(',', at);
    out.push_back(trim(s.substr(at, c - at)));
    if (c == std::string_view::npos) break;
    at = c + 1;
  }
  return out;
}

inline std::optional<double> number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Rows `x,y,color` or `x,color`; an optional all-text header; '#' starts a comment.
inline Dataset parse_csv(std::istream& in) {
  Dataset ds;
  ds.dimension = 0;
  std::string raw;
  std::size_t line = 0;
  bool seen_row = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (line == 1 && s.starts_with("\xEF\xBB\xBF")) s.remove_prefix(3);
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;
    const auto fields = detail::split(s);
    if (!seen_row && std::none_of(fields.begin(), fields.end(), [](auto f) { return detail::number(f).has_value(); })) {
      seen_row = true;  // header
      continue;
    }
    seen_row = true;
    if (fields.size() != 2 && fields.size() != 3) throw ParseError(line, "expected 2 or 3 fields");
    const int dim = static_cast<int>(fields.size()) - 1;
    if (ds.dimension == 0) ds.dimension = dim;
    if (dim != ds.dimension) throw ParseError(line, "field count differs from earlier rows");
    ColoredPoint p;
    for (int i = 0; i < dim; ++i) {
      const auto v = detail::number(fields[static_cast<std::size_t>(i)]);
      if (!v) throw ParseError(line, "bad coordinate '" + std::string(fields[static_cast<std::size_t>(i)]) + "'");
      if (!std::isfinite(*v)) throw NaNCoordinate(line);
      (i == 0 ? p.x : p.y) = *v;
    }
    const auto c = detail::number(fields.back());
    if (!c) throw ParseError(line, "bad color '" + std::string(fields.back()) + "'");
    if (*c < 0 || *c != std::floor(*c) || *c > 1e6) throw NonIntegerColor(line);
    p.color = static_cast<int>(*c);
    ds.points.push_back(p);
  }
  if (ds.dimension == 0) ds.dimension = 2;
  ds.k = color_count(ds.points);
  return ds;
}

inline Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_csv(in);
}

/// FNV-1a over dimension and the exact bits of every row, as 16 hex digits.
inline std::string dataset_hash(const Dataset& ds) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(ds.dimension));
  for (const auto& p : ds.points) {
    mix(std::bit_cast<std::uint64_t>(p.x));
    mix(std::bit_cast<std::uint64_t>(p.y));
    mix(static_cast<std::uint64_t>(p.color));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Index files

inline constexpr int kIndexFormatVersion = 1;

/// The objects built over one dataset. Candidate sets are persisted; search
/// structures are rebuilt from them on load.
struct IndexBundle {
  Dataset dataset;
  std::string hash;
  double epsilon = 0.1;
  std::optional<ScsiIndex> scsi;
  std::optional<ScssIndex> scss;
  std::optional<ScsrIndex> scsr;
  std::optional<ScstIndex> scst;
  std::optional<ScscType1Index> scsc_type1;
  std::optional<OrientationFamily> scsc_orientations;

  bool has(ObjectKind k) const {
    switch (k) {
      case ObjectKind::scsi: return scsi.has_value();
      case ObjectKind::scss: return scss.has_value();
      case ObjectKind::scsr: return scsr.has_value();
      case ObjectKind::scst: return scst.has_value();
      case ObjectKind::scsc: return scsc_type1.has_value();
    }
    return false;
  }

  /// Throws std::invalid_argument when the object needs 2D input.
  void build(ObjectKind k) {
    if (k != ObjectKind::scsi && dataset.dimension == 1)
      throw std::invalid_argument(std::string(to_string(k)) + " needs 2D input");
    const auto& pts = dataset.points;
    switch (k) {
      case ObjectKind::scsi: scsi.emplace(pts); break;
      case ObjectKind::scss: scss.emplace(pts); break;
      case ObjectKind::scsr: scsr.emplace(pts); break;
      case ObjectKind::scst: scst.emplace(pts); break;
      case ObjectKind::scsc:
        scsc_orientations.emplace(pts, epsilon);  // checks the cap before the costly part
        scsc_type1.emplace(pts);
        break;
    }
  }

  QueryAnswer query(ObjectKind k, Point q) const {
    if (!has(k)) throw std::invalid_argument(std::string(to_string(k)) + " is not in the index");
    switch (k) {
      case ObjectKind::scsi: return scsi->query(q.x);
      case ObjectKind::scss: return scss->query(q);
      case ObjectKind::scsr: return scsr->query(q);
      case ObjectKind::scst: return scst->query(q);
      case ObjectKind::scsc: {
        std::optional<QueryAnswer> best = scsc_type1->query(q);
        keep_smaller(best, scsc_orientations->query_type2_approx(q));
        return *best;
      }
    }
    throw std::logic_error("unknown object");
  }
};

inline nlohmann::json index_to_json(const IndexBundle& b) {
  using nlohmann::json;
  json j;
  j["format_version"] = kIndexFormatVersion;
  j["dataset_hash"] = b.hash;
  j["dimension"] = b.dataset.dimension;
  j["epsilon"] = b.epsilon;
  json pts = json::array();
  for (const auto& p : b.dataset.points) pts.push_back({p.x, p.y, p.color});
  j["points"] = pts;
  json objs = json::object();
  if (b.scsi) {
    json a = json::array();
    for (const auto& iv : b.scsi->minimal_intervals()) a.push_back({iv.left, iv.right});
    objs["scsi"] = {{"intervals", a}};
  }
  if (b.scss) {
    json a = json::array();
    for (const auto& s : b.scss->minimal_squares()) a.push_back({s.l, s.b, s.side});
    objs["scss"] = {{"squares", a}};
  }
  if (b.scsr) {
    json a = json::array();
    for (const auto& r : b.scsr->minimal_rects()) a.push_back({r.l, r.r, r.b, r.t});
    objs["scsr"] = {{"rects", a}};
  }
  if (b.scst) {
    json a = json::array();
    for (const auto& t : b.scst->minimal_triangles()) a.push_back({t.base, t.left, t.right});
    objs["scst"] = {{"triangles", a}};
  }
  if (b.scsc_type1) {
    json a = json::array();
    for (const auto& c : b.scsc_type1->circles())
      a.push_back({{"center", {c.circle.center.x, c.circle.center.y}}, {"radius", c.circle.radius},
                   {"defining", c.defining}});
    objs["scsc"] = {{"circles", a}, {"orientations", b.scsc_orientations->angles().size()}};
  }
  j["objects"] = objs;
  return j;
}

inline IndexBundle index_from_json(const nlohmann::json& j) {
  if (j.value("format_version", 0) != kIndexFormatVersion) throw std::runtime_error("unsupported index format");
  IndexBundle b;
  b.dataset.dimension = j.at("dimension").get<int>();
  for (const auto& p : j.at("points"))
    b.dataset.points.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<int>()});
  b.dataset.k = color_count(b.dataset.points);
  b.epsilon = j.at("epsilon").get<double>();
  b.hash = j.at("dataset_hash").get<std::string>();
  if (b.hash != dataset_hash(b.dataset)) throw std::runtime_error("index file corrupted: dataset hash mismatch");
  const auto& objs = j.at("objects");
  const auto& pts = b.dataset.points;
  if (objs.contains("scsi")) b.scsi.emplace(pts);  // O(n log n); the stored list is informational
  if (objs.contains("scss")) {
    std::vector<Square> v;
    for (const auto& s : objs["scss"].at("squares")) v.push_back({s.at(0), s.at(1), s.at(2)});
    b.scss.emplace(std::move(v));
  }
  if (objs.contains("scsr")) {
    std::vector<Rect> v;
    for (const auto& r : objs["scsr"].at("rects")) v.push_back({r.at(0), r.at(1), r.at(2), r.at(3)});
    b.scsr.emplace(std::move(v));
  }
  if (objs.contains("scst")) {
    std::vector<FrameTriangle> v;
    for (const auto& t : objs["scst"].at("triangles")) v.push_back({t.at(0), t.at(1), t.at(2)});
    b.scst.emplace(std::move(v));
  }
  if (objs.contains("scsc")) {
    std::vector<MinimalCircle> v;
    for (const auto& c : objs["scsc"].at("circles"))
      v.push_back({{{c.at("center").at(0), c.at("center").at(1)}, c.at("radius")},
                   c.at("defining").get<std::vector<std::size_t>>()});
    b.scsc_type1.emplace(std::move(v));
    b.scsc_orientations.emplace(pts, b.epsilon);
  }
  return b;
}

inline void save_index(const IndexBundle& b, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << index_to_json(b).dump(1) << '\n';
}

inline IndexBundle load_index(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return index_from_json(nlohmann::json::parse(in));
}

// ---------------------------------------------------------------------------
// Answer records

/// Rounds to 12 significant digits so the JSON number prints at that precision.
inline double sig12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline nlohmann::json geometry_json(const Shape& s) {
  return std::visit(
      [](const auto& g) -> nlohmann::json {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Interval>) {
          return {{"type", "interval"}, {"left", sig12(g.left)}, {"right", sig12(g.right)}};
        } else if constexpr (std::is_same_v<G, Square>) {
          return {{"type", "square"}, {"left", sig12(g.l)}, {"bottom", sig12(g.b)}, {"side", sig12(g.side)}};
        } else if constexpr (std::is_same_v<G, Rect>) {
          return {{"type", "rect"}, {"left", sig12(g.l)}, {"right", sig12(g.r)}, {"bottom", sig12(g.b)},
                  {"top", sig12(g.t)}};
        } else if constexpr (std::is_same_v<G, FrameTriangle>) {
          auto pt = [](Point p) { return nlohmann::json::array({sig12(p.x), sig12(p.y)}); };
          return {{"type", "triangle"},
                  {"vertices", {pt(g.bottom_left()), pt(g.bottom_right()), pt(g.apex())}},
                  {"side", sig12(g.side())}};
        } else {
          return {{"type", "circle"}, {"center", {sig12(g.center.x), sig12(g.center.y)}}, {"radius", sig12(g.radius)}};
        }
      },
      s);
}

inline nlohmann::json answer_json(const QueryAnswer& a, Point q, int dimension, long long elapsed_ns) {
  nlohmann::json j;
  j["schema"] = 1;
  j["object"] = std::string(to_string(a.object));
  j["query"] = dimension == 1 ? nlohmann::json::array({sig12(q.x)}) : nlohmann::json::array({sig12(q.x), sig12(q.y)});
  j["size"] = sig12(a.size);
  j["geometry"] = geometry_json(a.shape);
  j["provenance"] = std::string(to_string(a.provenance));
  j["family"] = a.family;
  j["elapsed_ns"] = elapsed_ns;
  return j;
}

inline std::string answer_line(const QueryAnswer& a) {
  std::ostringstream os;
  os << to_string(a.object) << " size=" << std::setprecision(12) << a.size << " provenance=" << to_string(a.provenance)
     << " family=" << a.family << " geometry=" << geometry_json(a.shape).dump();
  return os.str();
}

// ---------------------------------------------------------------------------
// SVG

inline std::string render_svg(const Dataset& ds, std::optional<Point> q, const std::optional<QueryAnswer>& answer) {
  static constexpr const char* palette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
                                            "#46f0f0", "#f032e6", "#bcbd22", "#008080", "#9a6324"};
  double lo_x = kInf, lo_y = kInf, hi_x = -kInf, hi_y = -kInf;
  auto grow = [&](Point p) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  };
  for (const auto& p : ds.points) grow(p.pos());
  if (q) grow(*q);
  if (answer)
    std::visit(
        [&](const auto& g) {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, Interval>) {
            grow({g.left, 0});
            grow({g.right, 0});
          } else if constexpr (std::is_same_v<G, Square>) {
            grow({g.l, g.b});
            grow({g.r(), g.t()});
          } else if constexpr (std::is_same_v<G, Rect>) {
            grow({g.l, g.b});
            grow({g.r, g.t});
          } else if constexpr (std::is_same_v<G, FrameTriangle>) {
            grow(g.bottom_left());
            grow(g.bottom_right());
            grow(g.apex());
          } else {
            grow(g.center - Point{g.radius, g.radius});
            grow(g.center + Point{g.radius, g.radius});
          }
        },
        answer->shape);
  if (lo_x == kInf) lo_x = lo_y = 0, hi_x = hi_y = 1;

  const double size = 1000.0, margin = 0.05 * size;
  const double extent = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double scale = (size - 2 * margin) / extent;
  const double off_x = margin + ((size - 2 * margin) - (hi_x - lo_x) * scale) / 2;
  const double off_y = margin + ((size - 2 * margin) - (hi_y - lo_y) * scale) / 2;
  auto X = [&](double x) { return off_x + (x - lo_x) * scale; };
  auto Y = [&](double y) {
    if (ds.dimension == 1) return size / 2;
    return size - (off_y + (y - lo_y) * scale);
  };

  std::ostringstream os;
  os << std::setprecision(6) << std::fixed;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  os << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  if (ds.dimension == 1)
    os << "<line x1=\"" << X(lo_x) << "\" y1=\"500\" x2=\"" << X(hi_x) << "\" y2=\"500\" stroke=\"#888\"/>\n";
  if (answer) {
    const char* style = " fill=\"none\" stroke=\"black\" stroke-width=\"2\"";
    std::visit(
        [&](const auto& g) {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, Interval>) {
            os << "<line class=\"answer\" x1=\"" << X(g.left) << "\" y1=\"500\" x2=\"" << X(g.right)
               << "\" y2=\"500\" stroke=\"black\" stroke-width=\"6\"/>\n";
          } else if constexpr (std::is_same_v<G, Square> || std::is_same_v<G, Rect>) {
            Rect r;
            if constexpr (std::is_same_v<G, Square>) r = g.rect(); else r = g;
            os << "<rect class=\"answer\" x=\"" << X(r.l) << "\" y=\"" << Y(r.t) << "\" width=\"" << r.width() * scale
               << "\" height=\"" << r.height() * scale << "\"" << style << "/>\n";
          } else if constexpr (std::is_same_v<G, FrameTriangle>) {
            os << "<polygon class=\"answer\" points=\"";
            for (Point p : {g.bottom_left(), g.bottom_right(), g.apex()}) os << X(p.x) << ',' << Y(p.y) << ' ';
            os << "\"" << style << "/>\n";
          } else {
            os << "<circle class=\"answer\" cx=\"" << X(g.center.x) << "\" cy=\"" << Y(g.center.y) << "\" r=\""
               << g.radius * scale << "\"" << style << "/>\n";
          }
        },
        answer->shape);
  }
  for (const auto& p : ds.points)
    os << "<circle class=\"point\" cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"5\" fill=\""
       << palette[static_cast<std::size_t>(p.color) % std::size(palette)] << "\"/>\n";
  if (q)
    os << "<path class=\"query\" d=\"M" << X(q->x) - 8 << ',' << Y(q->y) - 8 << " l16,16 m0,-16 l-16,16\""
       << " stroke=\"black\" stroke-width=\"2\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace chromaspan
