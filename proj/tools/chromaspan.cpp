// chromaspan: build / query / oracle / bench / render.
//
// Exit codes: 0 ok, 1 internal error, 2 usage, 3 infeasible (a color has no point),
// 4 parse, 5 size cap exceeded.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chromaspan/chromaspan.hpp"
#include "chromaspan/io.hpp"
#include "chromaspan/oracle.hpp"

namespace cs = chromaspan;

namespace {

enum Exit { kOk = 0, kInternal = 1, kUsage = 2, kInfeasible = 3, kParse = 4, kCap = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

cs::ObjectKind object_from(const std::string& s) {
  const auto k = cs::parse_object_kind(s);
  if (!k) throw UsageError("unknown object '" + s + "' (expected scsi, scss, scsr, scst or scsc)");
  return *k;
}

std::vector<cs::ObjectKind> objects_from(const std::string& list, int dimension) {
  std::vector<cs::ObjectKind> out;
  if (list.empty() || list == "all") {
    if (dimension == 1) return {cs::ObjectKind::scsi};
    return {cs::ObjectKind::scss, cs::ObjectKind::scsr, cs::ObjectKind::scst, cs::ObjectKind::scsc};
  }
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(object_from(item));
  return out;
}

cs::Point point_from(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad --point '" + s + "'");
    }
  }
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw UsageError("bad --point '" + s + "' (expected x or x,y)");
}

std::vector<cs::Point> points_file(const std::string& path) {
  const cs::Dataset ds = [&] {
    // Reuse the CSV reader by appending a dummy color column.
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream patched;
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      std::string body = hash == std::string::npos ? line : line.substr(0, hash);
      if (body.find_first_not_of(" \t\r") == std::string::npos) {
        patched << '\n';
        continue;
      }
      const auto first = body.find_first_not_of(" \t");
      const bool numeric = std::string("+-.0123456789").find(body[first]) != std::string::npos;
      patched << body << (numeric ? ",0\n" : "\n");  // a text row is the header
    }
    return cs::parse_csv(patched);
  }();
  std::vector<cs::Point> out;
  for (const auto& p : ds.points) out.push_back(p.pos());
  return out;
}

// Provenance of an oracle result: boundary when q sits on the outline.
cs::Provenance boundary_provenance(const cs::Shape& s, cs::Point q) {
  const bool on = std::visit(
      [&](const auto& g) -> bool {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, cs::Interval>) {
          return cs::approx_eq(q.x, g.left) || cs::approx_eq(q.x, g.right);
        } else if constexpr (std::is_same_v<G, cs::Square> || std::is_same_v<G, cs::Rect>) {
          cs::Rect r;
          if constexpr (std::is_same_v<G, cs::Square>) r = g.rect(); else r = g;
          return cs::approx_eq(q.x, r.l) || cs::approx_eq(q.x, r.r) || cs::approx_eq(q.y, r.b) ||
                 cs::approx_eq(q.y, r.t);
        } else if constexpr (std::is_same_v<G, cs::FrameTriangle>) {
          return cs::approx_eq(q.y, g.base) || cs::approx_eq(cs::frame_beta(q), g.left) ||
                 cs::approx_eq(cs::frame_alpha(q), g.right);
        } else {
          return cs::approx_eq(cs::distance(q, g.center), g.radius);
        }
      },
      s);
  return on ? cs::Provenance::boundary_extension : cs::Provenance::contained;
}

cs::QueryAnswer oracle_answer(const cs::Dataset& ds, cs::ObjectKind k, cs::Point q) {
  namespace o = cs::oracle;
  const auto& pts = ds.points;
  cs::QueryAnswer a;
  a.object = k;
  a.family = "oracle";
  switch (k) {
    case cs::ObjectKind::scsi: {
      const auto r = o::oracle_scsi(pts, q.x);
      a.size = r.length;
      a.shape = r.interval;
      break;
    }
    case cs::ObjectKind::scss: {
      const auto r = o::oracle_scss(pts, q);
      a.size = r.side;
      a.shape = r.square;
      break;
    }
    case cs::ObjectKind::scsr: {
      const auto r = o::oracle_scsr(pts, q);
      a.size = r.size;
      a.shape = r.rect;
      break;
    }
    case cs::ObjectKind::scst: {
      const auto r = o::oracle_scst(pts, q);
      a.size = r.side;
      a.shape = r.triangle;
      break;
    }
    case cs::ObjectKind::scsc: {
      const auto r = o::oracle_scsc_exact(pts, q);
      a.size = r.radius;
      a.shape = r.circle;
      break;
    }
  }
  a.provenance = boundary_provenance(a.shape, q);
  return a;
}

void emit(const cs::QueryAnswer& a, cs::Point q, int dimension, long long ns, bool json) {
  if (json) {
    auto j = cs::answer_json(a, q, dimension, ns);
    if (a.object == cs::ObjectKind::scsr) j["perimeter"] = cs::sig12(2.0 * a.size);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << cs::answer_line(a);
    if (a.object == cs::ObjectKind::scsr) std::cout << " perimeter=" << std::setprecision(12) << 2.0 * a.size;
    std::cout << " elapsed_ns=" << ns << '\n';
  }
}

unsigned long long seed_from_env() {
  if (const char* s = std::getenv("CHROMASPAN_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240601ULL;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// ---------------------------------------------------------------------------

int run_build(const std::string& input, const std::string& objects, double epsilon, const std::string& out) {
  cs::IndexBundle b;
  b.dataset = cs::load_csv(input);
  b.hash = cs::dataset_hash(b.dataset);
  b.epsilon = epsilon;
  cs::require_all_colors(b.dataset.points);
  const auto kinds = objects_from(objects, b.dataset.dimension);

  // Reuse an existing index over the same data when it already holds everything asked for.
  if (std::filesystem::exists(out)) {
    try {
      const cs::IndexBundle old = cs::load_index(out);
      const bool same = old.hash == b.hash && old.epsilon == epsilon &&
                        std::all_of(kinds.begin(), kinds.end(), [&](auto k) { return old.has(k); });
      if (same) {
        std::cout << "index up to date: " << out << " (hash " << b.hash << ")\n";
        return kOk;
      }
    } catch (const std::exception&) {
      // unreadable or stale: rebuild
    }
  }
  for (auto k : kinds) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      b.build(k);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "built " << cs::to_string(k) << " in " << ms << " ms\n";
  }
  cs::save_index(b, out);
  std::cout << "wrote " << out << " (hash " << b.hash << ")\n";
  return kOk;
}

int run_query(const std::string& index, const std::string& object, const std::string& point,
              const std::string& pfile, bool json, bool use_oracle) {
  const cs::IndexBundle b = cs::load_index(index);
  const auto k = object_from(object);
  if (!use_oracle && !b.has(k)) throw UsageError(std::string(cs::to_string(k)) + " is not in the index");
  std::vector<cs::Point> queries;
  if (!point.empty()) queries.push_back(point_from(point));
  if (!pfile.empty())
    for (auto p : points_file(pfile)) queries.push_back(p);
  if (queries.empty()) throw UsageError("need --point or --points-file");
  for (const auto q : queries) {
    const auto t0 = std::chrono::steady_clock::now();
    const cs::QueryAnswer a = use_oracle ? oracle_answer(b.dataset, k, q) : b.query(k, q);
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
    if (!cs::verify_answer(a, b.dataset.points, q))
      throw std::logic_error("answer failed verification (does not contain q and every color)");
    emit(a, q, b.dataset.dimension, ns, json);
  }
  return kOk;
}

int run_render(const std::string& index, const std::string& object, const std::string& point, const std::string& svg) {
  const cs::IndexBundle b = cs::load_index(index);
  std::optional<cs::Point> q;
  std::optional<cs::QueryAnswer> a;
  if (!point.empty()) {
    q = point_from(point);
    if (!object.empty()) a = b.query(object_from(object), *q);
  }
  std::ofstream out(svg);
  if (!out) throw std::runtime_error("cannot write " + svg);
  out << cs::render_svg(b.dataset, q, a);
  std::cout << "wrote " << svg << '\n';
  return kOk;
}

// Query time is measured on the square containment path over synthetic candidate sets
// (scss) or end-to-end on random point sets (other objects).
int run_bench(const std::string& object, const std::string& sizes_arg, int trials) {
  const auto k = object_from(object);
  std::vector<std::size_t> sizes;
  {
    std::stringstream ss(sizes_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        sizes.push_back(static_cast<std::size_t>(std::stod(item)));
      } catch (const std::exception&) {
        throw UsageError("bad --sizes entry '" + item + "'");
      }
    }
  }
  if (sizes.empty() || trials <= 0) throw UsageError("need --sizes and a positive --trials");
  std::mt19937_64 rng(seed_from_env());
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  std::vector<double> medians;
  std::cout << "object size build_ms median_query_ns\n";
  for (std::size_t n : sizes) {
    std::vector<double> times;
    double build_ms = 0.0;
    auto time_ns = [](auto&& f) {
      const auto t0 = std::chrono::steady_clock::now();
      f();
      return std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0).count();
    };
    volatile double sink = 0.0;
    if (k == cs::ObjectKind::scss) {
      std::vector<cs::Square> squares;
      std::uniform_real_distribution<double> side(1.0, 50.0);
      for (std::size_t i = 0; i < n; ++i) squares.push_back({u(rng), u(rng), side(rng)});
      std::optional<cs::ScssIndex> idx;
      build_ms = time_ns([&] { idx.emplace(std::move(squares)); }) / 1e6;
      for (int t = 0; t < trials; ++t) {
        const cs::Point q{u(rng), u(rng)};
        times.push_back(time_ns([&] {
          if (auto a = idx->query_contained(q)) sink = sink + a->size;
        }));
      }
    } else {
      cs::PointSet pts;
      for (std::size_t i = 0; i < n; ++i) pts.push_back({u(rng), u(rng), static_cast<int>(i % 4)});
      cs::IndexBundle b;
      b.dataset.points = pts;
      b.dataset.dimension = k == cs::ObjectKind::scsi ? 1 : 2;
      if (b.dataset.dimension == 1)
        for (auto& p : b.dataset.points) p.y = 0.0;
      build_ms = time_ns([&] { b.build(k); }) / 1e6;
      for (int t = 0; t < trials; ++t) {
        const cs::Point q{u(rng), b.dataset.dimension == 1 ? 0.0 : u(rng)};
        times.push_back(time_ns([&] { sink = sink + b.query(k, q).size; }));
      }
    }
    medians.push_back(median(times));
    std::cout << cs::to_string(k) << ' ' << n << ' ' << build_ms << ' ' << medians.back() << '\n';
  }
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    const double growth = std::log(std::max(medians[i], 1.0) / std::max(medians[i - 1], 1.0)) /
                          std::log(static_cast<double>(sizes[i]) / static_cast<double>(sizes[i - 1]));
    if (growth > 0.5)
      std::cout << "warning: query time grew as N^" << growth << " between " << sizes[i - 1] << " and "
                << sizes[i] << " (expected sub-sqrt)\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localized smallest color-spanning objects"};
  app.require_subcommand(1);

  std::string input, objects, out = "index.json", index, object, point, pfile, sizes = "1000,10000", svg = "out.svg";
  double epsilon = 0.1;
  int trials = 200;
  bool json = false;

  auto* build = app.add_subcommand("build", "Build an index file from a CSV dataset");
  build->add_option("--input", input, "CSV with rows x,y,color or x,color")->required();
  build->add_option("--objects", objects, "Comma list of scsi,scss,scsr,scst,scsc (default: all for the dimension)");
  build->add_option("--epsilon", epsilon, "Circle approximation factor, in (0, 1]")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            double v = 0.0;
            try {
              v = std::stod(s);
            } catch (const std::exception&) {
              return "epsilon must be a number";
            }
            return v > 0.0 && v <= 1.0 ? "" : "epsilon must lie in (0, 1]";
          },
          "in (0, 1]"));
  build->add_option("--out", out, "Index file to write");

  auto add_query_flags = [&](CLI::App* c) {
    c->add_option("--index", index, "Index file")->required();
    c->add_option("--object", object, "scsi, scss, scsr, scst or scsc")->required();
    c->add_option("--point", point, "Query point x or x,y");
    c->add_option("--points-file", pfile, "File with one query point per row");
    c->add_flag("--json", json, "JSON output");
  };
  auto* query = app.add_subcommand("query", "Answer a query from an index");
  add_query_flags(query);
  auto* oracle = app.add_subcommand("oracle", "Answer a query by brute force");
  add_query_flags(oracle);

  auto* bench = app.add_subcommand("bench", "Time builds and queries across sizes");
  bench->add_option("--sizes", sizes, "Comma list of sizes");
  bench->add_option("--trials", trials, "Queries per size");
  bench->add_option("--object", object, "Object kind")->required();

  auto* render = app.add_subcommand("render", "Draw the dataset, query point and answer as SVG");
  render->add_option("--index", index, "Index file")->required();
  render->add_option("--point", point, "Query point x or x,y");
  render->add_option("--object", object, "Object kind to draw");
  render->add_option("--svg", svg, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*build) return run_build(input, objects, epsilon, out);
    if (*query) return run_query(index, object, point, pfile, json, false);
    if (*oracle) return run_query(index, object, point, pfile, json, true);
    if (*bench) return run_bench(object, sizes, trials);
    if (*render) return run_render(index, object, point, svg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const cs::MissingColor& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const cs::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const cs::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
