#include "rectsurf/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "rectsurf/error.hpp"

namespace rectsurf {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::kMalformedInput, what); }

Rational rational_at(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  malformed(where + " must be a rational string");
}

void check_version(const json& doc) {
  if (!doc.is_object()) malformed("document must be an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer()) malformed("missing version");
  if (doc["version"].get<int>() != kDocumentVersion) {
    malformed("unsupported version " + doc["version"].dump());
  }
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("not JSON: ") + e.what());
  }
}

}  // namespace

std::string surface_to_json(const Surface& s, int indent) {
  json doc;
  doc["version"] = kDocumentVersion;
  json rects = json::array();
  for (const RatRect& r : s.rects()) {
    rects.push_back({format_rational(r.x_lo()), format_rational(r.x_hi()), format_rational(r.y_lo()),
                     format_rational(r.y_hi())});
  }
  doc["rects"] = rects;
  json glue = json::array();
  for (auto [i, j] : s.glue()) glue.push_back({i, j});
  doc["glue"] = glue;
  doc["base"] = {{"rect", s.base().rect},
                 {"x", format_rational(s.base().point.x)},
                 {"y", format_rational(s.base().point.y)}};
  doc["open"] = s.is_open();
  return doc.dump(indent);
}

Surface surface_from_json(std::string_view text) {
  const json doc = parse(text);
  check_version(doc);
  if (!doc.contains("rects") || !doc["rects"].is_array()) malformed("missing rects");
  std::vector<RatRect> rects;
  for (const json& r : doc["rects"]) {
    if (!r.is_array() || r.size() != 4) malformed("each rect is [x_lo, x_hi, y_lo, y_hi]");
    const Rational x0 = rational_at(r[0], "rect"), x1 = rational_at(r[1], "rect");
    const Rational y0 = rational_at(r[2], "rect"), y1 = rational_at(r[3], "rect");
    if (!(x0 < x1 && y0 < y1)) malformed("rect sides must have positive length");
    rects.emplace_back(x0, x1, y0, y1);
  }
  std::vector<std::pair<int, int>> glue;
  if (doc.contains("glue")) {
    if (!doc["glue"].is_array()) malformed("glue must be a list of pairs");
    for (const json& g : doc["glue"]) {
      if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer()) {
        malformed("each glue entry is [i, j]");
      }
      glue.emplace_back(g[0].get<int>(), g[1].get<int>());
    }
  }
  if (!doc.contains("base") || !doc["base"].is_object()) malformed("missing base");
  const json& b = doc["base"];
  if (!b.contains("rect") || !b["rect"].is_number_integer() || !b.contains("x") || !b.contains("y")) {
    malformed("base is {rect, x, y}");
  }
  const Anchor base{b["rect"].get<int>(), {rational_at(b["x"], "base.x"), rational_at(b["y"], "base.y")}};
  bool open = false;
  if (doc.contains("open")) {
    if (!doc["open"].is_boolean()) malformed("open must be a boolean");
    open = doc["open"].get<bool>();
  }
  try {
    return Surface(std::move(rects), std::move(glue), base, open);
  } catch (const Error& e) {
    malformed(e.what());
  }
}

std::string loop_to_json(const RectiLoop& loop, int indent) {
  json doc;
  doc["version"] = kDocumentVersion;
  json vs = json::array();
  for (const RatPoint& p : loop.vertices()) vs.push_back({format_rational(p.x), format_rational(p.y)});
  doc["vertices"] = vs;
  return doc.dump(indent);
}

RectiLoop loop_from_json(std::string_view text) {
  const json doc = parse(text);
  check_version(doc);
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) malformed("missing vertices");
  std::vector<RatPoint> vs;
  for (const json& v : doc["vertices"]) {
    if (!v.is_array() || v.size() != 2) malformed("each vertex is [x, y]");
    vs.push_back({rational_at(v[0], "vertex"), rational_at(v[1], "vertex")});
  }
  return RectiLoop(std::move(vs));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string render_svg(const Surface& s) {
  const CellComplex& cx = s.complex();
  const Grid& g = cx.grid();
  const double scale = 100.0;
  auto X = [&](const Rational& v) { return v.get_d() * scale; };
  const double x0 = X(g.xs().front()), x1 = X(g.xs().back());
  const double y0 = X(g.ys().front()), y1 = X(g.ys().back());
  const double pad = 10.0;
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 - pad << " " << -y1 - pad << " "
      << (x1 - x0) + 2 * pad << " " << (y1 - y0) + 2 * pad << "\">\n";
  out << "<g transform=\"scale(1,-1)\">\n";
  for (int c : cx.classes_of_kind(CellKind::kFace)) {
    const CellKey& k = cx.key(c);
    const auto sheets = cx.classes_at(k).size();
    auto [lo, hi] = g.footprint(k);
    if (cx.classes_at(k).front() != c) continue;
    const double opacity = std::min(1.0, 0.25 * static_cast<double>(sheets));
    out << "<rect class=\"face\" x=\"" << X(lo.x) << "\" y=\"" << X(lo.y) << "\" width=\"" << X(hi.x) - X(lo.x)
        << "\" height=\"" << X(hi.y) - X(lo.y) << "\" fill=\"steelblue\" fill-opacity=\"" << opacity
        << "\" data-sheets=\"" << sheets << "\"/>\n";
  }
  for (const RectiLoop& loop : boundary_loops(s)) {
    out << "<polygon class=\"boundary\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < loop.size(); ++i) {
      out << (i ? " " : "") << X(loop.vertex(i).x) << "," << X(loop.vertex(i).y);
    }
    out << "\"/>\n";
  }
  const RatPoint b = base_dev(s);
  out << "<circle class=\"basepoint\" cx=\"" << X(b.x) << "\" cy=\"" << X(b.y) << "\" r=\"3\" fill=\"red\"/>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace rectsurf
