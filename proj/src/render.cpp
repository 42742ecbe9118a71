#include "tritile/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "tritile/analysis.hpp"

namespace tritile {

namespace {

const char* const kDefaultPalette[] = {"lightblue", "lightgreen", "pink", "lightyellow"};
const char* const kUniformColor = "lightgray";

// RGB definitions matching the journal figures; lightgray is predefined in
// pstricks and needs no definition there.
const std::map<std::string, std::string>& pstricks_rgb() {
  static const std::map<std::string, std::string> defs = {
      {"lightblue", "0.8 0.8 1"},
      {"lightgreen", "0.8 1 0.8"},
      {"pink", "1 0.8 0.8"},
      {"lightyellow", "1 1 0.8"},
  };
  return defs;
}

struct Coloring {
  std::vector<int> tile_class;  // per tile index
  int n_classes = 1;
  bool uniform = false;
  std::string warning;
};

Coloring assign_classes(const Tiling& t, ColorMode mode) {
  Coloring c;
  c.tile_class.assign(t.tiles.size(), 0);
  switch (mode) {
    case ColorMode::uniform:
      c.uniform = true;
      return c;
    case ColorMode::by_sign: {
      if (t.partial) {
        c.uniform = true;
        c.warning = "by_sign needs a complete tiling; rendered uniform";
        return c;
      }
      TwoColorReport tc = two_color(t);
      if (!tc.bipartite || !tc.all_reached) {
        c.uniform = true;
        c.warning = "two-coloring failed; rendered uniform";
        return c;
      }
      for (size_t i = 0; i < t.tiles.size(); ++i) c.tile_class[i] = tc.color[i] > 0 ? 0 : 1;
      c.n_classes = 2;
      return c;
    }
    case ColorMode::by_component:
    case ColorMode::by_region: {
      ComponentReport cr = components(t);
      std::map<long long, size_t> index_of;  // tile id -> tile index
      for (size_t i = 0; i < t.tiles.size(); ++i) index_of[t.tiles[i].id] = i;
      for (size_t ci = 0; ci < cr.components.size(); ++ci) {
        for (long long id : cr.components[ci].tiles)
          c.tile_class[index_of.at(id)] = static_cast<int>(ci);
      }
      c.n_classes = std::max<int>(1, static_cast<int>(cr.components.size()));
      return c;
    }
  }
  return c;
}

std::vector<std::string> resolve_palette(const RenderStyle& style, const Coloring& c) {
  std::vector<std::string> fills;
  fills.reserve(c.n_classes);
  for (int i = 0; i < c.n_classes; ++i) {
    if (!style.palette.empty()) {
      fills.push_back(style.palette[i % style.palette.size()]);
    } else if (c.uniform) {
      fills.push_back(kUniformColor);
    } else {
      fills.push_back(kDefaultPalette[i % 4]);
    }
  }
  return fills;
}

struct Bounds {
  double minx = 0, miny = 0, maxx = 0, maxy = 0;
};

Bounds bounds_of(const Tiling& t) {
  Bounds b;
  bool first = true;
  auto take = [&](const Point& p) {
    double x = p.x.value(), y = p.y.value();
    if (first) {
      b = {x, y, x, y};
      first = false;
      return;
    }
    b.minx = std::min(b.minx, x);
    b.miny = std::min(b.miny, y);
    b.maxx = std::max(b.maxx, x);
    b.maxy = std::max(b.maxy, y);
  };
  for (const Point* p : {&t.A, &t.B, &t.C}) take(*p);
  for (const PlacedTile& tile : t.tiles)
    for (const Point* p : {&tile.va, &tile.vb, &tile.vg}) take(*p);
  return b;
}

std::string fmt10(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string to_svg(const Tiling& t, const RenderStyle& style) {
  Coloring coloring = assign_classes(t, style.color_mode);
  std::vector<std::string> fills = resolve_palette(style, coloring);
  Bounds b = bounds_of(t);
  double margin = 2.0 * style.scale + style.stroke_width;
  double width = (b.maxx - b.minx) * style.scale + 2 * margin;
  double height = (b.maxy - b.miny) * style.scale + 2 * margin;
  auto px = [&](const Point& p) { return (p.x.value() - b.minx) * style.scale + margin; };
  auto py = [&](const Point& p) { return (b.maxy - p.y.value()) * style.scale + margin; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt10(width) + "\" height=\"" +
         fmt10(height) + "\" viewBox=\"0 0 " + fmt10(width) + " " + fmt10(height) + "\">\n";
  if (!coloring.warning.empty()) out += "<!-- " + coloring.warning + " -->\n";
  out += "<g stroke=\"black\" stroke-width=\"" + fmt10(style.stroke_width) +
         "\" stroke-linejoin=\"round\">\n";
  for (size_t i = 0; i < t.tiles.size(); ++i) {
    const PlacedTile& tile = t.tiles[i];
    out += "<polygon points=\"";
    bool head = true;
    for (const Point* p : {&tile.va, &tile.vb, &tile.vg}) {
      if (!head) out += " ";
      head = false;
      out += fmt10(px(*p)) + "," + fmt10(py(*p));
    }
    out += "\" fill=\"" + fills[coloring.tile_class[i]] + "\"/>\n";
  }
  out += "<path d=\"M" + fmt10(px(t.A)) + "," + fmt10(py(t.A)) + " L" + fmt10(px(t.C)) + "," +
         fmt10(py(t.C)) + " L" + fmt10(px(t.B)) + "," + fmt10(py(t.B)) +
         " Z\" fill=\"none\"/>\n";
  out += "</g>\n</svg>\n";
  return out;
}

std::string to_pstricks(const Tiling& t, const RenderStyle& style) {
  Coloring coloring = assign_classes(t, style.color_mode);
  std::vector<std::string> fills = resolve_palette(style, coloring);
  Bounds b = bounds_of(t);
  auto sx = [&](const Point& p) { return p.x.value() * style.scale; };
  auto sy = [&](const Point& p) { return p.y.value() * style.scale; };
  auto pair = [&](const Point& p) { return "(" + fmt2(sx(p)) + "," + fmt2(sy(p)) + ")"; };

  std::string out;
  out += "\\pspicture(" + fmt2(b.minx * style.scale - 1) + "," + fmt2(b.miny * style.scale - 1) +
         ")(" + fmt2(b.maxx * style.scale + 1) + "," + fmt2(b.maxy * style.scale + 1) + ")\n";
  out += "\\psset{unit=0.20cm}\n";
  if (!coloring.warning.empty()) out += "% " + coloring.warning + "\n";
  const auto& defs = pstricks_rgb();
  std::vector<std::string> defined;
  for (const std::string& f : fills) {
    auto it = defs.find(f);
    if (it == defs.end()) continue;
    if (std::find(defined.begin(), defined.end(), f) != defined.end()) continue;
    defined.push_back(f);
    out += "\\newrgbcolor{" + f + "}{" + it->second + "}\n";
  }
  out += "\\pspolygon" + pair(t.A) + pair(t.B) + pair(t.C) + "\n";
  for (size_t i = 0; i < t.tiles.size(); ++i) {
    const PlacedTile& tile = t.tiles[i];
    out += "\\pspolygon[fillcolor=" + fills[coloring.tile_class[i]] + ",fillstyle=solid]" +
           pair(tile.va) + pair(tile.vb) + pair(tile.vg) + "\n";
  }
  out += "\\endpspicture\n";
  return out;
}

}  // namespace tritile
