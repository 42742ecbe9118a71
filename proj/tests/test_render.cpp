#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "tritile/construct.hpp"
#include "tritile/render.hpp"

using namespace tritile;

namespace {

size_t count_of(const std::string& text, const std::string& needle) {
  size_t n = 0;
  for (size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

std::set<std::string> fill_values(const std::string& svg) {
  std::set<std::string> fills;
  const std::string key = "fill=\"";
  for (size_t at = svg.find(key); at != std::string::npos; at = svg.find(key, at + 1)) {
    size_t from = at + key.size();
    std::string v = svg.substr(from, svg.find('"', from) - from);
    if (v != "none") fills.insert(v);
  }
  return fills;
}

Tiling one_tile_partial() {
  TileSpec spec = derive_tile(2, 4);
  Shape shape(spec);
  Tiling t = make_frame(spec);
  t.partial = true;
  Point w{QFNum(spec.c_scaled), QFNum(0)};  // c edge flush on AC from A
  t.tiles.push_back(place_tile_left(shape, 0, t.A, 'a', w, 'b'));
  return t;
}

}  // namespace

TEST_CASE("SVG of the 28-tiling: one polygon per tile, three components") {
  Tiling t = triquadratic(2, 4);
  std::string svg = to_svg(t);
  CHECK(svg.rfind("<svg ", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count_of(svg, "<polygon ") == 28);
  CHECK(fill_values(svg).size() == 3);
  CHECK(count_of(svg, "<path ") == 1);  // frame outline

  // Byte-stable across runs.
  CHECK(to_svg(t) == svg);
}

TEST_CASE("SVG polygon coordinates shadow the exact vertices") {
  Tiling t = triquadratic(2, 4);
  RenderStyle style;
  style.scale = 2.5;
  std::string svg = to_svg(t, style);

  // First polygon, first coordinate pair = alpha vertex of tiles[0] under
  // the same transform the renderer declares: translate to the bounding box
  // corner, flip y, add the margin.
  double minx = t.A.x.value(), maxy = t.B.y.value();  // frame extremes for this tiling
  double margin = 2.0 * style.scale + style.stroke_width;
  double ex = (t.tiles[0].va.x.value() - minx) * style.scale + margin;
  double ey = (maxy - t.tiles[0].va.y.value()) * style.scale + margin;

  size_t at = svg.find("points=\"") + 8;
  double gx = std::stod(svg.substr(at));
  double gy = std::stod(svg.substr(svg.find(',', at) + 1));
  CHECK(std::fabs(gx - ex) < 1e-6);
  CHECK(std::fabs(gy - ey) < 1e-6);
}

TEST_CASE("SVG of an empty partial shows only the frame") {
  Tiling t = make_frame(derive_tile(2, 4));
  t.partial = true;
  std::string svg = to_svg(t);
  CHECK(count_of(svg, "<polygon ") == 0);
  CHECK(count_of(svg, "<path ") == 1);
}

TEST_CASE("by_sign splits a complete tiling into the signed counts") {
  Tiling t = triquadratic(2, 4);
  RenderStyle style;
  style.color_mode = ColorMode::by_sign;
  std::string svg = to_svg(t, style);
  size_t blue = count_of(svg, "fill=\"lightblue\"");
  size_t green = count_of(svg, "fill=\"lightgreen\"");
  CHECK(blue + green == 28);
  // black minus white equals M = 2.
  CHECK(blue == 15);
  CHECK(green == 13);
}

TEST_CASE("by_sign on a partial falls back to uniform with a warning") {
  Tiling t = one_tile_partial();
  RenderStyle style;
  style.color_mode = ColorMode::by_sign;
  std::string svg = to_svg(t, style);
  CHECK(svg.find("<!-- by_sign needs a complete tiling; rendered uniform -->") !=
        std::string::npos);
  std::set<std::string> fills = fill_values(svg);
  CHECK(fills == std::set<std::string>{"lightgray"});
}

TEST_CASE("by_region renders identically to by_component") {
  Tiling t = triquadratic(2, 4);
  RenderStyle region, component;
  region.color_mode = ColorMode::by_region;
  component.color_mode = ColorMode::by_component;
  CHECK(to_svg(t, region) == to_svg(t, component));
  CHECK(to_pstricks(t, region) == to_pstricks(t, component));
}

TEST_CASE("custom palettes cycle through the classes") {
  Tiling t = triquadratic(2, 4);
  RenderStyle style;
  style.palette = {"red", "blue"};
  std::string svg = to_svg(t, style);  // 3 components, 2 colors
  std::set<std::string> fills = fill_values(svg);
  CHECK(fills == std::set<std::string>{"red", "blue"});
}

TEST_CASE("pstricks fragment: frame polygon plus one filled polygon per tile") {
  Tiling t = one_tile_partial();
  std::string tex = to_pstricks(t);
  CHECK(tex.rfind("\\pspicture(", 0) == 0);
  CHECK(count_of(tex, "\\pspolygon") == 2);
  CHECK(count_of(tex, "\\pspolygon[fillcolor=lightblue,fillstyle=solid]") == 1);
  CHECK(tex.find("\\newrgbcolor{lightblue}{0.8 0.8 1}") != std::string::npos);
  CHECK(tex.find("\\endpspicture") != std::string::npos);
  // 2-decimal coordinates: the frame corner C = (48, 0).
  CHECK(tex.find("(48.00,0.00)") != std::string::npos);
  CHECK(to_pstricks(t) == tex);
}

TEST_CASE("pstricks uniform mode paints lightgray without a definition") {
  Tiling t = one_tile_partial();
  RenderStyle style;
  style.color_mode = ColorMode::uniform;
  std::string tex = to_pstricks(t, style);
  CHECK(count_of(tex, "fillcolor=lightgray") == 1);
  CHECK(tex.find("\\newrgbcolor") == std::string::npos);
}

TEST_CASE("pstricks of the 28-tiling matches the figure structure") {
  Tiling t = triquadratic(2, 4);
  std::string tex = to_pstricks(t);
  CHECK(count_of(tex, "\\pspolygon[fillcolor=") == 28);
  CHECK(count_of(tex, "\\newrgbcolor") == 3);
}
