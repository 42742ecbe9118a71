#pragma once

#include <string>
#include <vector>

#include "tritile/model.hpp"

// Figure output: SVG documents and pstricks TeX fragments, one polygon per
// tile plus the frame outline. Exact coordinates become floats only here, at
// 10 significant digits for SVG and 2 decimals for pstricks (the precision
// the journal-style figures use).

namespace tritile {

// by_component colors tiles by their translation component, by_sign by the
// exact two-coloring, uniform paints everything lightgray (the look of the
// failed-search figures). by_region is an alias of by_component: the
// interchange format carries no constructor regions, and in triquadratic
// tilings the components coincide with the visually distinct regions.
enum class ColorMode { by_component, by_sign, by_region, uniform };

struct RenderStyle {
  ColorMode color_mode = ColorMode::by_component;
  double scale = 1.0;          // output units per scaled length unit
  double stroke_width = 0.15;  // in output units
  // Fill colors, cycled by class index. Empty selects the built-in palette
  // lightblue, lightgreen, pink, lightyellow (uniform mode: lightgray).
  std::vector<std::string> palette;
};

// One <polygon> per tile; y axis flipped so the frame sits upright. by_sign
// on a partial (or otherwise uncolorable) tiling falls back to uniform with
// a warning comment in the output. Byte-stable for identical inputs.
std::string to_svg(const Tiling& t, const RenderStyle& style = {});

// \pspicture fragment: frame \pspolygon first, then one filled \pspolygon
// per tile, with \newrgbcolor definitions for the built-in palette names.
std::string to_pstricks(const Tiling& t, const RenderStyle& style = {});

}  // namespace tritile
