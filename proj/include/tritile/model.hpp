#pragma once

#include <array>
#include <vector>

#include "tritile/quadfield.hpp"

// Placed tiles, tilings, the canonical frame, and the interchange format.
// All coordinates are K-scaled (side lengths MK, K^2 - M^2, K^2), so every
// vertex of a tiling lies in Q(sqrt D)^2 with integer-friendly denominators.

namespace tritile {

struct PlacedTile {
  long long id = 0;
  Point va, vb, vg;  // vertices carrying angles alpha, beta, gamma
  bool operator==(const PlacedTile&) const = default;

  const Point& vertex(char label) const;  // label in {'a','b','g'}
};

// One side of a tile: `side` in {'a','b','c'} with endpoints and their
// vertex labels. Side a joins beta-gamma, b joins alpha-gamma, c joins
// alpha-beta.
struct TileEdge {
  char side = 0;
  Point u, v;
  char label_u = 0, label_v = 0;
};
std::array<TileEdge, 3> edges_of(const PlacedTile& t);

// Scaled length of a tile side.
long long side_length(const TileSpec& spec, char side);
// The side joining two distinct vertex labels.
char side_between(char label1, char label2);

QFNum signed_area(const PlacedTile& t);

// Exact congruence with the spec's tile (both chiralities), nonzero area.
bool tile_congruent(const TileSpec& spec, const PlacedTile& t);

// Exact separating-axis test: true when the open interiors intersect.
// Shared edges and shared vertices do not count as intersection.
bool tiles_interiors_intersect(const PlacedTile& s, const PlacedTile& t);

struct Tiling {
  TileSpec spec;
  Point A, B, C;  // frame corners; the interior is to the left of A->C->B->A
  bool partial = false;
  std::vector<PlacedTile> tiles;
};

// Canonical frame: A = (0,0), C = (K(K^2-M^2), 0),
// B = ((N^2 - 2K^4)/(2K), (MN/(2K)) sqrt D). Angles: 2 alpha at A, beta at B,
// alpha + beta at C.
Point frame_B(const TileSpec& spec);
Tiling make_frame(const TileSpec& spec);

// The unique tile whose edge from U (vertex label `label_u`) to W (vertex
// label `label_w`) has its third vertex to the LEFT of U -> W. Throws
// std::invalid_argument if |UW| does not match the side those labels span.
PlacedTile place_tile_left(const Shape& shape, long long id, const Point& U, char label_u,
                           const Point& W, char label_w);

// Interchange format: line-based, fixed field order, exact coordinates,
// strict reader (unknown fields, reordered fields, or inconsistent headers
// are errors). Round trips are bit-exact.
std::string write_tiling(const Tiling& t);
Tiling read_tiling(const std::string& text);
void save_tiling(const Tiling& t, const std::string& path);
Tiling load_tiling(const std::string& path);

}  // namespace tritile
