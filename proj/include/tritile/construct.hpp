#pragma once

#include "tritile/model.hpp"

// Constructions: the quadratic n^2-tiling of the n-scaled tile, and the
// triquadratic N-tiling of ABC for solutions with K | M^2. The triquadratic
// decomposition splits ABC into an a^2-scaled quadratic region at C, two
// mirror-image b^2-scaled quadratic regions sharing the bisector AQ of the
// angle at A, and a parallelogram strip QDBE cut into 2(K-J)J tiles.

namespace tritile {

// Corners of the n-scaled tile triangle, labeled by the angle they carry.
struct QuadraticFrame {
  Point pa, pb, pg;  // alpha, beta, gamma corners
};

// The n^2 tiles of the lattice subdivision, row-major with rows parallel to
// pa->pb; each row lists an upright tile, then the inverted tile to its
// right. Throws std::invalid_argument if the frame sides do not measure
// n*c, n*b, n*a. Ids are first_id, first_id+1, ...
std::vector<PlacedTile> quadratic_tiling(const Shape& shape, long long n,
                                         const QuadraticFrame& frame, long long first_id = 0);

struct TriquadraticPlan {
  TileSpec spec;
  long long J = 0;        // M^2 / K
  long long b_units = 0;  // K - J: the scale of each b^2 region
  Point Q;                // on the bisector of A, |AQ| = K (K-J)^2
  Point D;                // mirror of C across the bisector, on AB
  Point E;                // on CB, |CE| = M K^2
  long long count_a2 = 0, count_b2 = 0, count_strip = 0;  // M^2, (K-J)^2, 2(K-J)J
};

// Requires 0 < M < K and K | M^2.
TriquadraticPlan triquadratic_plan(long long M, long long K);

// The full N-tiling: a^2 region (at C), first b^2 region (on AC), second b^2
// region (on AB), strip. Internally cross-checked: B is computed three ways
// (frame formula, D + E - Q, and the intersection of lines AD and CE).
Tiling triquadratic(long long M, long long K);

// Intersection of lines (p1 p2) and (p3 p4); throws invariant_error if they
// are parallel.
Point line_intersection(const Point& p1, const Point& p2, const Point& p3, const Point& p4);

}  // namespace tritile
