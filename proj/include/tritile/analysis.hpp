#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tritile/model.hpp"

// Verification calculus over placed tilings: exact validation, vertex
// census, two-coloring, boundary edge-count matrix, translation components,
// maximal interior segments, and special vertices (centers, stars,
// suspicious edges). Everything is exact; no floating point decides
// anything.
//
// Frame sides are named X = BC, Y = AC, Z = AB throughout, and arrays
// indexed by side use that order.

namespace tritile {

struct ValidationReport {
  bool valid = false;
  bool complete_mode = true;  // copied from !Tiling::partial
  bool tiles_congruent = false;
  bool no_overlap = false;
  // Complete mode: every interval strictly inside the frame has exactly one
  // tile edge on each side, boundary intervals have exactly one inside and
  // none outside, and nothing lies outside the frame. Partial mode: at most
  // one per side.
  bool interior_matched = false;
  bool boundary_covered = false;  // frame sides fully covered (complete mode)
  bool area_matched = false;      // tile areas sum to the frame area
  bool within_frame = false;      // all vertices inside or on the frame
  // Fraction of each frame side (X, Y, Z) covered by tile edges.
  std::array<Rational, 3> boundary_fraction{};
  std::vector<std::string> errors;    // reasons `valid` is false
  std::vector<std::string> warnings;  // non-gating observations
};

ValidationReport validate(const Tiling& t);

enum class VertexKind {
  corner,        // one of A, B, C
  boundary,      // on a frame side, angle sum pi
  interior_pi,   // strictly inside, angle sum pi (T-joint on an edge)
  interior_full, // strictly inside, angle sum 2 pi
  unclassified,  // anything else (always an error for complete tilings)
};

struct VertexInfo {
  Point at;
  VertexKind kind = VertexKind::unclassified;
  int n_alpha = 0, n_beta = 0, n_gamma = 0;
  // "corner", "standard-111", "standard-222", "center-013", "sporadic-320",
  // "sporadic-640", "sporadic-431", or "other". The pi-sum types are
  // (1,1,1) and (3,2,0); the 2 pi-sum types are (2,2,2), (0,1,3), (6,4,0)
  // and (4,3,1); nothing else balances the angle relation.
  std::string type_name = "other";
  int rays = 0;  // distinct edge directions at the vertex (both half-rays)
};

struct CensusReport {
  std::vector<VertexInfo> vertices;  // sorted by Vec2Less on the point
  std::map<std::string, long long> counts;  // by type_name
  long long centers = 0;       // (0,1,3) vertices
  long long sporadic_320 = 0;  // (3,2,0)
  long long sporadic_640 = 0;  // (6,4,0)
  long long sporadic_431 = 0;  // (4,3,1)
  bool all_classified = false;
  bool ray_parity_ok = false;  // interior vertices meet an even ray count
  // Corner fill is canonical when A holds exactly two alpha angles, B one
  // beta, and C one alpha plus one beta (five tile angles at the corners).
  bool corner_fill_canonical = false;
  // centers == 1 + n(3,2,0) + 2 n(6,4,0) + n(4,3,1); the last term is the
  // weight that type carries in the angle-excess count (it vanishes in all
  // known tilings). Only meaningful when applicable.
  bool center_identity_applicable = false;
  bool center_identity_ok = false;
  std::vector<std::string> errors;
};

CensusReport vertex_census(const Tiling& t);

struct TwoColorReport {
  bool bipartite = false;
  bool all_reached = false;  // edge adjacency connects every tile
  std::vector<int> color;    // +1 black / -1 white per tile index; 0 unreached
  long long black_minus_white = 0;  // black tile count minus white
  // (black - white) * (a + b + c) == X - Y + Z in scaled lengths; checked
  // for complete tilings in the canonical frame.
  bool signed_identity_applicable = false;
  bool signed_identity_ok = false;
  std::vector<std::string> errors;
};

TwoColorReport two_color(const Tiling& t);

struct DMatrixReport {
  // rows X, Y, Z; columns: count of a, b, c tile edges on that frame side.
  std::array<std::array<long long, 3>, 3> rows{};
  bool sides_fully_covered = false;
  bool equation_ok = false;        // rows * (a, b, c) == (X, Y, Z) lengths
  bool corner_columns_ok = false;  // c column nonzero in every row
  // When K does not divide M^2: no b edges on AC or AB and exactly M on BC.
  bool pattern_applies = false;
  bool b_column_pattern_ok = false;
  std::vector<std::string> errors;
};

DMatrixReport extract_d_matrix(const Tiling& t);

// Components of the relation "shares a full edge with different angles at
// its endpoints" (such neighbours form a parallelogram; all tiles of a
// component are translates or point reflections of one another).
enum class ComponentType { type1, type2, type3, other };

struct ComponentInfo {
  std::vector<long long> tiles;  // tile ids, sorted
  ComponentType type = ComponentType::other;
  bool lattice_ok = false;  // vertices lie on the first tile's edge lattice
};

struct ComponentReport {
  std::vector<ComponentInfo> components;  // ordered by smallest tile id
  // Pairs of component indices of the same type that share a boundary
  // segment with equal-length edges that do not share vertices.
  std::vector<std::pair<int, int>> out_of_sync;
  bool direction_consistent = false;  // one direction per side letter each
  std::vector<std::string> errors;
};

ComponentReport components(const Tiling& t);

struct SegmentSide {
  long long a = 0, b = 0, c = 0;
  bool operator==(const SegmentSide&) const = default;
};

struct MaximalSegment {
  Point p0, p1;  // endpoints, p0 < p1 by Vec2Less
  SegmentSide pos, neg;  // tile edge counts on the two sides of the line
  bool essential = false;  // per-letter counts differ between the sides
};

struct SegmentReport {
  std::vector<MaximalSegment> segments;  // maximal, off the frame lines
  long long essential_count = 0;
  // Checked when K does not divide M^2 (else vacuous, `checks_apply`
  // false): K divides the b-count difference across every segment, and any
  // segment with only b on one side and an a or c on the other is at least
  // K * b long.
  bool checks_apply = false;
  bool b_difference_ok = true;
  bool b_run_length_ok = true;
};

SegmentReport segments(const Tiling& t);

struct SuspiciousEdge {
  Point p, q;        // p is the shared vertex at the upper end
  long long tile_b;  // tile with the b edge along pq
  long long tile_ac; // tile with the a or c edge along pq
};

struct SpecialVertexReport {
  std::vector<Point> centers;  // (0,1,3) vertices, sorted
  std::vector<Point> stars;    // sorted
  std::vector<SuspiciousEdge> suspicious;
  std::vector<std::string> notes;
};

SpecialVertexReport find_special_vertices(const Tiling& t);

}  // namespace tritile
