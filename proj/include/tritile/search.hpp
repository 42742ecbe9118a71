#pragma once

#include <string>
#include <vector>

#include "tritile/model.hpp"

// Backtracking enumeration of boundary tilings: partial tilings that cover a
// full neighborhood of the boundary of ABC, with at most one alpha, one beta,
// and one gamma at each boundary vertex. Covering a neighborhood means every
// side is partitioned by flush tile edges and the angle at every boundary
// vertex is completely filled: pi at a side-interior vertex, which forces
// exactly one alpha, one beta, and one gamma there (the middle tile touches
// the boundary only at that vertex), and the frame angles at the corners: two
// alpha at A, a single beta at B (that tile is flush on both AB and BC), and
// one alpha plus one beta at C.
//
// The search walks the boundary clockwise from B (down AB, across AC, up CB)
// keeping an exact angular frontier at the current vertex; each step either
// absorbs an already-placed corner wedge, branches on the fill tile laid
// against the frontier ray (side along the ray x corner label), or, once the
// vertex closes, advances along the departing tile's flush edge.

namespace tritile {

enum class EmitMode { first, all };

// Fixed traversal order tag; the only implemented order walks clockwise
// from B (down AB, across AC, up CB).
enum class NodeOrder { clockwise_from_b };

struct SearchConfig {
  long long max_nodes = 0;  // 0 = unlimited
  EmitMode emit = EmitMode::all;
  bool record_rejected = false;    // keep abandoned partials for rendering
  long long max_rejected = 256;    // bound on the rejected-branch dump
  NodeOrder node_order = NodeOrder::clockwise_from_b;
  int threads = 1;  // <= 0: use TRITILE_THREADS env var, default 1
};

struct SearchStats {
  long long nodes = 0;         // states expanded
  long long placements = 0;    // candidate placements tried
  long long backtracks = 0;    // partials abandoned with no viable extension
  long long dead_length = 0;   // rejected: remaining side length infeasible
  long long dead_angle = 0;    // rejected: vertex angle budget conflict
  long long dead_overlap = 0;  // rejected: overlaps a tile or leaves the frame
};

struct SearchOutcome {
  std::vector<Tiling> found;     // boundary-complete partials, canonical order
  std::vector<Tiling> rejected;  // abandoned partials (record_rejected)
  SearchStats stats;
  bool exhausted = false;       // whole space explored
  bool node_limit_hit = false;  // stopped by max_nodes instead
};

// Walks the boundary from B down AB, across AC, up CB, placing one tile per
// step with an edge flush on the first uncovered stretch; enumerates side
// a, b, c and both orientations per side in a fixed order. Deterministic:
// identical inputs give identical found-sets and stats for any thread count.
SearchOutcome boundary_search(const TileSpec& spec, const SearchConfig& config = {});

// True iff `remaining` is a nonnegative integer combination of the scaled
// tile sides {a, b, c}.
bool prune_length_feasible(long long remaining, const TileSpec& spec);

// Order-independent key of a (partial) tiling: the sorted exact serialization
// of its tiles, ignoring ids. ABC is scalene, so no symmetry quotient.
std::string canonicalize(const Tiling& partial);

}  // namespace tritile
