#include "tritile/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace tritile {
namespace {

constexpr size_t kMaxErrors = 24;

void push_error(std::vector<std::string>& errors, const std::string& msg) {
  if (errors.size() < kMaxErrors) {
    errors.push_back(msg);
  } else if (errors.size() == kMaxErrors) {
    errors.push_back("(further errors suppressed)");
  }
}

std::string fmt_point(const Point& p) {
  std::ostringstream os;
  os << "(" << p.x.value() << ", " << p.y.value() << ")";
  return os.str();
}

struct QFLess {
  bool operator()(const QFNum& a, const QFNum& b) const { return (a - b).sign() < 0; }
};

// A line as c0 x + c1 y = c2 with the leading nonzero coefficient scaled
// to 1, so equal lines get equal keys.
struct LineKey {
  std::array<QFNum, 3> c;
};

struct LineKeyLess {
  bool operator()(const LineKey& a, const LineKey& b) const {
    for (int i = 0; i < 3; ++i) {
      int s = (a.c[i] - b.c[i]).sign();
      if (s != 0) return s < 0;
    }
    return false;
  }
};

bool linekey_eq(const LineKey& a, const LineKey& b) {
  LineKeyLess lt;
  return !lt(a, b) && !lt(b, a);
}

LineKey line_through(const Point& u, const Point& v) {
  QFNum ca = v.y - u.y;
  QFNum cb = u.x - v.x;
  QFNum cc = ca * u.x + cb * u.y;
  if (ca.sign() != 0) return {{QFNum(1), cb / ca, cc / ca}};
  return {{QFNum(0), QFNum(1), cc / cb}};
}

QFNum line_eval(const LineKey& k, const Point& p) {
  return k.c[0] * p.x + k.c[1] * p.y - k.c[2];
}

// Direction of the line; the line-evaluation gradient is its left normal,
// so a point p has line_eval sign equal to the sign of cross(dir, p - p0).
Vec2 line_dir(const LineKey& k) { return {k.c[1], QFNum(0) - k.c[0]}; }

struct EdgeInst {
  long long tile = 0;  // index into Tiling::tiles
  char side = 0;       // 'a', 'b', 'c'
  Point p0, p1;        // ordered by line parameter
  char label0 = 0, label1 = 0;
  size_t line = 0;
  QFNum t0, t1;
  int body = 0;  // line_eval sign on the tile body's side
};

struct LineRec {
  LineKey key;
  Vec2 dir;
  std::vector<size_t> edge_ids;
  std::vector<QFNum> cuts;  // sorted endpoint parameters (plus frame corners)
  std::vector<Point> pts;
  std::vector<std::vector<size_t>> pos, neg;  // per elementary interval
};

struct Arrangement {
  const Tiling* tiling = nullptr;
  std::vector<EdgeInst> edges;
  std::vector<LineRec> lines;
  std::map<LineKey, size_t, LineKeyLess> index;
  int orient = 0;  // sign of cross(C - A, B - A)
  std::array<LineKey, 3> frame_key;  // X = BC, Y = AC, Z = AB
  std::array<std::pair<Point, Point>, 3> frame_seg;
  std::array<Point, 3> opposite;  // frame corner not on each side
  std::vector<std::string> errors;
};

size_t intern_line(Arrangement& arr, const LineKey& key) {
  auto it = arr.index.find(key);
  if (it != arr.index.end()) return it->second;
  size_t id = arr.lines.size();
  LineRec rec;
  rec.key = key;
  rec.dir = line_dir(key);
  arr.lines.push_back(rec);
  arr.index.emplace(key, id);
  return id;
}

size_t cut_index(const LineRec& line, const QFNum& t) {
  auto it = std::lower_bound(line.cuts.begin(), line.cuts.end(), t, QFLess{});
  return static_cast<size_t>(it - line.cuts.begin());
}

Arrangement build_arrangement(const Tiling& t) {
  Arrangement arr;
  arr.tiling = &t;
  arr.orient = cross(t.C - t.A, t.B - t.A).sign();
  if (arr.orient == 0) {
    arr.errors.push_back("frame corners are collinear");
    return arr;
  }
  arr.frame_seg = {{{t.B, t.C}, {t.A, t.C}, {t.A, t.B}}};
  arr.opposite = {t.A, t.B, t.C};
  for (int s = 0; s < 3; ++s) {
    arr.frame_key[s] = line_through(arr.frame_seg[s].first, arr.frame_seg[s].second);
  }
  for (size_t i = 0; i < t.tiles.size(); ++i) {
    const PlacedTile& tile = t.tiles[i];
    if (signed_area(tile).sign() == 0) {
      push_error(arr.errors, "tile " + std::to_string(tile.id) + " is degenerate");
      continue;
    }
    for (const TileEdge& e : edges_of(tile)) {
      LineKey key = line_through(e.u, e.v);
      size_t line = intern_line(arr, key);
      Vec2 d = arr.lines[line].dir;
      QFNum tu = dot(e.u, d), tv = dot(e.v, d);
      char third = 'a' + 'b' + 'g' - e.label_u - e.label_v;
      EdgeInst inst;
      inst.tile = static_cast<long long>(i);
      inst.side = e.side;
      inst.line = line;
      if ((tu - tv).sign() < 0) {
        inst.p0 = e.u; inst.p1 = e.v; inst.t0 = tu; inst.t1 = tv;
        inst.label0 = e.label_u; inst.label1 = e.label_v;
      } else {
        inst.p0 = e.v; inst.p1 = e.u; inst.t0 = tv; inst.t1 = tu;
        inst.label0 = e.label_v; inst.label1 = e.label_u;
      }
      inst.body = line_eval(key, tile.vertex(third)).sign();
      arr.lines[line].edge_ids.push_back(arr.edges.size());
      arr.edges.push_back(inst);
    }
  }
  for (auto& line : arr.lines) {
    std::map<QFNum, Point, QFLess> cutmap;
    for (size_t eid : line.edge_ids) {
      cutmap.emplace(arr.edges[eid].t0, arr.edges[eid].p0);
      cutmap.emplace(arr.edges[eid].t1, arr.edges[eid].p1);
    }
    // Frame corners become cut points on every line through them, so no
    // elementary interval straddles a corner.
    for (const Point* corner : {&t.A, &t.B, &t.C}) {
      if (line_eval(line.key, *corner).sign() == 0) {
        cutmap.emplace(dot(*corner, line.dir), *corner);
      }
    }
    for (const auto& [param, pt] : cutmap) {
      line.cuts.push_back(param);
      line.pts.push_back(pt);
    }
    size_t n = line.cuts.empty() ? 0 : line.cuts.size() - 1;
    line.pos.assign(n, {});
    line.neg.assign(n, {});
    for (size_t eid : line.edge_ids) {
      const EdgeInst& e = arr.edges[eid];
      size_t i0 = cut_index(line, e.t0);
      size_t i1 = cut_index(line, e.t1);
      for (size_t k = i0; k < i1; ++k) {
        (e.body > 0 ? line.pos : line.neg)[k].push_back(eid);
      }
    }
  }
  return arr;
}

// -1 outside, 0 strictly inside, 1 + s on the open side s, 4 at a corner.
int locate(const Arrangement& arr, const Point& p) {
  int zeros = 0, side_zero = -1;
  for (int s = 0; s < 3; ++s) {
    int sign = line_eval(arr.frame_key[s], p).sign();
    if (sign == 0) {
      ++zeros;
      side_zero = s;
    } else if (sign != line_eval(arr.frame_key[s], arr.opposite[s]).sign()) {
      return -1;
    }
  }
  if (zeros == 0) return 0;
  if (zeros == 1) return 1 + side_zero;
  return 4;
}

// Fraction of frame side s covered by tile edges; exact. The side's
// corners are cut points of its line, so elementary intervals never cross
// them.
Rational side_coverage(const Arrangement& arr, int s) {
  auto it = arr.index.find(arr.frame_key[s]);
  if (it == arr.index.end()) return Rational(0);
  const LineRec& line = arr.lines[it->second];
  QFNum ta = dot(arr.frame_seg[s].first, line.dir);
  QFNum tb = dot(arr.frame_seg[s].second, line.dir);
  QFNum lo = (ta - tb).sign() < 0 ? ta : tb;
  QFNum hi = (ta - tb).sign() < 0 ? tb : ta;
  QFNum covered(0);
  for (size_t k = 0; k + 1 < line.cuts.size(); ++k) {
    if (line.pos[k].empty() && line.neg[k].empty()) continue;
    if ((line.cuts[k] - lo).sign() < 0 || (line.cuts[k + 1] - hi).sign() > 0) continue;
    covered += line.cuts[k + 1] - line.cuts[k];
  }
  QFNum frac = covered / (hi - lo);
  if (!frac.is_rational()) return Rational(0);  // cannot happen for real input
  return frac.p();
}

QFNum frame_area(const Tiling& t) {
  QFNum twice = qf_abs(cross(t.C - t.A, t.B - t.A));
  return make_rational(1, 2) * twice;
}

// Grid-shortlisted pairwise overlap scan; fills `errors` and returns
// whether all interiors are disjoint.
bool overlap_scan(const Tiling& t, std::vector<std::string>& errors) {
  if (t.tiles.size() < 2) return true;
  double cell = static_cast<double>(t.spec.c_scaled);
  if (cell <= 0) cell = 1.0;
  std::map<std::pair<long, long>, std::vector<size_t>> grid;
  auto cells_of = [&](const PlacedTile& tile) {
    double xs[3] = {tile.va.x.value(), tile.vb.x.value(), tile.vg.x.value()};
    double ys[3] = {tile.va.y.value(), tile.vb.y.value(), tile.vg.y.value()};
    double xlo = std::min({xs[0], xs[1], xs[2]}), xhi = std::max({xs[0], xs[1], xs[2]});
    double ylo = std::min({ys[0], ys[1], ys[2]}), yhi = std::max({ys[0], ys[1], ys[2]});
    std::vector<std::pair<long, long>> out;
    for (long cx = static_cast<long>(std::floor(xlo / cell)); cx <= static_cast<long>(std::floor(xhi / cell)); ++cx) {
      for (long cy = static_cast<long>(std::floor(ylo / cell)); cy <= static_cast<long>(std::floor(yhi / cell)); ++cy) {
        out.emplace_back(cx, cy);
      }
    }
    return out;
  };
  std::set<std::pair<size_t, size_t>> candidates;
  for (size_t i = 0; i < t.tiles.size(); ++i) {
    for (auto& c : cells_of(t.tiles[i])) {
      for (size_t j : grid[c]) candidates.emplace(j, i);
      grid[c].push_back(i);
    }
  }
  bool ok = true;
  for (auto& [i, j] : candidates) {
    if (tiles_interiors_intersect(t.tiles[i], t.tiles[j])) {
      ok = false;
      push_error(errors, "tiles " + std::to_string(t.tiles[i].id) + " and " +
                             std::to_string(t.tiles[j].id) + " overlap");
    }
  }
  return ok;
}

// Scale-invariant canonical representative of a ray direction.
Vec2 ray_key(const Vec2& v) {
  if (v.x.sign() != 0) {
    QFNum m = qf_abs(v.x);
    return {v.x / m, v.y / m};
  }
  QFNum m = qf_abs(v.y);
  return {QFNum(0), v.y / m};
}

// Canonical representative of a line direction (sign-insensitive).
Vec2 undirected_key(const Vec2& v) {
  Vec2 a = ray_key(v);
  Vec2 b = ray_key(Vec2{QFNum(0) - v.x, QFNum(0) - v.y});
  return Vec2Less{}(a, b) ? a : b;
}

bool is_integer(const QFNum& x) {
  return x.is_rational() && x.p().get_den() == 1;
}

struct CornerEntry {
  int na = 0, nb = 0, ng = 0;
  std::set<Vec2, Vec2Less> rays;
  std::vector<size_t> tiles;  // tile indices with a corner here
  bool spanned = false;       // some edge passes strictly through
};

std::map<Point, CornerEntry, Vec2Less> collect_corners(const Tiling& t, const Arrangement& arr) {
  std::map<Point, CornerEntry, Vec2Less> verts;
  for (size_t i = 0; i < t.tiles.size(); ++i) {
    const PlacedTile& tile = t.tiles[i];
    struct C { const Point* p; char label; };
    C cs[3] = {{&tile.va, 'a'}, {&tile.vb, 'b'}, {&tile.vg, 'g'}};
    for (int k = 0; k < 3; ++k) {
      CornerEntry& e = verts[*cs[k].p];
      if (cs[k].label == 'a') ++e.na;
      if (cs[k].label == 'b') ++e.nb;
      if (cs[k].label == 'g') ++e.ng;
      e.tiles.push_back(i);
      for (int other = 1; other <= 2; ++other) {
        Vec2 d = *cs[(k + other) % 3].p - *cs[k].p;
        if (d.x.sign() != 0 || d.y.sign() != 0) e.rays.insert(ray_key(d));
      }
    }
  }
  for (const auto& line : arr.lines) {
    for (size_t k = 0; k < line.cuts.size(); ++k) {
      auto it = verts.find(line.pts[k]);
      if (it == verts.end()) continue;
      for (size_t eid : line.edge_ids) {
        const EdgeInst& e = arr.edges[eid];
        if ((e.t0 - line.cuts[k]).sign() < 0 && (line.cuts[k] - e.t1).sign() < 0) {
          it->second.spanned = true;
          it->second.rays.insert(ray_key(line.dir));
          it->second.rays.insert(ray_key(Vec2{QFNum(0) - line.dir.x, QFNum(0) - line.dir.y}));
          break;
        }
      }
    }
  }
  return verts;
}

std::string type_of_triple(int na, int nb, int ng) {
  if (na == 1 && nb == 1 && ng == 1) return "standard-111";
  if (na == 2 && nb == 2 && ng == 2) return "standard-222";
  if (na == 0 && nb == 1 && ng == 3) return "center-013";
  if (na == 3 && nb == 2 && ng == 0) return "sporadic-320";
  if (na == 6 && nb == 4 && ng == 0) return "sporadic-640";
  if (na == 4 && nb == 3 && ng == 1) return "sporadic-431";
  return "other";
}

struct DisjointSet {
  std::vector<size_t> parent;
  explicit DisjointSet(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), size_t{0}); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

// Pairs of coincident full edges (same line, same endpoints) on opposite
// sides, i.e. shared edges whose tiles share both endpoint vertices.
std::vector<std::pair<size_t, size_t>> coincident_edge_pairs(const Arrangement& arr) {
  std::vector<std::pair<size_t, size_t>> pairs;
  for (const auto& line : arr.lines) {
    std::vector<size_t> ids = line.edge_ids;
    std::sort(ids.begin(), ids.end(), [&](size_t a, size_t b) {
      int s = (arr.edges[a].t0 - arr.edges[b].t0).sign();
      if (s != 0) return s < 0;
      return (arr.edges[a].t1 - arr.edges[b].t1).sign() < 0;
    });
    for (size_t i = 0; i < ids.size(); ++i) {
      for (size_t j = i + 1; j < ids.size(); ++j) {
        const EdgeInst& a = arr.edges[ids[i]];
        const EdgeInst& b = arr.edges[ids[j]];
        if ((a.t0 - b.t0).sign() != 0) break;
        if ((a.t1 - b.t1).sign() != 0) continue;
        if (a.body * b.body >= 0) continue;
        pairs.emplace_back(ids[i], ids[j]);
      }
    }
  }
  return pairs;
}

}  // namespace

ValidationReport validate(const Tiling& t) {
  ValidationReport r;
  r.complete_mode = !t.partial;
  r.tiles_congruent = true;
  for (const PlacedTile& tile : t.tiles) {
    if (!tile_congruent(t.spec, tile)) {
      r.tiles_congruent = false;
      push_error(r.errors, "tile " + std::to_string(tile.id) +
                               " is not congruent to the reference tile");
    }
  }
  Arrangement arr = build_arrangement(t);
  for (const auto& e : arr.errors) push_error(r.errors, e);
  if (arr.orient == 0) {
    r.valid = false;
    return r;
  }

  bool boundary_ok = true;
  bool outside_seen = false;
  r.interior_matched = true;
  for (const auto& line : arr.lines) {
    for (size_t k = 0; k + 1 < line.cuts.size(); ++k) {
      size_t np = line.pos[k].size(), nn = line.neg[k].size();
      if (np + nn == 0) continue;
      if (!r.complete_mode) {
        if (np > 1 || nn > 1) {
          r.interior_matched = false;
          push_error(r.errors, "doubled tile edge near " +
                                   fmt_point(make_rational(1, 2) * (line.pts[k] + line.pts[k + 1])));
        }
        continue;
      }
      Point mid = make_rational(1, 2) * (line.pts[k] + line.pts[k + 1]);
      int loc = locate(arr, mid);
      if (loc == 0) {
        if (np != 1 || nn != 1) {
          r.interior_matched = false;
          push_error(r.errors, "interior interval near " + fmt_point(mid) + " has " +
                                   std::to_string(np) + "/" + std::to_string(nn) +
                                   " edges on its sides");
        }
      } else if (loc >= 1 && loc <= 3) {
        int s = loc - 1;
        if (!linekey_eq(line.key, arr.frame_key[s])) {
          boundary_ok = false;
          push_error(r.errors, "tile edge crosses the frame boundary near " + fmt_point(mid));
          continue;
        }
        int inner = line_eval(line.key, arr.opposite[s]).sign();
        size_t inside = inner > 0 ? np : nn;
        size_t outside = inner > 0 ? nn : np;
        if (inside != 1 || outside != 0) {
          boundary_ok = false;
          push_error(r.errors, "frame boundary near " + fmt_point(mid) + " has " +
                                   std::to_string(inside) + " inner / " +
                                   std::to_string(outside) + " outer edges");
        }
      } else if (loc == -1) {
        outside_seen = true;
        push_error(r.errors, "tile edge outside the frame near " + fmt_point(mid));
      } else {
        boundary_ok = false;
        push_error(r.errors, "covered interval spans frame corner " + fmt_point(mid));
      }
    }
  }

  r.boundary_covered = true;
  for (int s = 0; s < 3; ++s) {
    r.boundary_fraction[s] = side_coverage(arr, s);
    if (r.boundary_fraction[s] != Rational(1)) {
      r.boundary_covered = false;
      if (r.complete_mode) {
        const char* names = "XYZ";
        push_error(r.errors, std::string("frame side ") + names[s] + " is not fully covered");
      }
    }
  }

  QFNum total(0);
  for (const PlacedTile& tile : t.tiles) total += qf_abs(signed_area(tile));
  r.area_matched = (total - frame_area(t)).sign() == 0;
  if (r.complete_mode && !r.area_matched) {
    push_error(r.errors, "tile areas do not sum to the frame area");
  }

  r.within_frame = true;
  for (const PlacedTile& tile : t.tiles) {
    for (const Point* p : {&tile.va, &tile.vb, &tile.vg}) {
      if (locate(arr, *p) == -1) {
        r.within_frame = false;
        if (r.complete_mode) {
          push_error(r.errors, "tile " + std::to_string(tile.id) + " reaches outside the frame");
        } else {
          r.warnings.push_back("tile " + std::to_string(tile.id) + " reaches outside the frame");
        }
        break;
      }
    }
  }

  r.no_overlap = overlap_scan(t, r.errors);

  if (r.complete_mode) {
    r.valid = r.tiles_congruent && r.no_overlap && r.interior_matched && boundary_ok &&
              r.boundary_covered && r.area_matched && r.within_frame && !outside_seen &&
              !t.tiles.empty();
    if (t.tiles.empty()) push_error(r.errors, "complete tiling has no tiles");
  } else {
    r.valid = r.tiles_congruent && r.no_overlap && r.interior_matched;
  }
  return r;
}

CensusReport vertex_census(const Tiling& t) {
  CensusReport r;
  Arrangement arr = build_arrangement(t);
  for (const auto& e : arr.errors) push_error(r.errors, e);
  if (arr.orient == 0) return r;
  auto verts = collect_corners(t, arr);
  bool complete = !t.partial;
  r.all_classified = true;
  r.ray_parity_ok = true;
  for (const auto& [p, e] : verts) {
    VertexInfo vi;
    vi.at = p;
    vi.n_alpha = e.na;
    vi.n_beta = e.nb;
    vi.n_gamma = e.ng;
    vi.rays = static_cast<int>(e.rays.size());
    long long sk = 2LL * e.na - 3LL * e.nb + e.ng;
    long long sq = e.nb + e.ng;
    bool is_corner = p == t.A || p == t.B || p == t.C;
    int loc = locate(arr, p);
    if (is_corner) {
      vi.kind = VertexKind::corner;
      vi.type_name = "corner";
    } else if (sk == 0 && sq == 2 && loc >= 1 && loc <= 3) {
      vi.kind = VertexKind::boundary;
      vi.type_name = type_of_triple(e.na, e.nb, e.ng);
    } else if (sk == 0 && sq == 2 && loc == 0) {
      vi.kind = VertexKind::interior_pi;
      vi.type_name = type_of_triple(e.na, e.nb, e.ng);
      if (!e.spanned) {
        push_error(r.errors, "pi vertex at " + fmt_point(p) + " is not on a tile edge");
      }
    } else if (sk == 0 && sq == 4 && loc == 0) {
      vi.kind = VertexKind::interior_full;
      vi.type_name = type_of_triple(e.na, e.nb, e.ng);
    } else {
      vi.kind = VertexKind::unclassified;
      vi.type_name = "other";
      r.all_classified = false;
      if (complete) {
        push_error(r.errors, "vertex at " + fmt_point(p) + " has angle counts (" +
                                 std::to_string(e.na) + "," + std::to_string(e.nb) + "," +
                                 std::to_string(e.ng) + ") matching no vertex type");
      }
    }
    if ((vi.kind == VertexKind::interior_pi || vi.kind == VertexKind::interior_full) &&
        vi.rays % 2 != 0) {
      r.ray_parity_ok = false;
      if (complete) {
        push_error(r.errors, "interior vertex at " + fmt_point(p) + " meets " +
                                 std::to_string(vi.rays) + " edge rays");
      }
    }
    if (!is_corner) {
      if (vi.type_name == "center-013") ++r.centers;
      if (vi.type_name == "sporadic-320") ++r.sporadic_320;
      if (vi.type_name == "sporadic-640") ++r.sporadic_640;
      if (vi.type_name == "sporadic-431") ++r.sporadic_431;
    }
    ++r.counts[vi.type_name];
    r.vertices.push_back(std::move(vi));
  }
  auto corner_counts = [&](const Point& p, int na, int nb, int ng) {
    auto it = verts.find(p);
    return it != verts.end() && it->second.na == na && it->second.nb == nb && it->second.ng == ng;
  };
  r.corner_fill_canonical = corner_counts(t.A, 2, 0, 0) && corner_counts(t.B, 0, 1, 0) &&
                            corner_counts(t.C, 1, 1, 0);
  r.center_identity_applicable = complete && r.corner_fill_canonical && r.all_classified;
  r.center_identity_ok =
      r.center_identity_applicable &&
      r.centers == 1 + r.sporadic_320 + 2 * r.sporadic_640 + r.sporadic_431;
  return r;
}

TwoColorReport two_color(const Tiling& t) {
  TwoColorReport r;
  r.color.assign(t.tiles.size(), 0);
  if (t.tiles.empty()) {
    push_error(r.errors, "tiling has no tiles");
    return r;
  }
  Arrangement arr = build_arrangement(t);
  for (const auto& e : arr.errors) push_error(r.errors, e);
  std::vector<std::vector<size_t>> adj(t.tiles.size());
  for (const auto& line : arr.lines) {
    for (size_t k = 0; k + 1 < line.cuts.size(); ++k) {
      for (size_t pe : line.pos[k]) {
        for (size_t ne : line.neg[k]) {
          size_t a = static_cast<size_t>(arr.edges[pe].tile);
          size_t b = static_cast<size_t>(arr.edges[ne].tile);
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
      }
    }
  }
  size_t root = t.tiles.size();
  for (size_t i = 0; i < t.tiles.size(); ++i) {
    const PlacedTile& tile = t.tiles[i];
    if (tile.va == t.B || tile.vb == t.B || tile.vg == t.B) {
      root = i;
      break;
    }
  }
  if (root == t.tiles.size()) {
    push_error(r.errors, "no tile has a corner at frame vertex B");
    root = 0;
  }
  r.bipartite = true;
  std::vector<size_t> queue{root};
  r.color[root] = 1;
  while (!queue.empty()) {
    size_t cur = queue.back();
    queue.pop_back();
    for (size_t nb : adj[cur]) {
      if (r.color[nb] == 0) {
        r.color[nb] = -r.color[cur];
        queue.push_back(nb);
      } else if (r.color[nb] != -r.color[cur]) {
        if (r.bipartite) {
          push_error(r.errors, "tiles " + std::to_string(t.tiles[cur].id) + " and " +
                                   std::to_string(t.tiles[nb].id) +
                                   " break the alternating coloring");
        }
        r.bipartite = false;
      }
    }
  }
  r.all_reached = true;
  for (size_t i = 0; i < t.tiles.size(); ++i) {
    if (r.color[i] == 0) {
      r.all_reached = false;
      break;
    }
  }
  for (int c : r.color) r.black_minus_white += c;
  Tiling canon = make_frame(t.spec);
  r.signed_identity_applicable = !t.partial && r.bipartite && r.all_reached &&
                                 t.A == canon.A && t.B == canon.B && t.C == canon.C;
  if (r.signed_identity_applicable) {
    long long abc = t.spec.a_scaled + t.spec.b_scaled + t.spec.c_scaled;
    long long xyz = t.spec.X_scaled - t.spec.Y_scaled + t.spec.Z_scaled;
    r.signed_identity_ok = r.black_minus_white * abc == xyz;
  }
  return r;
}

DMatrixReport extract_d_matrix(const Tiling& t) {
  DMatrixReport r;
  Arrangement arr = build_arrangement(t);
  for (const auto& e : arr.errors) push_error(r.errors, e);
  if (arr.orient == 0) return r;
  r.sides_fully_covered = true;
  r.equation_ok = true;
  for (int s = 0; s < 3; ++s) {
    if (side_coverage(arr, s) != Rational(1)) r.sides_fully_covered = false;
    auto it = arr.index.find(arr.frame_key[s]);
    if (it != arr.index.end()) {
      const LineRec& line = arr.lines[it->second];
      QFNum ta = dot(arr.frame_seg[s].first, line.dir);
      QFNum tb = dot(arr.frame_seg[s].second, line.dir);
      QFNum lo = (ta - tb).sign() < 0 ? ta : tb;
      QFNum hi = (ta - tb).sign() < 0 ? tb : ta;
      for (size_t eid : line.edge_ids) {
        const EdgeInst& e = arr.edges[eid];
        QFNum olo = (e.t0 - lo).sign() > 0 ? e.t0 : lo;
        QFNum ohi = (e.t1 - hi).sign() < 0 ? e.t1 : hi;
        if ((olo - ohi).sign() >= 0) continue;  // no overlap with the side
        ++r.rows[s][e.side - 'a'];
      }
    }
    long long weighted = r.rows[s][0] * t.spec.a_scaled + r.rows[s][1] * t.spec.b_scaled +
                         r.rows[s][2] * t.spec.c_scaled;
    QFNum len2 = norm2(arr.frame_seg[s].second - arr.frame_seg[s].first);
    if ((QFNum(weighted) * QFNum(weighted) - len2).sign() != 0) {
      r.equation_ok = false;
      const char* names = "XYZ";
      push_error(r.errors, std::string("edge counts on side ") + names[s] +
                               " do not measure the side length");
    }
  }
  r.corner_columns_ok = r.rows[0][2] > 0 && r.rows[1][2] > 0 && r.rows[2][2] > 0;
  r.pattern_applies = !t.spec.divisible;
  r.b_column_pattern_ok = !r.pattern_applies ||
                          (r.rows[1][1] == 0 && r.rows[2][1] == 0 && r.rows[0][1] == t.spec.M);
  return r;
}

ComponentReport components(const Tiling& t) {
  ComponentReport r;
  if (t.tiles.empty()) {
    r.direction_consistent = true;
    return r;
  }
  Arrangement arr = build_arrangement(t);
  for (const auto& e : arr.errors) push_error(r.errors, e);
  DisjointSet ds(t.tiles.size());
  for (auto [ea, eb] : coincident_edge_pairs(arr)) {
    const EdgeInst& a = arr.edges[ea];
    const EdgeInst& b = arr.edges[eb];
    if (a.label0 != b.label0) {  // different angles at the shared vertices
      ds.unite(static_cast<size_t>(a.tile), static_cast<size_t>(b.tile));
    }
  }
  std::map<size_t, std::vector<size_t>> groups;  // root -> tile indices
  for (size_t i = 0; i < t.tiles.size(); ++i) groups[ds.find(i)].push_back(i);
  Shape shape(t.spec);
  Vec2 dir_bc = undirected_key(shape.direction(1, 1));
  Vec2 dir_ab = undirected_key(shape.direction(4, 0));
  Vec2 dir_ac = undirected_key(shape.direction(0, 0));
  Vec2 dir_a = undirected_key(shape.direction(2, 0));
  Vec2 dir_c = undirected_key(shape.direction(3, 1));
  std::vector<std::pair<long long, std::vector<size_t>>> ordered;
  for (auto& [root, members] : groups) {
    long long min_id = t.tiles[members.front()].id;
    for (size_t m : members) min_id = std::min(min_id, t.tiles[m].id);
    ordered.emplace_back(min_id, members);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  r.direction_consistent = true;
  std::vector<int> comp_of(t.tiles.size(), -1);
  for (auto& [min_id, members] : ordered) {
    ComponentInfo info;
    std::map<char, std::set<Vec2, Vec2Less>> dirs;
    for (size_t m : members) {
      info.tiles.push_back(t.tiles[m].id);
      comp_of[m] = static_cast<int>(r.components.size());
      for (const TileEdge& e : edges_of(t.tiles[m])) {
        Vec2 d = e.v - e.u;
        if (d.x.sign() != 0 || d.y.sign() != 0) dirs[e.side].insert(undirected_key(d));
      }
    }
    std::sort(info.tiles.begin(), info.tiles.end());
    bool consistent = true;
    for (char side : {'a', 'b', 'c'}) {
      if (dirs[side].size() > 1) consistent = false;
    }
    bool complete_dirs = dirs['a'].size() == 1 && dirs['b'].size() == 1 && dirs['c'].size() == 1;
    if (!consistent) {
      r.direction_consistent = false;
      push_error(r.errors, "component holding tile " + std::to_string(min_id) +
                               " mixes directions for one side letter");
      info.type = ComponentType::other;
    } else if (!complete_dirs) {
      info.type = ComponentType::other;  // degenerate tiles carry no directions
    } else {
      const Vec2& da = *dirs['a'].begin();
      const Vec2& db = *dirs['b'].begin();
      const Vec2& dc = *dirs['c'].begin();
      if (dc == dir_bc && da == dir_ab && db == dir_c) {
        info.type = ComponentType::type1;
      } else if (dc == dir_ab && da == dir_bc && db == dir_a) {
        info.type = ComponentType::type2;
      } else if (dc == dir_ac && da == dir_c && db == dir_a) {
        info.type = ComponentType::type3;
      } else {
        info.type = ComponentType::other;
      }
    }
    const PlacedTile& first = t.tiles[members.front()];
    Vec2 u1 = first.vg - first.vb;
    Vec2 u2 = first.va - first.vg;
    QFNum det = cross(u1, u2);
    info.lattice_ok = det.sign() != 0;
    if (info.lattice_ok) {
      for (size_t m : members) {
        for (const Point* p : {&t.tiles[m].va, &t.tiles[m].vb, &t.tiles[m].vg}) {
          Vec2 w = *p - first.vb;
          if (!is_integer(cross(w, u2) / det) || !is_integer(cross(u1, w) / det)) {
            info.lattice_ok = false;
            break;
          }
        }
        if (!info.lattice_ok) break;
      }
    }
    r.components.push_back(std::move(info));
  }
  std::set<std::pair<int, int>> sync;
  for (const auto& line : arr.lines) {
    for (size_t k = 0; k + 1 < line.cuts.size(); ++k) {
      for (size_t pe : line.pos[k]) {
        for (size_t ne : line.neg[k]) {
          const EdgeInst& a = arr.edges[pe];
          const EdgeInst& b = arr.edges[ne];
          int ca = comp_of[a.tile], cb = comp_of[b.tile];
          if (ca == cb) continue;
          if (r.components[ca].type == ComponentType::other) continue;
          if (r.components[ca].type != r.components[cb].type) continue;
          if (a.side != b.side) continue;  // different lengths
          bool shares = a.p0 == b.p0 || a.p0 == b.p1 || a.p1 == b.p0 || a.p1 == b.p1;
          if (!shares) sync.emplace(std::min(ca, cb), std::max(ca, cb));
        }
      }
    }
  }
  r.out_of_sync.assign(sync.begin(), sync.end());
  return r;
}

SegmentReport segments(const Tiling& t) {
  SegmentReport r;
  Arrangement arr = build_arrangement(t);
  if (arr.orient == 0) return r;
  r.checks_apply = !t.spec.divisible;
  for (const auto& line : arr.lines) {
    bool frame_line = false;
    for (int s = 0; s < 3; ++s) {
      if (linekey_eq(line.key, arr.frame_key[s])) frame_line = true;
    }
    if (frame_line) continue;
    size_t k = 0;
    size_t n = line.cuts.empty() ? 0 : line.cuts.size() - 1;
    while (k < n) {
      if (line.pos[k].empty() && line.neg[k].empty()) {
        ++k;
        continue;
      }
      size_t start = k;
      std::set<size_t> edge_set;
      while (k < n && (!line.pos[k].empty() || !line.neg[k].empty())) {
        for (size_t e : line.pos[k]) edge_set.insert(e);
        for (size_t e : line.neg[k]) edge_set.insert(e);
        ++k;
      }
      MaximalSegment seg;
      seg.p0 = line.pts[start];
      seg.p1 = line.pts[k];
      if (!Vec2Less{}(seg.p0, seg.p1)) std::swap(seg.p0, seg.p1);
      for (size_t eid : edge_set) {
        const EdgeInst& e = arr.edges[eid];
        SegmentSide& side = e.body > 0 ? seg.pos : seg.neg;
        if (e.side == 'a') ++side.a;
        if (e.side == 'b') ++side.b;
        if (e.side == 'c') ++side.c;
      }
      seg.essential = !(seg.pos == seg.neg);
      if (seg.essential) ++r.essential_count;
      if (r.checks_apply) {
        long long diff = seg.pos.b - seg.neg.b;
        if (diff % t.spec.K != 0) r.b_difference_ok = false;
        bool pure_pos = seg.pos.b > 0 && seg.pos.a == 0 && seg.pos.c == 0 &&
                        (seg.neg.a > 0 || seg.neg.c > 0);
        bool pure_neg = seg.neg.b > 0 && seg.neg.a == 0 && seg.neg.c == 0 &&
                        (seg.pos.a > 0 || seg.pos.c > 0);
        if (pure_pos || pure_neg) {
          QFNum bound(t.spec.K * t.spec.b_scaled);
          if ((norm2(seg.p1 - seg.p0) - bound * bound).sign() < 0) r.b_run_length_ok = false;
        }
      }
      r.segments.push_back(std::move(seg));
    }
  }
  return r;
}

SpecialVertexReport find_special_vertices(const Tiling& t) {
  SpecialVertexReport r;
  Arrangement arr = build_arrangement(t);
  if (arr.orient == 0) {
    for (const auto& e : arr.errors) r.notes.push_back(e);
    return r;
  }
  auto verts = collect_corners(t, arr);
  ComponentReport comp = components(t);
  std::vector<ComponentType> type_of(t.tiles.size(), ComponentType::other);
  {
    std::map<long long, size_t> index_of_id;
    for (size_t i = 0; i < t.tiles.size(); ++i) index_of_id[t.tiles[i].id] = i;
    for (const ComponentInfo& c : comp.components) {
      for (long long id : c.tiles) type_of[index_of_id[id]] = c.type;
    }
  }
  auto is_center = [&](const Point& p) {
    auto it = verts.find(p);
    return it != verts.end() && it->second.na == 0 && it->second.nb == 1 &&
           it->second.ng == 3 && locate(arr, p) == 0;
  };
  for (auto it = verts.begin(); it != verts.end(); ++it) {
    if (is_center(it->first)) r.centers.push_back(it->first);
  }

  Shape shape(t.spec);
  Vec2 dir_a = shape.direction(2, 0);
  Vec2 dir_c = shape.direction(3, 1);
  Vec2 key_a = undirected_key(dir_a);
  Vec2 key_c = undirected_key(dir_c);

  // Suspicious edges: on a Direction A or C line, a b edge facing an a or c
  // edge across the same stretch, the two tiles sharing the upper endpoint.
  std::set<std::pair<size_t, size_t>> seen;
  for (const auto& line : arr.lines) {
    Vec2 k = undirected_key(line.dir);
    if (!(k == key_a || k == key_c)) continue;
    for (size_t iv = 0; iv + 1 < line.cuts.size(); ++iv) {
      for (size_t pe : line.pos[iv]) {
        for (size_t ne : line.neg[iv]) {
          if (!seen.emplace(std::min(pe, ne), std::max(pe, ne)).second) continue;
          const EdgeInst& a = arr.edges[pe];
          const EdgeInst& b = arr.edges[ne];
          bool ab = a.side == 'b' && (b.side == 'a' || b.side == 'c');
          bool ba = b.side == 'b' && (a.side == 'a' || a.side == 'c');
          if (!ab && !ba) continue;
          QFNum olo = (a.t0 - b.t0).sign() > 0 ? a.t0 : b.t0;
          QFNum ohi = (a.t1 - b.t1).sign() < 0 ? a.t1 : b.t1;
          if ((olo - ohi).sign() >= 0) continue;
          Point plo = (olo - a.t0).sign() == 0 ? a.p0 : b.p0;
          Point phi = (ohi - a.t1).sign() == 0 ? a.p1 : b.p1;
          Point upper = (plo.y - phi.y).sign() > 0 ? plo : phi;
          Point lower = (plo.y - phi.y).sign() > 0 ? phi : plo;
          bool a_has = upper == a.p0 || upper == a.p1;
          bool b_has = upper == b.p0 || upper == b.p1;
          if (!a_has || !b_has) continue;
          SuspiciousEdge s;
          s.p = upper;
          s.q = lower;
          s.tile_b = t.tiles[ab ? a.tile : b.tile].id;
          s.tile_ac = t.tiles[ab ? b.tile : a.tile].id;
          r.suspicious.push_back(s);
        }
      }
    }
  }

  // Stars: edges GF in Direction A and HF in Direction C meeting at F with
  // only Type I / II tiles immediately above them, some tile at F outside
  // those types, and F not a center.
  std::map<Point, std::vector<Point>, Vec2Less> heads_a, heads_c;
  for (const EdgeInst& e : arr.edges) {
    struct End { const Point* f; const Point* w; };
    for (const End& end : {End{&e.p1, &e.p0}, End{&e.p0, &e.p1}}) {
      Vec2 d = *end.f - *end.w;
      if (cross(d, dir_a).sign() == 0 && dot(d, dir_a).sign() > 0) {
        heads_a[*end.f].push_back(*end.w);
      }
      if (cross(d, dir_c).sign() == 0 && dot(d, dir_c).sign() > 0) {
        heads_c[*end.f].push_back(*end.w);
      }
    }
  }
  // All tiles immediately above segment [u, v] are Type I or II; `found_b`
  // reports whether a b edge lies above it.
  auto above_ok = [&](const Point& u, const Point& v, bool* found_b) {
    auto it = arr.index.find(line_through(u, v));
    if (it == arr.index.end()) return true;
    const LineRec& line = arr.lines[it->second];
    // "Above" is the side of larger y; the eval gradient is the left
    // normal of `dir`, so above is body > 0 when dir points to positive x.
    bool flip = line.dir.x.sign() < 0;
    QFNum tu = dot(u, line.dir), tv = dot(v, line.dir);
    QFNum lo = (tu - tv).sign() < 0 ? tu : tv;
    QFNum hi = (tu - tv).sign() < 0 ? tv : tu;
    bool ok = true;
    for (size_t eid : line.edge_ids) {
      const EdgeInst& e = arr.edges[eid];
      QFNum olo = (e.t0 - lo).sign() > 0 ? e.t0 : lo;
      QFNum ohi = (e.t1 - hi).sign() < 0 ? e.t1 : hi;
      if ((olo - ohi).sign() >= 0) continue;
      int above = flip ? -1 : 1;
      if (e.body != above) continue;
      if (e.side == 'b') *found_b = true;
      ComponentType ct = type_of[static_cast<size_t>(e.tile)];
      if (ct != ComponentType::type1 && ct != ComponentType::type2) ok = false;
    }
    return ok;
  };
  std::set<Point, Vec2Less> stars;
  for (const auto& [f, entry] : verts) {
    auto ha = heads_a.find(f);
    auto hc = heads_c.find(f);
    if (ha == heads_a.end() || hc == heads_c.end()) continue;
    bool bad_at_f = false;
    for (size_t ti : entry.tiles) {
      ComponentType ct = type_of[ti];
      if (ct != ComponentType::type1 && ct != ComponentType::type2) bad_at_f = true;
    }
    if (!bad_at_f || is_center(f)) continue;
    for (const Point& g : ha->second) {
      for (const Point& h : hc->second) {
        bool b_gf = false, b_fh = false;
        if (!above_ok(g, f, &b_gf)) continue;
        if (!above_ok(f, h, &b_fh)) continue;
        if (b_gf && b_fh) stars.insert(f);
      }
    }
  }
  r.stars.assign(stars.begin(), stars.end());
  std::sort(r.centers.begin(), r.centers.end(), Vec2Less{});
  return r;
}

}  // namespace tritile
