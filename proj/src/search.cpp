#include "tritile/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

namespace tritile {

namespace {

int label_index(char label) { return label == 'a' ? 0 : label == 'b' ? 1 : 2; }

char third_label(char u, char w) {
  for (char l : {'a', 'b', 'g'}) {
    if (l != u && l != w) return l;
  }
  return 0;
}

std::vector<char> build_feasible(long long len, const TileSpec& spec) {
  std::vector<char> f(static_cast<size_t>(len) + 1, 0);
  f[0] = 1;
  long long sides[3] = {spec.a_scaled, spec.b_scaled, spec.c_scaled};
  for (long long r = 1; r <= len; ++r) {
    for (long long s : sides) {
      if (s <= r && f[r - s]) {
        f[r] = 1;
        break;
      }
    }
  }
  return f;
}

// Angles as integer multiples (k, q) of alpha/2 and pi/2. Because alpha is an
// irrational multiple of pi for every valid tile, (k, q) pairs represent
// angles exactly and uniquely; only strict comparisons need a float shadow.
using KQ = std::pair<long long, long long>;

KQ kq_sub(const KQ& a, const KQ& b) { return {a.first - b.first, a.second - b.second}; }

// Fill candidates at one frontier, in the fixed enumeration order: the side
// laid along the frontier ray (a, then b, then c); within a side, the smaller
// angle label at the sweep vertex first. `near` sits at the sweep vertex,
// `far` at the frontier-ray end of that side.
struct Candidate {
  char side, near_label, far_label;
};
constexpr Candidate kCandidates[6] = {
    {'a', 'b', 'g'}, {'a', 'g', 'b'}, {'b', 'a', 'g'},
    {'b', 'g', 'a'}, {'c', 'a', 'b'}, {'c', 'b', 'a'},
};

// One leg of the boundary walk, from `start` along `unit` for `len` units.
struct WalkLeg {
  Point start;
  Vec2 unit;
  long long len = 0;
};

// Walk directions B->A, A->C, C->B as (k, q) angles, the backward ray at each
// leg's starting corner, and the corner wedge they bound: beta at B, 2 alpha
// at A, alpha + beta at C.
constexpr KQ kWalkDir[3] = {{4, 2}, {0, 0}, {1, 1}};
constexpr KQ kCornerBehind[3] = {{1, 3}, {4, 0}, {0, 2}};

struct Ctx {
  TileSpec spec;
  Shape shape;
  Tiling frame;
  WalkLeg leg[3];  // B->A, A->C, C->B
  std::vector<char> feasible;
  SearchConfig cfg;
  double grid_cell = 1.0;
  long double half_alpha = 0, quarter_turn = 0;

  explicit Ctx(const TileSpec& s, const SearchConfig& c)
      : spec(s), shape(s), frame(make_frame(s)), cfg(c) {
    long long lens[3] = {s.Z_scaled, s.Y_scaled, s.X_scaled};
    Point corners[4] = {frame.B, frame.A, frame.C, frame.B};
    for (int i = 0; i < 3; ++i) {
      leg[i].start = corners[i];
      leg[i].len = lens[i];
      leg[i].unit = QFNum(make_rational(1, lens[i])) * (corners[i + 1] - corners[i]);
    }
    feasible = build_feasible(std::max({lens[0], lens[1], lens[2]}), s);
    grid_cell = static_cast<double>(s.c_scaled);
    half_alpha = asinl(static_cast<long double>(s.M) / (2.0L * static_cast<long double>(s.K)));
    quarter_turn = acosl(0.0L);
  }

  // Sign of a (k, q) angle; zero only at (0, 0), so the float shadow only
  // ever decides strict inequalities.
  int kq_sign(const KQ& a) const {
    if (a.first == 0 && a.second == 0) return 0;
    long double v = static_cast<long double>(a.first) * half_alpha +
                    static_cast<long double>(a.second) * quarter_turn;
    return v < 0 ? -1 : 1;
  }
};

// Signs of the point against the three oriented frame sides (interior > 0).
struct FramePos {
  int ac = 0, cb = 0, ba = 0;
  bool outside() const { return ac < 0 || cb < 0 || ba < 0; }
  bool on_boundary() const { return !outside() && (ac == 0 || cb == 0 || ba == 0); }
};

FramePos frame_position(const Ctx& ctx, const Point& p) {
  const Tiling& f = ctx.frame;
  return {qf_sign(cross(f.C - f.A, p - f.A)), qf_sign(cross(f.B - f.C, p - f.C)),
          qf_sign(cross(f.A - f.B, p - f.B))};
}

struct Budget {
  int n[3] = {0, 0, 0};
};

// Angular wedge of one tile corner: the tile spans its corner angle clockwise
// from `upper` to `lower` (both unit rays out of the corner point).
struct CornerRec {
  Vec2 upper, lower;
  char letter = 0;
  int tile = -1;
};

// A fully checked fill, ready to commit.
struct Placement {
  PlacedTile tile;
  std::vector<std::pair<Point, int>> angle_adds;
  KQ next_frontier{0, 0};
};

struct Worker {
  const Ctx& ctx;
  std::vector<PlacedTile> placed;
  std::vector<std::array<double, 4>> boxes;  // float-shadow bounds per tile
  std::map<Point, Budget, Vec2Less> angles;
  std::map<Point, std::vector<CornerRec>, Vec2Less> corners;
  std::map<std::pair<long, long>, std::vector<int>> grid;
  SearchStats stats;
  std::vector<std::pair<std::string, Tiling>> found;
  std::vector<Tiling> rejected;
  bool stop = false;
  bool limit_hit = false;

  explicit Worker(const Ctx& c) : ctx(c) {}
  Worker(const Worker&) = default;

  Point point_at(int seg, long long off) const {
    return ctx.leg[seg].start + QFNum(make_rational(off)) * ctx.leg[seg].unit;
  }

  void capacity(const Point& p, int out[3]) const {
    const Tiling& f = ctx.frame;
    if (p == f.A) {
      out[0] = 2, out[1] = 0, out[2] = 0;
    } else if (p == f.B) {
      out[0] = 0, out[1] = 1, out[2] = 0;
    } else if (p == f.C) {
      out[0] = 1, out[1] = 1, out[2] = 0;
    } else {
      out[0] = 1, out[1] = 1, out[2] = 1;
    }
  }

  bool budget_ok(const Point& p, int label) const {
    int cap[3];
    capacity(p, cap);
    auto it = angles.find(p);
    int used = it == angles.end() ? 0 : it->second.n[label];
    return used < cap[label];
  }

  std::vector<std::pair<long, long>> cells_of(const PlacedTile& t) const {
    double xs[3] = {t.va.x.value(), t.vb.x.value(), t.vg.x.value()};
    double ys[3] = {t.va.y.value(), t.vb.y.value(), t.vg.y.value()};
    double cell = ctx.grid_cell;
    double eps = 1e-6;  // float shadows only shortlist, so widen the box
    std::vector<std::pair<long, long>> out;
    long x0 = static_cast<long>(std::floor((std::min({xs[0], xs[1], xs[2]}) - eps) / cell));
    long x1 = static_cast<long>(std::floor((std::max({xs[0], xs[1], xs[2]}) + eps) / cell));
    long y0 = static_cast<long>(std::floor((std::min({ys[0], ys[1], ys[2]}) - eps) / cell));
    long y1 = static_cast<long>(std::floor((std::max({ys[0], ys[1], ys[2]}) + eps) / cell));
    for (long cx = x0; cx <= x1; ++cx) {
      for (long cy = y0; cy <= y1; ++cy) out.emplace_back(cx, cy);
    }
    return out;
  }

  static std::array<double, 4> box_of(const PlacedTile& t) {
    double xs[3] = {t.va.x.value(), t.vb.x.value(), t.vg.x.value()};
    double ys[3] = {t.va.y.value(), t.vb.y.value(), t.vg.y.value()};
    return {std::min({xs[0], xs[1], xs[2]}), std::max({xs[0], xs[1], xs[2]}),
            std::min({ys[0], ys[1], ys[2]}), std::max({ys[0], ys[1], ys[2]})};
  }

  bool overlaps_placed(const PlacedTile& t) const {
    // The float boxes only skip pairs separated by a clear margin; anything
    // close goes to the exact test.
    const double margin = 1e-6;
    std::array<double, 4> tb = box_of(t);
    std::vector<char> seen(placed.size(), 0);
    for (auto& c : cells_of(t)) {
      auto it = grid.find(c);
      if (it == grid.end()) continue;
      for (int idx : it->second) {
        if (seen[idx]) continue;
        seen[idx] = 1;
        const std::array<double, 4>& sb = boxes[idx];
        if (sb[0] > tb[1] + margin || tb[0] > sb[1] + margin || sb[2] > tb[3] + margin ||
            tb[2] > sb[3] + margin) {
          continue;
        }
        if (tiles_interiors_intersect(placed[idx], t)) return true;
      }
    }
    return false;
  }

  // Checks one fill candidate at vertex V with frontier ray `dir_f`; on
  // success fills `out`. Updates only the dead-end counters.
  bool try_fill(int seg, const Point& V, const KQ& frontier, const Vec2& dir_f,
                const Candidate& cand, Placement& out) {
    KQ next = kq_sub(frontier, Shape::angle_of_label(cand.near_label));
    if (ctx.kq_sign(kq_sub(next, kWalkDir[seg])) < 0) {
      ++stats.dead_angle;  // corner angle does not fit the open wedge
      return false;
    }
    int li_near = label_index(cand.near_label);
    if (!budget_ok(V, li_near)) {
      ++stats.dead_angle;
      return false;
    }
    QFNum len(make_rational(side_length(ctx.spec, cand.side)));
    Point P = V + len * dir_f;
    PlacedTile tile = place_tile_left(ctx.shape, static_cast<long long>(placed.size()), P,
                                      cand.far_label, V, cand.near_label);
    out.angle_adds.clear();
    out.angle_adds.emplace_back(V, li_near);
    char tl = third_label(cand.near_label, cand.far_label);
    for (auto [pt, lab] : {std::pair<const Point&, char>{P, cand.far_label},
                           std::pair<const Point&, char>{tile.vertex(tl), tl}}) {
      FramePos pos = frame_position(ctx, pt);
      if (pos.outside()) {
        ++stats.dead_overlap;
        return false;
      }
      if (pos.on_boundary()) {
        if (!budget_ok(pt, label_index(lab))) {
          ++stats.dead_angle;
          return false;
        }
        out.angle_adds.emplace_back(pt, label_index(lab));
      }
    }
    if (overlaps_placed(tile)) {
      ++stats.dead_overlap;
      return false;
    }
    out.tile = tile;
    out.next_frontier = next;
    return true;
  }

  // Unit ray from `from` toward `to`, where the edge spans `side`.
  Vec2 edge_ray(const Point& from, const Point& to, char side) const {
    return QFNum(make_rational(1, side_length(ctx.spec, side))) * (to - from);
  }

  void push_corner_recs(const PlacedTile& t, int idx) {
    const std::pair<const Point*, char> vs[3] = {{&t.va, 'a'}, {&t.vb, 'b'}, {&t.vg, 'g'}};
    for (int i = 0; i < 3; ++i) {
      auto [pt, lab] = vs[i];
      auto [p1, l1] = vs[(i + 1) % 3];
      auto [p2, l2] = vs[(i + 2) % 3];
      Vec2 r1 = edge_ray(*pt, *p1, side_between(lab, l1));
      Vec2 r2 = edge_ray(*pt, *p2, side_between(lab, l2));
      CornerRec rec;
      rec.letter = lab;
      rec.tile = idx;
      if (qf_sign(cross(r1, r2)) < 0) {
        rec.upper = r1, rec.lower = r2;
      } else {
        rec.upper = r2, rec.lower = r1;
      }
      corners[*pt].push_back(rec);
    }
  }

  void commit(const Placement& p) {
    for (auto& [pt, li] : p.angle_adds) ++angles[pt].n[li];
    int idx = static_cast<int>(placed.size());
    for (auto& c : cells_of(p.tile)) grid[c].push_back(idx);
    push_corner_recs(p.tile, idx);
    placed.push_back(p.tile);
    boxes.push_back(box_of(p.tile));
  }

  void uncommit(const Placement& p) {
    boxes.pop_back();
    placed.pop_back();
    for (const Point* pt : {&p.tile.va, &p.tile.vb, &p.tile.vg}) {
      auto it = corners.find(*pt);
      it->second.pop_back();
      if (it->second.empty()) corners.erase(it);
    }
    for (auto& c : cells_of(p.tile)) {
      auto it = grid.find(c);
      it->second.pop_back();
      if (it->second.empty()) grid.erase(it);
    }
    for (auto& [pt, li] : p.angle_adds) {
      auto it = angles.find(pt);
      if (--it->second.n[li] == 0 && it->second.n[0] == 0 && it->second.n[1] == 0 &&
          it->second.n[2] == 0) {
        angles.erase(it);
      }
    }
  }

  Tiling snapshot() const {
    Tiling t;
    t.spec = ctx.spec;
    t.A = ctx.frame.A;
    t.B = ctx.frame.B;
    t.C = ctx.frame.C;
    t.partial = true;
    t.tiles = placed;
    return t;
  }

  void emit() {
    Tiling t = snapshot();
    std::string key = canonicalize(t);
    found.emplace_back(std::move(key), std::move(t));
    if (ctx.cfg.emit == EmitMode::first) stop = true;
  }

  void dead_end() {
    ++stats.backtracks;
    if (ctx.cfg.record_rejected &&
        rejected.size() < static_cast<size_t>(std::max<long long>(ctx.cfg.max_rejected, 0))) {
      rejected.push_back(snapshot());
    }
  }

  // The vertex wedge is fully covered and the covering tile adjacent to the
  // walk direction has a boundary edge; advance along it.
  void advance(int seg, long long off, const Point& V) {
    Vec2 ahead = ctx.shape.direction(kWalkDir[seg].first, kWalkDir[seg].second);
    auto it = corners.find(V);
    const CornerRec* depart = nullptr;
    if (it != corners.end()) {
      for (const CornerRec& r : it->second) {
        if (r.lower == ahead) {
          depart = &r;
          break;
        }
      }
    }
    if (!depart) throw invariant_error("closed boundary vertex has no departing edge");
    const PlacedTile& t = placed[depart->tile];
    long long edge = 0;
    for (auto [pt, lab] : {std::pair<const Point*, char>{&t.va, 'a'},
                           {&t.vb, 'b'},
                           {&t.vg, 'g'}}) {
      if (*pt == V) continue;
      Vec2 d = *pt - V;
      if (qf_sign(cross(d, ahead)) == 0 && qf_sign(dot(d, ahead)) > 0) {
        edge = side_length(ctx.spec, side_between(depart->letter, lab));
        break;
      }
    }
    if (edge == 0) throw invariant_error("departing tile has no edge along the boundary");
    long long off2 = off + edge;
    long long rem = ctx.leg[seg].len - off2;
    if (rem < 0) throw invariant_error("boundary edge runs past the frame corner");
    if (!ctx.feasible[rem]) {
      ++stats.dead_length;
      if (!placed.empty()) dead_end();
      return;
    }
    if (off2 == ctx.leg[seg].len) {
      if (seg == 2) {
        emit();
        return;
      }
      step(seg + 1, 0, kCornerBehind[seg + 1]);
    } else {
      step(seg, off2, {kWalkDir[seg].first, kWalkDir[seg].second + 2});
    }
  }

  // One sweep state: vertex (seg, off) with angular frontier F (clockwise
  // edge of the covered wedge, counted from the backward boundary ray).
  void step(int seg, long long off, KQ F) {
    if (stop) return;
    Point V = point_at(seg, off);
    // Absorb already-placed corners whose wedge starts on the frontier.
    for (bool matched = true; matched;) {
      matched = false;
      Vec2 dir_f = ctx.shape.direction(F.first, F.second);
      auto it = corners.find(V);
      if (it == corners.end()) continue;
      for (const CornerRec& r : it->second) {
        if (r.upper == dir_f) {
          F = kq_sub(F, Shape::angle_of_label(r.letter));
          matched = true;
          break;
        }
      }
    }
    if (F == kWalkDir[seg]) {
      advance(seg, off, V);
      return;
    }
    if (ctx.cfg.max_nodes > 0 && stats.nodes >= ctx.cfg.max_nodes) {
      limit_hit = true;
      stop = true;
      return;
    }
    ++stats.nodes;
    Vec2 dir_f = ctx.shape.direction(F.first, F.second);
    bool any_child = false;
    Placement p;
    for (const Candidate& cand : kCandidates) {
      ++stats.placements;
      if (!try_fill(seg, V, F, dir_f, cand, p)) continue;
      any_child = true;
      commit(p);
      step(seg, off, p.next_frontier);
      uncommit(p);
      if (stop) return;
    }
    if (!any_child && !placed.empty()) dead_end();
  }
};

void add_stats(SearchStats& into, const SearchStats& from) {
  into.nodes += from.nodes;
  into.placements += from.placements;
  into.backtracks += from.backtracks;
  into.dead_length += from.dead_length;
  into.dead_angle += from.dead_angle;
  into.dead_overlap += from.dead_overlap;
}

int resolve_threads(const SearchConfig& cfg) {
  int t = cfg.threads;
  if (t <= 0) {
    t = 1;
    if (const char* env = std::getenv("TRITILE_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) t = v;
    }
  }
  return t;
}

}  // namespace

bool prune_length_feasible(long long remaining, const TileSpec& spec) {
  if (remaining < 0) return false;
  return build_feasible(remaining, spec)[remaining] != 0;
}

std::string canonicalize(const Tiling& partial) {
  std::vector<std::string> lines;
  lines.reserve(partial.tiles.size());
  for (const PlacedTile& t : partial.tiles) {
    std::ostringstream os;
    for (const Point* p : {&t.va, &t.vb, &t.vg}) {
      os << p->x.to_string() << ',' << p->y.to_string() << ';';
    }
    lines.push_back(os.str());
  }
  std::sort(lines.begin(), lines.end());
  std::string key;
  for (const std::string& l : lines) {
    key += l;
    key += '\n';
  }
  return key;
}

SearchOutcome boundary_search(const TileSpec& spec, const SearchConfig& config) {
  Ctx ctx(spec, config);
  int threads = resolve_threads(config);
  // Stats must match the single-threaded reference exactly, so subtree
  // splitting is only used when every branch is explored in full.
  bool splittable = config.emit == EmitMode::all && config.max_nodes == 0;
  if (!splittable) threads = 1;

  SearchOutcome out;
  std::vector<std::pair<std::string, Tiling>> found;

  if (threads <= 1) {
    Worker w(ctx);
    w.step(0, 0, kCornerBehind[0]);
    out.stats = w.stats;
    found = std::move(w.found);
    out.rejected = std::move(w.rejected);
    out.node_limit_hit = w.limit_hit;
    out.exhausted = !w.stop && !w.limit_hit;
  } else {
    // Split at the first decision level: expand the root state once, then
    // explore each viable branch in its own worker; merge in branch order.
    Worker root(ctx);
    ++root.stats.nodes;
    Point B = root.point_at(0, 0);
    Vec2 dir_f = ctx.shape.direction(kCornerBehind[0].first, kCornerBehind[0].second);
    std::vector<std::pair<Worker, KQ>> branches;
    for (const Candidate& cand : kCandidates) {
      ++root.stats.placements;
      Placement p;
      if (!root.try_fill(0, B, kCornerBehind[0], dir_f, cand, p)) continue;
      Worker child = root;
      child.stats = SearchStats{};
      child.commit(p);
      branches.emplace_back(std::move(child), p.next_frontier);
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(branches.size());
    for (size_t i = 0; i < branches.size(); ++i) {
      pool.emplace_back([&, i] {
        try {
          branches[i].first.step(0, 0, branches[i].second);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    out.stats = root.stats;
    for (auto& [w, f] : branches) {
      add_stats(out.stats, w.stats);
      for (auto& fo : w.found) found.push_back(std::move(fo));
      for (auto& r : w.rejected) {
        if (out.rejected.size() < static_cast<size_t>(std::max<long long>(config.max_rejected, 0)))
          out.rejected.push_back(std::move(r));
      }
    }
    out.exhausted = true;
  }

  std::sort(found.begin(), found.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  found.erase(std::unique(found.begin(), found.end(),
                          [](const auto& x, const auto& y) { return x.first == y.first; }),
              found.end());
  out.found.reserve(found.size());
  for (auto& f : found) out.found.push_back(std::move(f.second));
  return out;
}

}  // namespace tritile
