#include "tritile/construct.hpp"

namespace tritile {

namespace {

QFNum rat(long long v) { return QFNum(make_rational(v)); }

Point lattice_point(const QuadraticFrame& f, long long n, long long i, long long j) {
  QFNum fi = make_rational(i, n), fj = make_rational(j, n);
  return f.pa + fi * (f.pb - f.pa) + fj * (f.pg - f.pa);
}

}  // namespace

std::vector<PlacedTile> quadratic_tiling(const Shape& shape, long long n,
                                         const QuadraticFrame& frame, long long first_id) {
  const TileSpec& spec = shape.spec();
  if (n < 1) throw std::invalid_argument("quadratic_tiling: n must be positive");
  auto sq = [](long long v) { return QFNum(make_rational(v * v)); };
  if (norm2(frame.pb - frame.pa) != sq(n * spec.c_scaled) ||
      norm2(frame.pg - frame.pa) != sq(n * spec.b_scaled) ||
      norm2(frame.pb - frame.pg) != sq(n * spec.a_scaled))
    throw std::invalid_argument("quadratic_tiling: frame is not the n-scaled tile");

  std::vector<PlacedTile> tiles;
  tiles.reserve(n * n);
  long long id = first_id;
  for (long long j = 0; j < n; ++j)
    for (long long i = 0; i + j < n; ++i) {
      PlacedTile up;
      up.id = id++;
      up.va = lattice_point(frame, n, i, j);
      up.vb = lattice_point(frame, n, i + 1, j);
      up.vg = lattice_point(frame, n, i, j + 1);
      if (!tile_congruent(spec, up)) throw invariant_error("quadratic_tiling: bad upright tile");
      tiles.push_back(up);
      if (i + j <= n - 2) {
        PlacedTile inv;
        inv.id = id++;
        inv.va = lattice_point(frame, n, i + 1, j + 1);
        inv.vb = lattice_point(frame, n, i, j + 1);
        inv.vg = lattice_point(frame, n, i + 1, j);
        if (!tile_congruent(spec, inv))
          throw invariant_error("quadratic_tiling: bad inverted tile");
        tiles.push_back(inv);
      }
    }
  if (static_cast<long long>(tiles.size()) != n * n)
    throw invariant_error("quadratic_tiling: tile count is not n^2");
  return tiles;
}

Point line_intersection(const Point& p1, const Point& p2, const Point& p3, const Point& p4) {
  Vec2 d1 = p2 - p1, d2 = p4 - p3;
  QFNum den = cross(d1, d2);
  if (qf_sign(den) == 0) throw invariant_error("line_intersection: parallel lines");
  QFNum t = cross(p3 - p1, d2) / den;
  return p1 + t * d1;
}

TriquadraticPlan triquadratic_plan(long long M, long long K) {
  TileSpec spec = derive_tile(M, K);
  if (!spec.divisible)
    throw std::invalid_argument("triquadratic: requires K | M^2 (no such tiling otherwise)");
  Shape shape(spec);
  TriquadraticPlan plan;
  plan.spec = spec;
  plan.J = spec.J;
  plan.b_units = K - spec.J;
  Tiling frame = make_frame(spec);
  plan.Q = frame.A + rat(K * plan.b_units * plan.b_units) * shape.direction(2, 0);
  plan.D = frame.A + rat(plan.b_units * spec.c_scaled) * shape.direction(4, 0);
  plan.E = frame.C + rat(M * spec.c_scaled) * shape.direction(1, 1);
  plan.count_a2 = M * M;
  plan.count_b2 = plan.b_units * plan.b_units;
  plan.count_strip = 2 * plan.b_units * plan.J;
  return plan;
}

Tiling triquadratic(long long M, long long K) {
  TriquadraticPlan plan = triquadratic_plan(M, K);
  const TileSpec& spec = plan.spec;
  Shape shape(spec);
  Tiling t = make_frame(spec);
  long long bu = plan.b_units, J = plan.J;

  // Triple-entry check on B: the frame formula, the parallelogram identity
  // B = D + E - Q, and the intersection of lines AD and CE must agree.
  if (t.B != plan.D + plan.E - plan.Q)
    throw invariant_error("triquadratic: B != D + E - Q");
  if (t.B != line_intersection(t.A, plan.D, t.C, plan.E))
    throw invariant_error("triquadratic: B is not on lines AD and CE");

  // a^2 region: alpha corner at C, beta at E (on CB), gamma at Q.
  auto tiles = quadratic_tiling(shape, M, {t.C, plan.E, plan.Q}, 0);

  // First b^2 region: alpha at A, beta at C, gamma at Q.
  auto b1 = quadratic_tiling(shape, bu, {t.A, t.C, plan.Q}, tiles.size());
  tiles.insert(tiles.end(), b1.begin(), b1.end());

  // Second b^2 region, the mirror image across the bisector AQ: beta at D.
  auto b2 = quadratic_tiling(shape, bu, {t.A, plan.D, plan.Q}, tiles.size());
  tiles.insert(tiles.end(), b2.begin(), b2.end());

  // Strip lattice: P(i,j) = Q + i a u_v + j c u_u with u_v toward D and
  // u_u toward E; P(bu, 0) = D, P(0, J) = E, P(bu, J) = B.
  QFNum inv_qd = QFNum(make_rational(1, bu * spec.a_scaled));
  QFNum inv_qe = QFNum(make_rational(1, J * spec.c_scaled));
  Vec2 u_v = inv_qd * (plan.D - plan.Q);
  Vec2 u_u = inv_qe * (plan.E - plan.Q);
  if (u_v != shape.direction(1, 1) || u_u != shape.direction(4, 0))
    throw invariant_error("triquadratic: strip basis is not (gamma, 2 alpha)");
  auto P = [&](long long i, long long j) {
    return plan.Q + rat(i * spec.a_scaled) * u_v + rat(j * spec.c_scaled) * u_u;
  };
  if (P(bu, 0) != plan.D || P(0, J) != plan.E || P(bu, J) != t.B)
    throw invariant_error("triquadratic: strip lattice misses D, E or B");

  long long id = tiles.size();
  for (long long i = bu - 1; i >= 0; --i)
    for (long long j = 0; j < J; ++j) {
      // Each (a x c) cell has acute angle beta and short diagonal b; the cut
      // along the diagonal gives two tiles of opposite orientation.
      PlacedTile lower;
      lower.id = id++;
      lower.va = P(i, j + 1);
      lower.vb = P(i, j);
      lower.vg = P(i + 1, j);
      PlacedTile upper;
      upper.id = id++;
      upper.va = P(i + 1, j);
      upper.vb = P(i + 1, j + 1);
      upper.vg = P(i, j + 1);
      if (!tile_congruent(spec, lower) || !tile_congruent(spec, upper))
        throw invariant_error("triquadratic: strip cell tiles are not congruent");
      tiles.push_back(lower);
      tiles.push_back(upper);
    }

  if (static_cast<long long>(tiles.size()) != spec.N)
    throw invariant_error("triquadratic: tile count differs from N");
  t.tiles = std::move(tiles);
  t.partial = false;
  return t;
}

}  // namespace tritile
