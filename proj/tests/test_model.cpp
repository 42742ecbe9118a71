#include <doctest.h>

#include "tritile/model.hpp"

using namespace tritile;

namespace {

const TileSpec kSpec28 = derive_tile(2, 4);

QFNum rat(long long n, long long d = 1) { return QFNum(make_rational(n, d)); }

}  // namespace

TEST_CASE("canonical frame, shape (2,4)") {
  Tiling f = make_frame(kSpec28);
  CHECK(f.A == Point{rat(0), rat(0)});
  CHECK(f.C == Point{rat(48), rat(0)});
  CHECK(f.B.x == rat(34));
  CHECK(f.B.y == QFNum(0, make_rational(7), 60));

  // Frame side lengths: |AB| = K^3, |AC| = K(K^2-M^2), |BC| = MN.
  CHECK(norm2(f.B - f.A) == rat(64 * 64));
  CHECK(norm2(f.C - f.A) == rat(48 * 48));
  CHECK(norm2(f.B - f.C) == rat(56 * 56));

  // A -> C -> B is counterclockwise.
  CHECK(qf_sign(cross(f.C - f.A, f.B - f.A)) > 0);
}

TEST_CASE("tile side bookkeeping") {
  CHECK(side_between('b', 'g') == 'a');
  CHECK(side_between('a', 'g') == 'b');
  CHECK(side_between('a', 'b') == 'c');
  CHECK(side_between('g', 'a') == 'b');
  CHECK_THROWS_AS(side_between('a', 'a'), std::invalid_argument);
  CHECK(side_length(kSpec28, 'a') == 8);
  CHECK(side_length(kSpec28, 'b') == 12);
  CHECK(side_length(kSpec28, 'c') == 16);
}

TEST_CASE("placing a tile on a labeled edge") {
  Shape shape(kSpec28);
  // c edge from alpha at origin to beta at (16,0); the third vertex is at
  // alpha's other side (length b) rotated by alpha from the edge direction.
  PlacedTile t = place_tile_left(shape, 0, {rat(0), rat(0)}, 'a', {rat(16), rat(0)}, 'b');
  CHECK(t.va == Point{rat(0), rat(0)});
  CHECK(t.vb == Point{rat(16), rat(0)});
  CHECK(t.vg == Point{rat(21, 2), QFNum(0, make_rational(3, 4), 60)});
  CHECK(tile_congruent(kSpec28, t));
  CHECK(qf_sign(signed_area(t)) > 0);

  // The reversed labeling puts gamma at the other end.
  PlacedTile u = place_tile_left(shape, 1, {rat(0), rat(0)}, 'b', {rat(16), rat(0)}, 'a');
  CHECK(u.vb == Point{rat(0), rat(0)});
  CHECK(u.va == Point{rat(16), rat(0)});
  CHECK(tile_congruent(kSpec28, u));

  // Edge length must match the labels.
  CHECK_THROWS_AS(place_tile_left(shape, 2, {rat(0), rat(0)}, 'a', {rat(15), rat(0)}, 'b'),
                  std::invalid_argument);

  // Placing on the other side of the same edge gives the mirror chirality:
  // the labeled orientation va -> vb -> vg flips, so signed area is negative.
  PlacedTile m = place_tile_left(shape, 3, {rat(16), rat(0)}, 'b', {rat(0), rat(0)}, 'a');
  CHECK(tile_congruent(kSpec28, m));
  CHECK(qf_sign(signed_area(m)) < 0);
  CHECK(m.vg.y.sign() < 0);
}

TEST_CASE("edges carry the right labels") {
  Shape shape(kSpec28);
  PlacedTile t = place_tile_left(shape, 0, {rat(0), rat(0)}, 'a', {rat(16), rat(0)}, 'b');
  auto edges = edges_of(t);
  CHECK(edges[0].side == 'c');
  CHECK(norm2(edges[0].v - edges[0].u) == rat(256));
  CHECK(edges[1].side == 'a');
  CHECK(norm2(edges[1].v - edges[1].u) == rat(64));
  CHECK(edges[2].side == 'b');
  CHECK(norm2(edges[2].v - edges[2].u) == rat(144));
  CHECK(edges[1].label_u == 'b');
  CHECK(edges[1].label_v == 'g');
}

TEST_CASE("tile congruence rejects impostors") {
  Shape shape(kSpec28);
  PlacedTile t = place_tile_left(shape, 0, {rat(0), rat(0)}, 'a', {rat(16), rat(0)}, 'b');
  CHECK(tile_congruent(kSpec28, t));
  PlacedTile bad = t;
  bad.vg.x += rat(1, 1000000);
  CHECK_FALSE(tile_congruent(kSpec28, bad));
  PlacedTile degenerate{7, {rat(0), rat(0)}, {rat(16), rat(0)}, {rat(8), rat(0)}};
  CHECK_FALSE(tile_congruent(kSpec28, degenerate));
}

TEST_CASE("interchange format round trips bit-exactly") {
  Shape shape(kSpec28);
  Tiling t = make_frame(kSpec28);
  t.partial = true;
  t.tiles.push_back(place_tile_left(shape, 0, t.A, 'a', {rat(16), rat(0)}, 'b'));
  t.tiles.push_back(place_tile_left(shape, 1, {rat(16), rat(0)}, 'a', {rat(32), rat(0)}, 'b'));

  std::string text = write_tiling(t);
  Tiling u = read_tiling(text);
  CHECK(u.spec.N == 28);
  CHECK(u.partial);
  CHECK(u.tiles.size() == 2);
  CHECK(u.tiles[0] == t.tiles[0]);
  CHECK(u.tiles[1] == t.tiles[1]);
  CHECK(u.A == t.A);
  CHECK(u.B == t.B);
  CHECK(u.C == t.C);
  CHECK(write_tiling(u) == text);
}

TEST_CASE("strict reader rejects malformed input") {
  Shape shape(kSpec28);
  Tiling t = make_frame(kSpec28);
  t.partial = true;
  t.tiles.push_back(place_tile_left(shape, 0, t.A, 'a', {rat(16), rat(0)}, 'b'));
  std::string good = write_tiling(t);

  auto corrupt = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    s.replace(pos, from.size(), to);
    return s;
  };

  CHECK_THROWS_AS(read_tiling(corrupt("tritile 1", "tritile 2")), std::invalid_argument);
  CHECK_THROWS_AS(read_tiling(corrupt("N 28", "N 29")), std::invalid_argument);
  CHECK_THROWS_AS(read_tiling(corrupt("D 60", "D 61")), std::invalid_argument);
  CHECK_THROWS_AS(read_tiling(corrupt("scaled true", "scaled false")), std::invalid_argument);
  CHECK_THROWS_AS(read_tiling(corrupt("partial true", "colour pink")), std::invalid_argument);
  CHECK_THROWS_AS(read_tiling(corrupt("tiles 1", "tiles 2")), std::invalid_argument);
  CHECK_THROWS_AS(read_tiling(corrupt("tile 0", "tile 5")), std::invalid_argument);
  CHECK_THROWS_AS(read_tiling(corrupt("end", "end\nleftover 3")), std::invalid_argument);
  CHECK_THROWS_AS(read_tiling(corrupt("end\n", "")), std::invalid_argument);
  CHECK_THROWS_AS(read_tiling(corrupt("sqrt60", "sqrt59")), std::invalid_argument);

  // Reordered fields are rejected too.
  std::string swapped = good;
  auto pm = swapped.find("M 2\n");
  auto pk = swapped.find("K 4\n");
  REQUIRE(pm < pk);
  swapped.replace(pm, 4, "K 4\n");
  swapped.replace(pk, 4, "M 2\n");
  CHECK_THROWS_AS(read_tiling(swapped), std::invalid_argument);
}

TEST_CASE("file save and load") {
  Shape shape(kSpec28);
  Tiling t = make_frame(kSpec28);
  t.partial = true;
  t.tiles.push_back(place_tile_left(shape, 0, t.A, 'a', {rat(16), rat(0)}, 'b'));
  std::string path = "/tmp/tritile_model_test.tiling";
  save_tiling(t, path);
  Tiling u = load_tiling(path);
  CHECK(write_tiling(u) == write_tiling(t));
  CHECK_THROWS_AS(load_tiling("/nonexistent/nope.tiling"), std::runtime_error);
}
