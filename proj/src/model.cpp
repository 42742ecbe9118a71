#include "tritile/model.hpp"

#include <fstream>
#include <sstream>

namespace tritile {

const Point& PlacedTile::vertex(char label) const {
  switch (label) {
    case 'a': return va;
    case 'b': return vb;
    case 'g': return vg;
    default: throw std::invalid_argument("PlacedTile::vertex: label must be a/b/g");
  }
}

std::array<TileEdge, 3> edges_of(const PlacedTile& t) {
  return {TileEdge{'c', t.va, t.vb, 'a', 'b'},
          TileEdge{'a', t.vb, t.vg, 'b', 'g'},
          TileEdge{'b', t.va, t.vg, 'a', 'g'}};
}

long long side_length(const TileSpec& spec, char side) {
  switch (side) {
    case 'a': return spec.a_scaled;
    case 'b': return spec.b_scaled;
    case 'c': return spec.c_scaled;
    default: throw std::invalid_argument("side_length: side must be a/b/c");
  }
}

char side_between(char label1, char label2) {
  if (label1 == label2) throw std::invalid_argument("side_between: labels must differ");
  int mask = 0;
  for (char l : {label1, label2}) {
    if (l == 'a') mask |= 1;
    else if (l == 'b') mask |= 2;
    else if (l == 'g') mask |= 4;
    else throw std::invalid_argument("side_between: label must be a/b/g");
  }
  if (mask == 6) return 'a';  // beta-gamma
  if (mask == 5) return 'b';  // alpha-gamma
  return 'c';                 // alpha-beta
}

QFNum signed_area(const PlacedTile& t) {
  return cross(t.vb - t.va, t.vg - t.va) / QFNum(2);
}

bool tile_congruent(const TileSpec& spec, const PlacedTile& t) {
  auto sq = [](long long v) { return QFNum(make_rational(v * v)); };
  return norm2(t.vb - t.vg) == sq(spec.a_scaled) && norm2(t.va - t.vg) == sq(spec.b_scaled) &&
         norm2(t.va - t.vb) == sq(spec.c_scaled) && qf_sign(signed_area(t)) != 0;
}

bool tiles_interiors_intersect(const PlacedTile& s, const PlacedTile& t) {
  const Point* sp[3] = {&s.va, &s.vb, &s.vg};
  const Point* tp[3] = {&t.va, &t.vb, &t.vg};
  auto separated = [&](const Vec2& axis) {
    QFNum smin, smax, tmin, tmax;
    for (int i = 0; i < 3; ++i) {
      QFNum ps = dot(*sp[i], axis), pt = dot(*tp[i], axis);
      if (i == 0) {
        smin = smax = ps;
        tmin = tmax = pt;
      } else {
        if ((ps - smin).sign() < 0) smin = ps;
        if ((ps - smax).sign() > 0) smax = ps;
        if ((pt - tmin).sign() < 0) tmin = pt;
        if ((pt - tmax).sign() > 0) tmax = pt;
      }
    }
    return (smax - tmin).sign() <= 0 || (tmax - smin).sign() <= 0;
  };
  for (int i = 0; i < 3; ++i) {
    Vec2 es = *sp[(i + 1) % 3] - *sp[i];
    Vec2 et = *tp[(i + 1) % 3] - *tp[i];
    if (separated({QFNum(0) - es.y, es.x})) return false;
    if (separated({QFNum(0) - et.y, et.x})) return false;
  }
  return true;
}

Point frame_B(const TileSpec& spec) {
  long long N = spec.N, K = spec.K;
  return {QFNum(make_rational(N * N - 2 * K * K * K * K, 2 * K)),
          QFNum(0, make_rational(spec.M * N, 2 * K), spec.D)};
}

Tiling make_frame(const TileSpec& spec) {
  Tiling t;
  t.spec = spec;
  t.A = {QFNum(0), QFNum(0)};
  t.C = {QFNum(make_rational(spec.K * spec.b_scaled)), QFNum(0)};
  t.B = frame_B(spec);
  return t;
}

PlacedTile place_tile_left(const Shape& shape, long long id, const Point& U, char label_u,
                           const Point& W, char label_w) {
  const TileSpec& spec = shape.spec();
  char edge_side = side_between(label_u, label_w);
  long long len = side_length(spec, edge_side);
  Vec2 uw = W - U;
  if (norm2(uw) != QFNum(make_rational(len * len)))
    throw std::invalid_argument("place_tile_left: |UW| does not match the labeled side");
  Vec2 e{uw.x / QFNum(make_rational(len)), uw.y / QFNum(make_rational(len))};

  char label_3 = 0;
  for (char l : {'a', 'b', 'g'})
    if (l != label_u && l != label_w) label_3 = l;

  auto [k, q] = Shape::angle_of_label(label_u);
  Vec2 turn = shape.direction(k, q);
  Rotation rot{turn.x, turn.y};
  long long m = side_length(spec, side_between(label_u, label_3));
  Point V3 = U + QFNum(make_rational(m)) * rot.apply(e);

  PlacedTile t;
  t.id = id;
  auto assign = [&](char label, const Point& p) {
    if (label == 'a') t.va = p;
    else if (label == 'b') t.vb = p;
    else t.vg = p;
  };
  assign(label_u, U);
  assign(label_w, W);
  assign(label_3, V3);
  if (!tile_congruent(spec, t) || qf_sign(signed_area(t)) == 0)
    throw invariant_error("place_tile_left: constructed tile is not congruent");
  if (qf_sign(cross(uw, V3 - U)) <= 0)
    throw invariant_error("place_tile_left: third vertex not on the left");
  return t;
}

namespace {

std::string point_str(const Point& p) { return p.x.to_string() + " " + p.y.to_string(); }

}  // namespace

std::string write_tiling(const Tiling& t) {
  std::ostringstream out;
  out << "tritile 1\n";
  out << "N " << t.spec.N << "\n";
  out << "M " << t.spec.M << "\n";
  out << "K " << t.spec.K << "\n";
  out << "D " << t.spec.D << "\n";
  out << "scaled true\n";
  out << "partial " << (t.partial ? "true" : "false") << "\n";
  out << "A " << point_str(t.A) << "\n";
  out << "B " << point_str(t.B) << "\n";
  out << "C " << point_str(t.C) << "\n";
  out << "tiles " << t.tiles.size() << "\n";
  for (const PlacedTile& tile : t.tiles)
    out << "tile " << tile.id << " " << point_str(tile.va) << " " << point_str(tile.vb) << " "
        << point_str(tile.vg) << "\n";
  out << "end\n";
  return out.str();
}

namespace {

struct LineReader {
  std::istringstream in;
  long long lineno = 0;
  explicit LineReader(const std::string& text) : in(text) {}

  std::vector<std::string> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      std::vector<std::string> words;
      std::istringstream ls(line);
      std::string w;
      while (ls >> w) words.push_back(w);
      if (!words.empty()) return words;
    }
    throw std::invalid_argument("tiling file: unexpected end of input");
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("tiling file line " + std::to_string(lineno) + ": " + why);
  }
};

long long parse_ll(LineReader& r, const std::string& word) {
  try {
    size_t used = 0;
    long long v = std::stoll(word, &used);
    if (used != word.size()) r.fail("bad integer '" + word + "'");
    return v;
  } catch (const std::invalid_argument&) {
    r.fail("bad integer '" + word + "'");
  } catch (const std::out_of_range&) {
    r.fail("integer out of range '" + word + "'");
  }
}

long long expect_int_field(LineReader& r, const std::string& key) {
  auto words = r.next();
  if (words.size() != 2 || words[0] != key) r.fail("expected '" + key + " <integer>'");
  return parse_ll(r, words[1]);
}

QFNum parse_qf(LineReader& r, const std::string& word, long long D) {
  QFNum v;
  try {
    v = QFNum::from_string(word);
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  if (v.D() != 0 && v.D() != D) r.fail("coordinate radicand differs from header D");
  return v;
}

Point expect_point_field(LineReader& r, const std::string& key, long long D) {
  auto words = r.next();
  if (words.size() != 3 || words[0] != key) r.fail("expected '" + key + " <x> <y>'");
  return {parse_qf(r, words[1], D), parse_qf(r, words[2], D)};
}

}  // namespace

Tiling read_tiling(const std::string& text) {
  LineReader r(text);
  auto head = r.next();
  if (head.size() != 2 || head[0] != "tritile" || head[1] != "1")
    r.fail("expected 'tritile 1' header");

  long long N = expect_int_field(r, "N");
  long long M = expect_int_field(r, "M");
  long long K = expect_int_field(r, "K");
  long long D = expect_int_field(r, "D");
  TileSpec spec;
  try {
    spec = derive_tile(M, K);
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  if (spec.N != N) r.fail("N inconsistent with M, K");
  if (spec.D != D) r.fail("D inconsistent with M, K");

  auto scaled = r.next();
  if (scaled.size() != 2 || scaled[0] != "scaled" || scaled[1] != "true")
    r.fail("expected 'scaled true'");
  auto partial = r.next();
  if (partial.size() != 2 || partial[0] != "partial" ||
      (partial[1] != "true" && partial[1] != "false"))
    r.fail("expected 'partial true|false'");

  Tiling t;
  t.spec = spec;
  t.partial = partial[1] == "true";
  t.A = expect_point_field(r, "A", D);
  t.B = expect_point_field(r, "B", D);
  t.C = expect_point_field(r, "C", D);

  long long count = expect_int_field(r, "tiles");
  if (count < 0) r.fail("negative tile count");
  for (long long i = 0; i < count; ++i) {
    auto words = r.next();
    if (words.size() != 8 || words[0] != "tile") r.fail("expected 'tile <id> <6 coordinates>'");
    if (parse_ll(r, words[1]) != i) r.fail("tile ids must be 0..n-1 in order");
    PlacedTile tile;
    tile.id = i;
    tile.va = {parse_qf(r, words[2], D), parse_qf(r, words[3], D)};
    tile.vb = {parse_qf(r, words[4], D), parse_qf(r, words[5], D)};
    tile.vg = {parse_qf(r, words[6], D), parse_qf(r, words[7], D)};
    t.tiles.push_back(tile);
  }
  auto tail = r.next();
  if (tail.size() != 1 || tail[0] != "end") r.fail("expected 'end'");
  std::string extra;
  while (std::getline(r.in, extra))
    for (char ch : extra)
      if (!isspace(static_cast<unsigned char>(ch)))
        r.fail("content after 'end'");
  return t;
}

void save_tiling(const Tiling& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << write_tiling(t);
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

Tiling load_tiling(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_tiling(buf.str());
}

}  // namespace tritile
