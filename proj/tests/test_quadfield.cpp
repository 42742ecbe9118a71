#include <doctest.h>

#include <random>
#include <thread>
#include <vector>

#include "tritile/quadfield.hpp"

using namespace tritile;

namespace {

const TileSpec kSpec28 = derive_tile(2, 4);  // D = 60

QFNum qf(long long pn, long long pd, long long qn, long long qd, long long D) {
  return QFNum(make_rational(pn, pd), make_rational(qn, qd), D);
}

}  // namespace

TEST_CASE("rational construction canonicalizes") {
  CHECK(make_rational(2, 6) == make_rational(1, 3));
  CHECK(make_rational(-2, -6) == make_rational(1, 3));
  CHECK(make_rational(2, -6) == make_rational(-1, 3));
  CHECK(rational_from_string("14/21") == make_rational(2, 3));
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("x/3"), std::invalid_argument);
}

TEST_CASE("quadratic field arithmetic, D = 60") {
  QFNum a = qf(-7, 1, 1, 1, 60);  // sqrt(60) - 7 > 0
  QFNum b = qf(-8, 1, 1, 1, 60);  // sqrt(60) - 8 < 0
  CHECK(qf_sign(a) == 1);
  CHECK(qf_sign(b) == -1);
  CHECK(qf_sign(a + b - a - b) == 0);

  // Conjugate product is the rational norm.
  QFNum conj = qf(-7, 1, -1, 1, 60);
  CHECK(a * conj == QFNum(make_rational(-11)));

  // cos^2(alpha/2) = D / (4 K^2) = 15/16 for (M,K) = (2,4).
  QFNum half_cos = qf(0, 1, 1, 8, 60);
  CHECK(half_cos * half_cos == QFNum(make_rational(15, 16)));

  CHECK_THROWS_AS(a / QFNum(0), std::domain_error);
  CHECK((a / b) * b == a);
}

TEST_CASE("field axioms on random values") {
  std::mt19937_64 rng(20260816);
  std::uniform_int_distribution<long long> num(-50, 50), den(1, 20);
  auto rnd = [&] { return qf(num(rng), den(rng), num(rng), den(rng), 60); };
  for (int i = 0; i < 2000; ++i) {
    QFNum a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * (b * c) == (a * b) * c);
    CHECK(a + b == b + a);
    CHECK(a - a == QFNum(0));
    if (qf_sign(b) != 0) CHECK((a / b) * b == a);
  }
}

TEST_CASE("sign decisions on continued-fraction convergents of sqrt(60)") {
  // Surd expansion of sqrt(60): m,d,a recurrence; convergents h/k alternate
  // around sqrt(60), so h - k sqrt(60) alternates in sign starting negative.
  long long m = 0, d = 1, a = 7;
  long long h0 = 1, h1 = a, k0 = 0, k1 = 1;
  int expected = -1;
  for (int i = 0; i < 14; ++i) {
    QFNum v = qf(h1, 1, -k1, 1, 60);
    CAPTURE(i);
    CHECK(qf_sign(v) == expected);
    // Float shadow agrees whenever it is clearly nonzero.
    long double shadow = v.value_ld();
    if (shadow > 1e-12L || shadow < -1e-12L) CHECK((shadow > 0 ? 1 : -1) == expected);
    m = d * a - m;
    d = (60 - m * m) / d;
    a = (7 + m) / d;
    long long h2 = a * h1 + h0, k2 = a * k1 + k0;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    expected = -expected;
  }
}

TEST_CASE("half-alpha rotation and derived trig values") {
  Shape shape(kSpec28);
  const Rotation& r = shape.half_alpha();
  CHECK(r.c == qf(0, 1, 1, 8, 60));
  CHECK(r.s == QFNum(make_rational(1, 4)));

  // direction(2,0) = (cos alpha, sin alpha) = (N/(2K^2), M sqrt(D)/(2K^2)).
  Vec2 d20 = shape.direction(2, 0);
  CHECK(d20.x == QFNum(make_rational(7, 8)));
  CHECK(d20.y == qf(0, 1, 1, 16, 60));

  // direction(4,0) = (cos 2alpha, sin 2alpha); cos 2alpha = 17/32.
  Vec2 d40 = shape.direction(4, 0);
  CHECK(d40.x == QFNum(make_rational(17, 32)));
  CHECK(d40.y == qf(0, 1, 7, 64, 60));

  // beta direction: (sin(3a/2), cos(3a/2)) = (11/16, 3 sqrt(60)/32).
  Vec2 beta = shape.direction(-3, 1);
  CHECK(beta.x == QFNum(make_rational(11, 16)));
  CHECK(beta.y == qf(0, 1, 3, 32, 60));

  CHECK(shape.direction(0, 1) == Vec2{QFNum(0), QFNum(1)});
  CHECK(shape.direction(0, 2) == Vec2{QFNum(-1), QFNum(0)});
  CHECK(shape.direction(4, 2) == Vec2{-d40.x, -d40.y});
  CHECK(shape.direction(0, 7) == shape.direction(0, 3));

  // Composition identity: advancing k by 2 is one full alpha rotation.
  Rotation alpha = r.then(r);
  for (long long k : {-5, -1, 0, 3, 6}) {
    Vec2 v = shape.direction(k, 1);
    CHECK(alpha.apply(v) == shape.direction(k + 2, 1));
  }

  // All catalog directions are unit vectors.
  for (long long k = -6; k <= 6; ++k)
    for (long long q = 0; q < 4; ++q) CHECK(norm2(shape.direction(k, q)) == QFNum(1));

  CHECK_THROWS_AS(make_rotation(QFNum(1), QFNum(1)), invariant_error);
}

TEST_CASE("direction classification round trip and rejection") {
  Shape shape(kSpec28);
  for (long long k : {-7, -3, 0, 1, 2, 3, 4, 8})
    for (long long q = 0; q < 4; ++q) {
      auto got = shape.classify_direction(shape.direction(k, q));
      REQUIRE(got.has_value());
      CHECK(got->first == k);
      CHECK(got->second == q);
    }
  // (3/5, 4/5) is unit but not in the catalog: cos of even multiples of
  // alpha/2 has a power-of-two denominator, odd multiples are irrational.
  Vec2 bogus{QFNum(make_rational(3, 5)), QFNum(make_rational(4, 5))};
  CHECK_FALSE(shape.classify_direction(bogus).has_value());
  CHECK_FALSE(shape.classify_direction(bogus).has_value());  // cached miss
}

TEST_CASE("serialization round trips exactly") {
  QFNum a = qf(-7, 2, 1, 4, 60);
  CHECK(a.to_string() == "-7/2+1/4*sqrt60");
  CHECK(QFNum::from_string(a.to_string()) == a);
  CHECK(QFNum::from_string("-7/2+-1/4*sqrt60") == qf(-7, 2, -1, 4, 60));

  QFNum r(make_rational(5, 3));
  CHECK(r.to_string() == "5/3+0/1*sqrt0");
  CHECK(QFNum::from_string(r.to_string()) == r);

  // Perfect-square radicands fold into the rational part.
  QFNum folded = qf(1, 1, 1, 1, 49);
  CHECK(folded.is_rational());
  CHECK(folded.to_string() == "8/1+0/1*sqrt0");

  for (const char* bad : {"", "3/4", "1/2+3/4", "1/2+3/4*sqrt", "1/2+3/4*sqrt60x", "x+y*sqrt60"})
    CHECK_THROWS_AS(QFNum::from_string(bad), std::invalid_argument);

  // Round trip through strings is bit-exact.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> num(-1000, 1000), den(1, 997);
  for (int i = 0; i < 200; ++i) {
    QFNum x = qf(num(rng), den(rng), num(rng), den(rng), 60);
    QFNum y = QFNum::from_string(x.to_string());
    CHECK(y == x);
    CHECK(y.to_string() == x.to_string());
  }
}

TEST_CASE("direction memoization is usable concurrently") {
  Shape shape(kSpec28);
  Vec2 expect = shape.direction(5, 1);
  std::vector<std::thread> pool;
  std::vector<int> ok(4, 0);
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      int good = 0;
      for (int i = 0; i < 100; ++i)
        if (shape.direction(5, 1) == expect && shape.direction(-i % 7, i) ==
                                                   shape.direction(-i % 7, i % 4))
          ++good;
      ok[t] = good;
    });
  for (auto& th : pool) th.join();
  for (int t = 0; t < 4; ++t) CHECK(ok[t] == 100);
}

TEST_CASE("rational tile shapes (square D) degrade to plain rationals") {
  // (M,K) = (20,26): D = 2304 = 48^2, so the whole catalog is rational.
  TileSpec t = derive_tile(20, 26);
  CHECK(t.D == 2304);
  Shape shape(t);
  Vec2 d = shape.direction(1, 0);
  CHECK(d.x.is_rational());
  CHECK(d.x == QFNum(make_rational(12, 13)));
  CHECK(d.y == QFNum(make_rational(5, 13)));
  CHECK(norm2(d) == QFNum(1));
}
