#pragma once

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "tritile/numtheory.hpp"

// Exact arithmetic in Q(sqrt D) with D = 4K^2 - M^2, plus exact 2D points and
// rotations. Every direction that occurs in a tiling is k*(alpha/2) + q*(pi/2)
// for integers k, q, so rotations by alpha/2 and quarter turns generate all of
// them; `Shape` memoizes that catalog and can classify unit vectors back to
// (k, q) pairs.

namespace tritile {

using Rational = mpq_class;

// mpq_class does not canonicalize (num, den) constructions; these helpers do.
Rational make_rational(long long num, long long den = 1);
Rational rational_from_string(const std::string& text);

class QFNum {
 public:
  QFNum() : p_(0), q_(0) {}
  QFNum(const Rational& p) : p_(p), q_(0) {}  // NOLINT: implicit by design
  QFNum(long long p) : p_(make_rational(p)), q_(0) {}
  QFNum(const Rational& p, const Rational& q, long long D);

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }
  long long D() const { return D_; }
  bool is_rational() const { return sgn(q_) == 0; }

  // -1, 0, +1; exact (rational case split, else compare p^2 with q^2 D).
  int sign() const;

  double value() const;        // float shadow, for rendering and diagnostics
  long double value_ld() const;

  std::string to_string() const;  // "pnum/pden+qnum/qden*sqrtD", D=0 if rational
  static QFNum from_string(const std::string& text);

  friend QFNum operator+(const QFNum& a, const QFNum& b);
  friend QFNum operator-(const QFNum& a, const QFNum& b);
  friend QFNum operator*(const QFNum& a, const QFNum& b);
  friend QFNum operator/(const QFNum& a, const QFNum& b);
  QFNum operator-() const;
  QFNum& operator+=(const QFNum& b) { return *this = *this + b; }
  QFNum& operator-=(const QFNum& b) { return *this = *this - b; }
  QFNum& operator*=(const QFNum& b) { return *this = *this * b; }
  QFNum& operator/=(const QFNum& b) { return *this = *this / b; }
  bool operator==(const QFNum& b) const { return (*this - b).sign() == 0; }
  bool operator!=(const QFNum& b) const { return !(*this == b); }
  bool operator<(const QFNum& b) const { return (*this - b).sign() < 0; }
  bool operator<=(const QFNum& b) const { return (*this - b).sign() <= 0; }
  bool operator>(const QFNum& b) const { return (*this - b).sign() > 0; }
  bool operator>=(const QFNum& b) const { return (*this - b).sign() >= 0; }

 private:
  Rational p_, q_;
  long long D_ = 0;  // 0 when rational, else a positive non-square radicand
};

int qf_sign(const QFNum& x);
QFNum qf_abs(const QFNum& x);

struct Vec2 {
  QFNum x, y;
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2& o) const { return !(*this == o); }
};
using Point = Vec2;

Vec2 operator+(const Vec2& a, const Vec2& b);
Vec2 operator-(const Vec2& a, const Vec2& b);
Vec2 operator*(const QFNum& s, const Vec2& v);
QFNum cross(const Vec2& a, const Vec2& b);
QFNum dot(const Vec2& a, const Vec2& b);
QFNum norm2(const Vec2& v);

// Strict weak order (x, then y) for map keys.
struct Vec2Less {
  bool operator()(const Vec2& a, const Vec2& b) const;
};

// Exact rotation (cos, sin with cos^2 + sin^2 = 1).
struct Rotation {
  QFNum c, s;
  Vec2 apply(const Vec2& v) const { return {c * v.x - s * v.y, s * v.x + c * v.y}; }
  Rotation then(const Rotation& o) const {  // rotations commute
    return {c * o.c - s * o.s, s * o.c + c * o.s};
  }
  Rotation inverse() const { return {c, -s}; }
};

// Validates cos^2 + sin^2 = 1.
Rotation make_rotation(const QFNum& c, const QFNum& s);

// Rotation by alpha/2: cos = sqrt(D)/(2K), sin = M/(2K).
Rotation half_alpha_rotation(const TileSpec& spec);

// Tile-shape context: the direction catalog and its inverse.
class Shape {
 public:
  explicit Shape(const TileSpec& spec);

  const TileSpec& spec() const { return spec_; }
  const Rotation& half_alpha() const { return half_; }

  // Unit vector at angle k*(alpha/2) + q*(pi/2). Memoized; thread-safe.
  Vec2 direction(long long k, long long q) const;

  // Inverse of `direction` on unit vectors, growing the catalog as needed
  // (|k| up to 256). nullopt means "not a catalog direction".
  std::optional<std::pair<long long, long long>> classify_direction(const Vec2& unit) const;

  // Tile corner angles as (k, q) pairs: alpha = (2,0), beta = (-3,1)
  // (beta = pi/2 - 3 alpha/2), gamma = (1,1) (gamma = pi/2 + alpha/2).
  static std::pair<long long, long long> angle_of_label(char label);

 private:
  Vec2 direction_locked(long long k, long long q) const;

  TileSpec spec_;
  Rotation half_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<long long, long long>, Vec2> memo_;
  mutable std::map<Vec2, std::pair<long long, long long>, Vec2Less> inverse_;
  mutable std::set<Vec2, Vec2Less> failed_;  // negative lookup cache
  mutable long long grown_kmax_ = -1;
};

}  // namespace tritile
