#include "tritile/quadfield.hpp"

#include <cmath>

namespace tritile {

namespace {

// gmpxx lacks long long overloads; long is 64 bits on every supported target.
inline mpz_class mpz_ll(long long v) { return mpz_class(static_cast<long>(v)); }

}  // namespace

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational r(mpz_ll(num), mpz_ll(den));
  r.canonicalize();
  return r;
}

Rational rational_from_string(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("rational_from_string: bad rational '" + text + "'");
  if (sgn(r.get_den()) == 0)
    throw std::invalid_argument("rational_from_string: zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

QFNum::QFNum(const Rational& p, const Rational& q, long long D) : p_(p), q_(q), D_(D) {
  if (sgn(q_) == 0) {
    D_ = 0;
    return;
  }
  if (D_ <= 0) throw std::invalid_argument("QFNum: nonpositive radicand with q != 0");
  long long r = isqrt_ll(D_);
  if (r * r == D_) {  // fold sqrt of a perfect square into the rational part
    p_ += q_ * mpz_ll(r);
    q_ = 0;
    D_ = 0;
  }
}

namespace {

long long merge_radicand(const QFNum& a, const QFNum& b) {
  if (a.D() != 0 && b.D() != 0 && a.D() != b.D())
    throw invariant_error("QFNum: mixed radicands");
  return a.D() != 0 ? a.D() : b.D();
}

}  // namespace

QFNum operator+(const QFNum& a, const QFNum& b) {
  return QFNum(a.p() + b.p(), a.q() + b.q(), merge_radicand(a, b));
}

QFNum operator-(const QFNum& a, const QFNum& b) {
  return QFNum(a.p() - b.p(), a.q() - b.q(), merge_radicand(a, b));
}

QFNum operator*(const QFNum& a, const QFNum& b) {
  long long D = merge_radicand(a, b);
  return QFNum(a.p() * b.p() + a.q() * b.q() * mpz_ll(D), a.p() * b.q() + a.q() * b.p(), D);
}

QFNum operator/(const QFNum& a, const QFNum& b) {
  long long D = merge_radicand(a, b);
  Rational norm = b.p() * b.p() - b.q() * b.q() * mpz_ll(D);
  if (sgn(norm) == 0) throw std::domain_error("QFNum: division by zero");
  // a / b = a * conj(b) / norm(b)
  QFNum num = a * QFNum(b.p(), -b.q(), D);
  return QFNum(num.p() / norm, num.q() / norm, D);
}

QFNum QFNum::operator-() const { return QFNum(-p_, -q_, D_); }

int QFNum::sign() const {
  int sp = sgn(p_), sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: |p| vs |q| sqrt(D) decides; equality is impossible since
  // D is not a perfect square.
  int c = sgn(p_ * p_ - q_ * q_ * mpz_ll(D_));
  if (c == 0) throw invariant_error("QFNum::sign: p^2 == q^2 D with non-square D");
  return c > 0 ? sp : sq;
}

double QFNum::value() const {
  return p_.get_d() + q_.get_d() * std::sqrt(static_cast<double>(D_));
}

long double QFNum::value_ld() const {
  return static_cast<long double>(p_.get_d()) +
         static_cast<long double>(q_.get_d()) * sqrtl(static_cast<long double>(D_));
}

std::string QFNum::to_string() const {
  return p_.get_num().get_str() + "/" + p_.get_den().get_str() + "+" +
         q_.get_num().get_str() + "/" + q_.get_den().get_str() + "*sqrt" +
         std::to_string(D_);
}

QFNum QFNum::from_string(const std::string& text) {
  auto plus = text.find('+', 1);  // skip a possible leading minus sign
  auto star = text.find("*sqrt");
  if (plus == std::string::npos || star == std::string::npos || star < plus)
    throw std::invalid_argument("QFNum::from_string: bad token '" + text + "'");
  Rational p = rational_from_string(text.substr(0, plus));
  Rational q = rational_from_string(text.substr(plus + 1, star - plus - 1));
  long long D = 0;
  try {
    size_t used = 0;
    D = std::stoll(text.substr(star + 5), &used);
    if (used != text.size() - star - 5) throw std::invalid_argument("trailing junk");
  } catch (const std::exception&) {
    throw std::invalid_argument("QFNum::from_string: bad radicand in '" + text + "'");
  }
  if (sgn(q) == 0) return QFNum(p);
  return QFNum(p, q, D);
}

int qf_sign(const QFNum& x) { return x.sign(); }

QFNum qf_abs(const QFNum& x) { return x.sign() < 0 ? -x : x; }

Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(const QFNum& s, const Vec2& v) { return {s * v.x, s * v.y}; }
QFNum cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
QFNum dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
QFNum norm2(const Vec2& v) { return dot(v, v); }

bool Vec2Less::operator()(const Vec2& a, const Vec2& b) const {
  int cx = (a.x - b.x).sign();
  if (cx != 0) return cx < 0;
  return (a.y - b.y).sign() < 0;
}

Rotation make_rotation(const QFNum& c, const QFNum& s) {
  if (c * c + s * s != QFNum(1)) throw invariant_error("make_rotation: cos^2 + sin^2 != 1");
  return {c, s};
}

Rotation half_alpha_rotation(const TileSpec& spec) {
  return make_rotation(QFNum(0, make_rational(1, 2 * spec.K), spec.D),
                       QFNum(make_rational(spec.M, 2 * spec.K)));
}

Shape::Shape(const TileSpec& spec) : spec_(spec), half_(half_alpha_rotation(spec)) {
  memo_[{0, 0}] = Vec2{QFNum(1), QFNum(0)};
}

Vec2 Shape::direction(long long k, long long q) const {
  std::lock_guard<std::mutex> lock(mu_);
  return direction_locked(k, q);
}

Vec2 Shape::direction_locked(long long k, long long q) const {
  q = ((q % 4) + 4) % 4;
  auto it = memo_.find({k, q});
  if (it != memo_.end()) return it->second;
  Vec2 v;
  if (q != 0) {
    v = direction_locked(k, 0);
    for (long long i = 0; i < q; ++i) v = Vec2{-v.y, v.x};  // quarter turn
  } else {
    // Walk toward k = 0 one half-alpha step at a time, memoizing on the way.
    long long step = k > 0 ? 1 : -1;
    Vec2 prev = direction_locked(k - step, 0);
    const Rotation r = step > 0 ? half_ : half_.inverse();
    v = r.apply(prev);
  }
  memo_[{k, q}] = v;
  return v;
}

std::optional<std::pair<long long, long long>> Shape::classify_direction(const Vec2& unit) const {
  constexpr long long kLimit = 256;
  std::lock_guard<std::mutex> lock(mu_);
  if (failed_.count(unit)) return std::nullopt;
  for (;;) {
    auto it = inverse_.find(unit);
    if (it != inverse_.end()) return it->second;
    if (grown_kmax_ >= kLimit) {
      failed_.insert(unit);
      return std::nullopt;
    }
    long long next = grown_kmax_ < 0 ? 16 : grown_kmax_ * 2;
    for (long long k = -next; k <= next; ++k) {
      if (grown_kmax_ >= 0 && k >= -grown_kmax_ && k <= grown_kmax_) continue;
      for (long long q = 0; q < 4; ++q) inverse_[direction_locked(k, q)] = {k, q};
    }
    grown_kmax_ = next;
  }
}

std::pair<long long, long long> Shape::angle_of_label(char label) {
  switch (label) {
    case 'a': return {2, 0};    // alpha
    case 'b': return {-3, 1};   // beta = pi/2 - 3 alpha/2
    case 'g': return {1, 1};    // gamma = pi/2 + alpha/2
    default: throw std::invalid_argument("angle_of_label: label must be a/b/g");
  }
}

}  // namespace tritile
