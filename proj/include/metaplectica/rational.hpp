#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace metaplectica {

/**
 * Exact rational with 64-bit numerator/denominator.
 *
 * Canonical form: den > 0, gcd(|num|, den) = 1. All arithmetic runs
 * through 128-bit intermediates and throws std::overflow_error rather
 * than wrapping, so results are either exact or loudly absent.
 */
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    num_ = g ? n / g : n;
    den_ = g ? d / g : d;
  }

  // Minimal-denominator rational that converts back to exactly x.
  // Empty when x is not a ratio of integers with denominator <= max_den.
  static std::optional<Rational> from_double(double x, std::int64_t max_den = 1000000000);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("Rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;

 private:
  using i128 = __int128;

  static Rational make(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    const i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("Rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b) { const i128 t = a % b; a = b; b = t; }
    return a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::optional<Rational> Rational::from_double(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  if (x == std::floor(x) && std::abs(x) < 9.0e18) {
    return Rational(static_cast<std::int64_t>(x));
  }
  // Continued-fraction convergents; accept the first one that round-trips.
  double v = x;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    const double fa = std::floor(v);
    if (std::abs(fa) > 9.0e17) break;
    const std::int64_t a = static_cast<std::int64_t>(fa);
    const i128 p2 = i128(a) * p1 + p0;
    const i128 q2 = i128(a) * q1 + q0;
    if (q2 > max_den || p2 > std::numeric_limits<std::int64_t>::max() ||
        p2 < std::numeric_limits<std::int64_t>::min())
      break;
    p0 = p1; q0 = q1;
    p1 = static_cast<std::int64_t>(p2);
    q1 = static_cast<std::int64_t>(q2);
    const Rational cand(p1, q1);
    if (cand.to_double() == x) return cand;
    const double rem = v - fa;
    if (rem == 0.0) break;
    v = 1.0 / rem;
    if (!std::isfinite(v)) break;
  }
  return std::nullopt;
}

/** 2x2 matrix over Rational; the exact fast path for r = 1 optics. */
struct Mat2Q {
  Rational a{1}, b{0}, c{0}, d{1};  // [[a, b], [c, d]]

  static Mat2Q identity() { return {}; }

  friend Mat2Q operator*(const Mat2Q& x, const Mat2Q& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2Q&, const Mat2Q&) = default;

  Rational det() const { return a * d - b * c; }
};

}  // namespace metaplectica
