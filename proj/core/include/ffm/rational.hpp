#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace ffm {

/// Exact rational number on 64-bit numerator/denominator.
///
/// All the exact rationals in this library are desk-scale (denominators are
/// small powers of q times small cofactors), so int64 with 128-bit
/// intermediates is plenty. Overflow throws instead of wrapping.
class Rat {
 public:
  constexpr Rat() = default;
  Rat(std::int64_t num) : n_(num), d_(1) {}  // NOLINT: implicit by design
  Rat(std::int64_t num, std::int64_t den) : n_(num), d_(den) { normalize(); }

  std::int64_t num() const { return n_; }
  std::int64_t den() const { return d_; }

  double to_double() const { return static_cast<double>(n_) / static_cast<double>(d_); }
  bool is_integer() const { return d_ == 1; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make(i128(a.n_) * b.d_ + i128(b.n_) * a.d_, i128(a.d_) * b.d_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make(i128(a.n_) * b.d_ - i128(b.n_) * a.d_, i128(a.d_) * b.d_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make(i128(a.n_) * b.n_, i128(a.d_) * b.d_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.n_ == 0) throw std::domain_error("Rat: division by zero");
    return make(i128(a.n_) * b.d_, i128(a.d_) * b.n_);
  }
  Rat operator-() const { return Rat(-n_, d_); }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return i128(a.n_) * b.d_ < i128(b.n_) * a.d_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return i128(a.n_) * b.d_ <= i128(b.n_) * a.d_; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  Rat abs() const { return n_ < 0 ? Rat(-n_, d_) : *this; }

  /// q^e for e of either sign.
  static Rat power(std::int64_t base, int e) {
    Rat r(1);
    const Rat b = e >= 0 ? Rat(base) : Rat(1, base);
    for (int i = 0; i < (e >= 0 ? e : -e); ++i) r *= b;
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    os << r.n_;
    if (r.d_ != 1) os << '/' << r.d_;
    return os;
  }

 private:
  using i128 = __int128;

  static Rat make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    const i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr i128 kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax) throw std::overflow_error("Rat: overflow");
    Rat r;
    r.n_ = static_cast<std::int64_t>(n);
    r.d_ = static_cast<std::int64_t>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { const i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  void normalize() { *this = make(n_, d_); }

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
};

}  // namespace ffm
