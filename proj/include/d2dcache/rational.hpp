#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace d2dcache {

using int128 = __int128;

std::string int128_to_string(int128 v);

// Exact rational on 128-bit integers, always reduced with positive
// denominator. Throws std::overflow_error if an intermediate product
// no longer fits; parameter validation elsewhere keeps values far from
// that limit.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int128 n) : num_(n), den_(1) {}
  Rational(int128 n, int128 d) : num_(n), den_(d) { normalize(); }

  int128 num() const { return num_; }
  int128 den() const { return den_; }

  Rational operator-() const { return Rational(-num_, den_); }

  Rational operator+(const Rational& o) const {
    int128 g = gcd128(den_, o.den_);
    int128 rd = o.den_ / g;
    return Rational(checked_add(checked_mul(num_, rd),
                                checked_mul(o.num_, den_ / g)),
                    checked_mul(den_, rd));
  }
  Rational operator-(const Rational& o) const { return *this + (-o); }
  Rational operator*(const Rational& o) const {
    int128 g1 = gcd128(num_ < 0 ? -num_ : num_, o.den_);
    int128 g2 = gcd128(o.num_ < 0 ? -o.num_ : o.num_, den_);
    return Rational(checked_mul(num_ / g1, o.num_ / g2),
                    checked_mul(den_ / g2, o.den_ / g1));
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    return *this * Rational(o.den_, o.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
  }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  bool is_zero() const { return num_ == 0; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // "p/q" form, e.g. "11/12", "0/1".
  std::string to_string() const {
    return int128_to_string(num_) + "/" + int128_to_string(den_);
  }

  static int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

 private:
  static int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r))
      throw std::overflow_error("Rational: 128-bit multiply overflow");
    return r;
  }
  static int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r))
      throw std::overflow_error("Rational: 128-bit add overflow");
    return r;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    int128 g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  int128 num_;
  int128 den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace d2dcache
