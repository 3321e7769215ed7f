#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace wavetail {

/// Exact rational over int64 with gcd-normalized representation (den > 0).
/// Exponent arithmetic in this project stays tiny (denominators like 2, 4,
/// 100), so int64 with __int128 intermediates is ample; overflow throws.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d);

  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
  void normalize();
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Number of the form q0 + q1*eps where eps is a formal positive
/// infinitesimal. Ordering is lexicographic in (q0, q1), which makes the
/// "1-" exponents of the decay iteration exact: 1 - eps < 1 < 1 + eps.
struct ExtRational {
  Rational q0;  // standard part
  Rational q1;  // eps coefficient

  ExtRational() = default;
  ExtRational(Rational std_part) : q0(std_part) {}
  ExtRational(Rational std_part, Rational eps_part) : q0(std_part), q1(eps_part) {}
  ExtRational(std::int64_t n) : q0(n) {}

  static ExtRational eps() { return ExtRational(Rational(0), Rational(1)); }

  const Rational& std() const { return q0; }
  bool is_std() const { return q1 == Rational(0); }

  /// Numeric instantiation with a concrete eps value.
  double to_double(double eps_value) const { return q0.to_double() + q1.to_double() * eps_value; }

  std::string str() const;

  ExtRational operator-() const { return {-q0, -q1}; }
  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    return {a.q0 + b.q0, a.q1 + b.q1};
  }
  friend ExtRational operator-(const ExtRational& a, const ExtRational& b) {
    return {a.q0 - b.q0, a.q1 - b.q1};
  }
  /// Scalar multiple (no eps*eps products arise in the iteration).
  friend ExtRational operator*(const Rational& c, const ExtRational& x) {
    return {c * x.q0, c * x.q1};
  }
  friend ExtRational operator*(std::int64_t c, const ExtRational& x) {
    return Rational(c) * x;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.q0 == b.q0 && a.q1 == b.q1;
  }
  friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.q0 != b.q0) return a.q0 < b.q0;
    return a.q1 < b.q1;
  }
  friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
  friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }
};

std::ostream& operator<<(std::ostream& os, const ExtRational& x);

ExtRational min(const ExtRational& a, const ExtRational& b);
ExtRational max(const ExtRational& a, const ExtRational& b);

}  // namespace wavetail
