#include "wavetail/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace wavetail {

namespace {

std::int64_t checked_cast(__int128 v, const char* what) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
    throw std::overflow_error(std::string("Rational overflow in ") + what);
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational& Rational::operator+=(const Rational& o) {
  __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  num_ = checked_cast(n, "add");
  den_ = checked_cast(d, "add");
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  __int128 n = static_cast<__int128>(num_) * o.num_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  num_ = checked_cast(n, "mul");
  den_ = checked_cast(d, "mul");
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
  return *this *= Rational(o.den_, o.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::int64_t n = std::stoll(text.substr(0, slash));
    std::int64_t d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    // Exact decimal: "0.25" -> 25/100.
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t places = text.size() - dot - 1;
    if (places > 17) throw std::invalid_argument("Rational::parse: too many decimal places");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < places; ++i) den *= 10;
    return Rational(std::stoll(digits), den);
  }
  return Rational(std::stoll(text));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::string ExtRational::str() const {
  if (is_std()) return q0.str();
  std::string s = q0.str();
  if (!(q1 < Rational(0))) s += "+";
  s += q1.str() + "e";
  return s;
}

std::ostream& operator<<(std::ostream& os, const ExtRational& x) { return os << x.str(); }

ExtRational min(const ExtRational& a, const ExtRational& b) { return a < b ? a : b; }
ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

}  // namespace wavetail
