#include "pgz/rational.hpp"

#include <numeric>

#include "pgz/error.hpp"

namespace pgz {

Rat parse_rat(const std::string& text) {
  Rat r;
  if (r.set_str(text, 10) != 0) throw DomainError("not a rational literal: " + text);
  r.canonicalize();
  if (r.get_den() == 0) throw DomainError("zero denominator: " + text);
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

namespace {

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) throw DomainError("exponent overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace

Exp::Exp(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("exponent with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n, d);
  if (g == 0) g = 1;
  num_ = n / g;
  den_ = d / g;
}

Exp Exp::operator+(const Exp& o) const {
  if (den_ == 1 && o.den_ == 1) return Exp(narrow(static_cast<__int128>(num_) + o.num_));
  __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  __int128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  return Exp(narrow(n / a), narrow(d / a));
}

Exp Exp::operator-(const Exp& o) const { return *this + (-o); }

Exp Exp::operator*(const Exp& o) const {
  if (den_ == 1 && o.den_ == 1) return Exp(narrow(static_cast<__int128>(num_) * o.num_));
  std::int64_t g1 = std::gcd(num_, o.den_), g2 = std::gcd(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Exp(narrow(static_cast<__int128>(num_ / g1) * (o.num_ / g2)),
             narrow(static_cast<__int128>(den_ / g2) * (o.den_ / g1)));
}

Exp Exp::operator/(const Exp& o) const {
  if (o.num_ == 0) throw DomainError("exponent division by zero");
  return *this * Exp(o.den_, o.num_);
}

std::strong_ordering Exp::operator<=>(const Exp& o) const {
  if (den_ == o.den_) return num_ <=> o.num_;
  __int128 l = static_cast<__int128>(num_) * o.den_;
  __int128 r = static_cast<__int128>(o.num_) * den_;
  return l < r ? std::strong_ordering::less
               : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Exp Exp::from_rat(const Rat& r) {
  if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
    throw DomainError("exponent out of range");
  return Exp(r.get_num().get_si(), r.get_den().get_si());
}

std::string Exp::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  std::int64_t g = std::gcd(a, b);
  if (g == 0) return 0;
  return narrow(static_cast<__int128>(a / g) * b);
}

}  // namespace pgz
