#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace pgz {

// Exact rational coefficient. gmp keeps it canonical (gcd 1, den > 0).
using Rat = mpq_class;

Rat parse_rat(const std::string& text);
std::string to_string(const Rat& r);

// Small exact rational used for monomial exponents. Exponents stay tiny in
// practice, so a checked int64 pair is used instead of gmp.
class Exp {
public:
  constexpr Exp() = default;
  constexpr Exp(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Exp(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  Exp operator+(const Exp& o) const;
  Exp operator-(const Exp& o) const;
  Exp operator*(const Exp& o) const;
  Exp operator/(const Exp& o) const;
  Exp operator-() const { return Exp(-num_, den_); }
  Exp& operator+=(const Exp& o) { return *this = *this + o; }
  Exp& operator-=(const Exp& o) { return *this = *this - o; }

  bool operator==(const Exp& o) const = default;
  std::strong_ordering operator<=>(const Exp& o) const;

  Rat to_rat() const { return Rat(num_, den_); }
  static Exp from_rat(const Rat& r);
  std::string to_string() const;

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

}  // namespace pgz
