#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pgz/rational.hpp"
#include "pgz/vartable.hpp"

namespace pgz {

// Sparse power product. Entries are sorted by variable index and never hold
// a zero exponent. Negative exponents are only produced transiently (Laurent
// monomials used as substitution images); Polynomial rejects them.
class Monomial {
public:
  using Entry = std::pair<std::uint32_t, Exp>;

  Monomial() = default;
  explicit Monomial(std::vector<Entry> entries);  // normalizes
  static Monomial var(std::uint32_t v, Exp e = Exp(1));

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_one() const { return entries_.empty(); }
  Exp exponent(std::uint32_t v) const;
  Exp total_degree() const;
  std::uint32_t max_var() const;  // requires !is_one()

  Monomial operator*(const Monomial& o) const;
  // Exponent-wise difference; may go negative.
  Monomial operator/(const Monomial& o) const;
  Monomial pow(const Exp& e) const;

  bool divides(const Monomial& o) const;  // o / *this has no negative exponent
  bool has_negative() const;
  bool all_integer() const;
  Monomial lcm(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  // Canonical order: lexicographic, variable 0 most significant.
  int lex_compare(const Monomial& o) const;
  bool operator==(const Monomial& o) const = default;

  std::string to_string(const VarTable* vars) const;

private:
  std::vector<Entry> entries_;
};

}  // namespace pgz
