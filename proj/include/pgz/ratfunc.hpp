#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgz/polynomial.hpp"

namespace pgz {

// Quotient of two QPoly values over a parameter table. Not reduced by a
// multivariate gcd: the representation is normalized (monic denominator,
// common monomial factor removed, exact-division shortcuts) and equality is
// decided by cross-multiplication.
class RatFunc {
public:
  RatFunc() = default;
  RatFunc(const Rat& c) : num_(QPoly::constant(c)), den_(QPoly::constant(Rat(1))) {}  // NOLINT
  RatFunc(long c) : RatFunc(Rat(c)) {}                                               // NOLINT
  explicit RatFunc(QPoly num);
  RatFunc(QPoly num, QPoly den);

  // Builds m (which may carry negative exponents) as a fraction.
  static RatFunc from_laurent(const VarTablePtr& vars, const Monomial& m, const Rat& c = Rat(1));

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  VarTablePtr vars() const { return common_table(num_.vars(), den_.vars()); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat constant_value() const;  // requires is_constant()
  // Polynomial value when the denominator is a constant.
  std::optional<QPoly> as_polynomial() const;
  // Laurent monomial value c*m when num and den are both single terms.
  std::optional<std::pair<Monomial, Rat>> as_laurent() const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc inverse() const;
  RatFunc pow(long k) const;

  bool operator==(const RatFunc& o) const;
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc rebase(const VarTablePtr& target) const;
  std::string to_string() const;

private:
  void normalize();

  QPoly num_;
  QPoly den_ = QPoly::constant(Rat(1));
};

template <>
struct CoeffOps<RatFunc> {
  static RatFunc zero() { return RatFunc(); }
  static RatFunc one() { return RatFunc(Rat(1)); }
  static bool is_zero(const RatFunc& a) { return a.is_zero(); }
  static bool is_one(const RatFunc& a) { return a.is_constant() && a.constant_value() == 1; }
  static bool is_negative_literal(const RatFunc& a) {
    return a.is_constant() && sgn(a.constant_value()) < 0;
  }
  static bool is_atomic(const RatFunc& a) { return a.is_constant(); }
  static std::string to_string(const RatFunc& a) { return a.to_string(); }
  static RatFunc inverse(const RatFunc& a) { return a.inverse(); }
  static RatFunc power(const RatFunc& a, const Exp& e);
};

// Exact quotient a / b when b divides a, otherwise nullopt.
std::optional<QPoly> exact_divide(const QPoly& a, const QPoly& b);

// Substitution into a rational function. Images are rational functions over
// `target`; a variable carrying a fractional exponent needs a Laurent monomial
// image with coefficient one.
RatFunc substitute(const RatFunc& f, const std::vector<std::optional<RatFunc>>& images,
                   const VarTablePtr& target);

Rat evaluate_at(const RatFunc& f, std::span<const Rat> point);

using KPoly = Polynomial<RatFunc>;

}  // namespace pgz
