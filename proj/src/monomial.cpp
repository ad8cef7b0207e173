#include "pgz/monomial.hpp"

#include <algorithm>

#include "pgz/error.hpp"

namespace pgz {

Monomial::Monomial(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first) {
      entries_.back().second += e.second;
      if (entries_.back().second.is_zero()) entries_.pop_back();
    } else if (!e.second.is_zero()) {
      entries_.push_back(e);
    }
  }
}

Monomial Monomial::var(std::uint32_t v, Exp e) {
  Monomial m;
  if (!e.is_zero()) m.entries_.push_back({v, e});
  return m;
}

Exp Monomial::exponent(std::uint32_t v) const {
  for (const auto& [var, e] : entries_) {
    if (var == v) return e;
    if (var > v) break;
  }
  return Exp(0);
}

Exp Monomial::total_degree() const {
  Exp d(0);
  for (const auto& e : entries_) d += e.second;
  return d;
}

std::uint32_t Monomial::max_var() const { return entries_.back().first; }

namespace {

template <class Op>
Monomial merge(const std::vector<Monomial::Entry>& a, const std::vector<Monomial::Entry>& b,
               Op op) {
  std::vector<Monomial::Entry> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      Exp e = op(a[i].second, Exp(0));
      if (!e.is_zero()) out.push_back({a[i].first, e});
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      Exp e = op(Exp(0), b[j].second);
      if (!e.is_zero()) out.push_back({b[j].first, e});
      ++j;
    } else {
      Exp e = op(a[i].second, b[j].second);
      if (!e.is_zero()) out.push_back({a[i].first, e});
      ++i;
      ++j;
    }
  }
  Monomial m;
  m = Monomial(std::move(out));
  return m;
}

}  // namespace

Monomial Monomial::operator*(const Monomial& o) const {
  if (o.entries_.empty()) return *this;
  if (entries_.empty()) return o;
  return merge(entries_, o.entries_, [](Exp x, Exp y) { return x + y; });
}

Monomial Monomial::operator/(const Monomial& o) const {
  if (o.entries_.empty()) return *this;
  return merge(entries_, o.entries_, [](Exp x, Exp y) { return x - y; });
}

Monomial Monomial::pow(const Exp& e) const {
  if (e.is_zero()) return Monomial();
  Monomial m;
  m.entries_ = entries_;
  for (auto& x : m.entries_) x.second = x.second * e;
  return m;
}

bool Monomial::divides(const Monomial& o) const {
  std::size_t j = 0;
  for (const auto& [v, e] : entries_) {
    while (j < o.entries_.size() && o.entries_[j].first < v) ++j;
    Exp oe = (j < o.entries_.size() && o.entries_[j].first == v) ? o.entries_[j].second : Exp(0);
    if (oe < e) return false;
  }
  // Negative exponents in o not covered by this monomial also block division.
  for (const auto& [v, e] : o.entries_) {
    if (e.is_negative() && exponent(v) > e) return false;
  }
  return true;
}

bool Monomial::has_negative() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return e.second.is_negative(); });
}

bool Monomial::all_integer() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return e.second.is_integer(); });
}

Monomial Monomial::lcm(const Monomial& o) const {
  return merge(entries_, o.entries_, [](Exp x, Exp y) { return x < y ? y : x; });
}

Monomial Monomial::gcd(const Monomial& o) const {
  return merge(entries_, o.entries_, [](Exp x, Exp y) { return x < y ? x : y; });
}

bool Monomial::coprime(const Monomial& o) const {
  std::size_t i = 0, j = 0;
  while (i < entries_.size() && j < o.entries_.size()) {
    if (entries_[i].first == o.entries_[j].first) return false;
    if (entries_[i].first < o.entries_[j].first)
      ++i;
    else
      ++j;
  }
  return true;
}

int Monomial::lex_compare(const Monomial& o) const {
  std::size_t n = std::min(entries_.size(), o.entries_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = entries_[i];
    const auto& b = o.entries_[i];
    if (a.first != b.first) {
      // The side holding the smaller variable index has a positive power of a
      // more significant variable (unless that power is negative).
      if (a.first < b.first) return a.second.is_negative() ? -1 : 1;
      return b.second.is_negative() ? 1 : -1;
    }
    if (a.second != b.second) return a.second < b.second ? -1 : 1;
  }
  if (entries_.size() == o.entries_.size()) return 0;
  if (entries_.size() > n) return entries_[n].second.is_negative() ? -1 : 1;
  return o.entries_[n].second.is_negative() ? 1 : -1;
}

std::string Monomial::to_string(const VarTable* vars) const {
  std::string s;
  for (const auto& [v, e] : entries_) {
    if (!s.empty()) s += "*";
    s += vars && v < vars->size() ? vars->name(v) : "v" + std::to_string(v);
    if (e != Exp(1)) {
      if (e.is_integer() && !e.is_negative())
        s += "^" + e.to_string();
      else
        s += "^(" + e.to_string() + ")";
    }
  }
  return s;
}

}  // namespace pgz
