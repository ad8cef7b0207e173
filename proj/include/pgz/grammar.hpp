#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "pgz/automorphism.hpp"
#include "pgz/polymap.hpp"

namespace pgz {

using Value = std::vector<RatFunc>;

struct Nonterminal {
  std::string name;
  std::size_t dim = 0;
};

struct Production {
  std::size_t lhs = 0;
  std::string label;  // polymap name, empty for constants
  PolyMap map;        // slots: concatenated rhs coordinates
  std::vector<std::size_t> rhs;
  std::optional<FieldAutomorphism> twist;
};

// Polynomial grammar over Q(params). Parameters listed in ring_vars are the
// polynomial variables X of a grammar over K[X] (substitution targets); the
// remaining parameters generate the coefficient field.
class Grammar {
public:
  VarTablePtr params;
  std::vector<std::string> ring_vars;
  std::vector<Nonterminal> nonterminals;
  std::size_t initial = 0;
  std::vector<Production> productions;

  std::size_t index(const std::string& name) const;
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t add_nonterminal(const std::string& name, std::size_t dim);
  const Nonterminal& start() const { return nonterminals.at(initial); }

  // Throws StructuralError on dimension or table mismatches.
  void validate() const;

  VarTablePtr coefficient_table() const;  // params without ring_vars
  VarTablePtr ring_table() const;         // ring_vars in declaration order
};

std::vector<bool> productive_nonterminals(const Grammar& g);

// Value of a production applied to child values (twist first).
Value apply_production(const Grammar& g, const Production& p, const std::vector<const Value*>& kids);

// Fresh initial S with S -> f(old initial). f's slots name the old
// initial's coordinates; coefficients live over g.params.
Grammar attach_polymap(const PolyMap& f, const Grammar& g, const std::string& name = "S");

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  std::size_t production = 0;
  std::vector<DerivPtr> children;
  std::size_t size = 1;
};

Value replay(const Grammar& g, const Derivation& d);
std::string derivation_to_string(const Grammar& g, const Derivation& d);

// Wall-clock deadline plus an optional external cancellation flag.
class StopToken {
public:
  StopToken() = default;
  explicit StopToken(double seconds, const std::atomic<bool>* cancel = nullptr);
  bool stop() const;
  // Same deadline, additionally stopped by `extra`.
  StopToken with_cancel(const std::atomic<bool>* extra) const;

private:
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  const std::atomic<bool>* cancel_ = nullptr;
  const std::atomic<bool>* extra_ = nullptr;
};

struct Entry {
  Value value;
  DerivPtr deriv;
};

// Size-layered enumeration of the distinct values of every nonterminal.
// Layer s holds the values whose smallest derivation has s nodes.
class Enumerator {
public:
  explicit Enumerator(const Grammar& g, std::size_t cap_per_nonterminal = 0);

  // Computes layer size()+1. Returns false when stopped mid-layer.
  bool step(const StopToken& stop);
  std::size_t size() const { return size_; }
  const std::vector<Entry>& layer(std::size_t nt, std::size_t s) const { return layers_.at(nt).at(s); }
  std::vector<Entry> all(std::size_t nt) const;
  std::size_t count(std::size_t nt) const { return seen_.at(nt).size(); }

private:
  bool full(std::size_t nt) const { return cap_ && seen_[nt].size() >= cap_; }
  void combine(std::size_t prod, std::size_t k, std::size_t remaining, std::vector<const Entry*>& pick,
               std::vector<Entry>& out, const StopToken& stop, bool& stopped);

  const Grammar& g_;
  std::size_t cap_;
  std::size_t size_ = 0;
  std::vector<std::vector<std::vector<Entry>>> layers_;  // [nt][size]
  std::vector<std::unordered_set<std::string>> seen_;
};

std::string value_key(const Value& v);
bool is_zero_value(const Value& v);

std::vector<Entry> enumerate_values(const Grammar& g, std::size_t max_size, const StopToken& stop = {});

struct Witness {
  Value value;
  DerivPtr deriv;
};

std::optional<Witness> nonzero_search(const Grammar& g, std::size_t max_size, const StopToken& stop = {});

}  // namespace pgz
