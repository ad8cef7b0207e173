#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace pgz {

// Ordinary variables take nonnegative integer exponents. Bar variables (the
// bar copy of an alphabet) may carry nonnegative rational exponents.
enum class VarClass { Ordinary, Bar };

struct VarEntry {
  std::string name;
  VarClass cls = VarClass::Ordinary;
};

class VarTable;
using VarTablePtr = std::shared_ptr<const VarTable>;

// Immutable ordered list of variable names. Tables are only ever extended by
// creating a new table, so a table whose entries are a prefix of another's is
// compatible with it and polynomials over the smaller one lift for free.
class VarTable {
public:
  VarTable() = default;
  explicit VarTable(std::vector<VarEntry> entries);

  static VarTablePtr make(std::vector<VarEntry> entries);
  static VarTablePtr make_ordinary(const std::vector<std::string>& names);

  std::size_t size() const { return entries_.size(); }
  const VarEntry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<VarEntry>& entries() const { return entries_; }
  const std::string& name(std::size_t i) const { return entries_[i].name; }
  VarClass cls(std::size_t i) const { return entries_[i].cls; }
  const VarEntry& entry(std::size_t i) const { return entries_[i]; }

  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index(const std::string& name) const;  // throws StructuralError

  // New table with extra entries appended; names must stay unique.
  VarTablePtr extend(const std::vector<VarEntry>& extra) const;

  bool is_prefix_of(const VarTable& other) const;

private:
  std::vector<VarEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Returns the larger of two compatible tables (either may be null).
// Throws StructuralError when neither is a prefix of the other.
VarTablePtr common_table(const VarTablePtr& a, const VarTablePtr& b);

// Variable names used for the tilde/bar copies of an alphabet letter.
std::string letter_stem(char letter);
std::string tilde_name(char letter);
std::string bar_name(char letter);

}  // namespace pgz
