#include "pgz/vartable.hpp"

#include <cctype>
#include <cstdio>

#include "pgz/error.hpp"

namespace pgz {

VarTable::VarTable(std::vector<VarEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].name, i).second)
      throw StructuralError("duplicate variable name: " + entries_[i].name);
  }
}

VarTablePtr VarTable::make(std::vector<VarEntry> entries) {
  return std::make_shared<const VarTable>(std::move(entries));
}

VarTablePtr VarTable::make_ordinary(const std::vector<std::string>& names) {
  std::vector<VarEntry> e;
  e.reserve(names.size());
  for (const auto& n : names) e.push_back({n, VarClass::Ordinary});
  return make(std::move(e));
}

std::optional<std::size_t> VarTable::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t VarTable::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw StructuralError("unknown variable: " + name);
  return *i;
}

VarTablePtr VarTable::extend(const std::vector<VarEntry>& extra) const {
  std::vector<VarEntry> all = entries_;
  all.insert(all.end(), extra.begin(), extra.end());
  return make(std::move(all));
}

bool VarTable::is_prefix_of(const VarTable& other) const {
  if (entries_.size() > other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name != other.entries_[i].name || entries_[i].cls != other.entries_[i].cls)
      return false;
  }
  return true;
}

VarTablePtr common_table(const VarTablePtr& a, const VarTablePtr& b) {
  if (a == b || !b) return a;
  if (!a) return b;
  if (a->is_prefix_of(*b)) return b;
  if (b->is_prefix_of(*a)) return a;
  throw StructuralError("polynomials over incompatible variable tables");
}

std::string letter_stem(char letter) {
  auto c = static_cast<unsigned char>(letter);
  if (std::isalnum(c)) return std::string(1, letter);
  char buf[8];
  std::snprintf(buf, sizeof buf, "u%02x", c);
  return buf;
}

std::string tilde_name(char letter) { return letter_stem(letter) + "t"; }
std::string bar_name(char letter) { return letter_stem(letter) + "b"; }

}  // namespace pgz
