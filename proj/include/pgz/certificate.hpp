#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgz/closure.hpp"
#include "pgz/grammar.hpp"

namespace pgz {

// Ideal attached to one nonterminal. Generators are polynomials in the
// grammar's ring variables followed by `coords` (one name per coordinate),
// with coefficients in Q(coefficient parameters).
struct NtIdeal {
  std::vector<std::string> coords;
  std::vector<KPoly> generators;
};

struct Certificate {
  std::vector<KPoly> ambient;  // over the ring variables; empty = no restriction
  std::map<std::string, NtIdeal> ideals;
};

// Coordinate frame of a nonterminal: ring variables then coords.
VarTablePtr frame_table(const Grammar& g, const std::vector<std::string>& coords);
std::vector<std::string> default_coords(std::size_t dim, const std::string& stem = "y");

enum class CertVerdict { ZeroProved, ClosureViolation, ConclusionViolation };

struct CertCheck {
  CertVerdict verdict = CertVerdict::ZeroProved;
  std::string detail;
  bool ok() const { return verdict == CertVerdict::ZeroProved; }
};

const char* to_string(CertVerdict v);

// Conditions: base points lie in the ideals' varieties, every production maps
// the product of child varieties into its lhs variety (radical membership,
// inverse twist on coefficients), and the initial variety is {0}; all
// relative to the ambient ideal.
CertCheck check_certificate(const Grammar& g, const Certificate& cert);

nlohmann::json certificate_to_json(const Grammar& g, const Certificate& cert);
Certificate certificate_from_json(const Grammar& g, const nlohmann::json& j);

// Generator printed over coefficient parameters, ring variables and coords.
std::string format_generator(const Grammar& g, const KPoly& f, const VarTablePtr& frame);

namespace cert_detail {

// Check frame of a production: ring variables then one slot per rhs
// coordinate; images[i] is the production's value for frame coordinate i of
// the lhs (ring variables map to themselves).
struct ProductionFrame {
  VarTablePtr table;
  std::vector<std::optional<KPoly>> images;
  std::vector<std::size_t> child_offset;
};

ProductionFrame production_frame(const Grammar& g, const Production& p);
std::vector<KPoly> move_ideal(const Grammar& g, const NtIdeal& ideal, const VarTablePtr& target,
                              std::size_t offset);

}  // namespace cert_detail

}  // namespace pgz
