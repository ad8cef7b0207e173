#include "pgz/certificate.hpp"

#include "pgz/parse.hpp"

namespace pgz {

const char* to_string(CertVerdict v) {
  switch (v) {
    case CertVerdict::ZeroProved:
      return "zero-proved";
    case CertVerdict::ClosureViolation:
      return "closure-violation";
    case CertVerdict::ConclusionViolation:
      return "conclusion-violation";
  }
  return "?";
}

std::vector<std::string> default_coords(std::size_t dim, const std::string& stem) {
  std::vector<std::string> c;
  for (std::size_t i = 1; i <= dim; ++i) c.push_back(stem + std::to_string(i));
  return c;
}

VarTablePtr frame_table(const Grammar& g, const std::vector<std::string>& coords) {
  std::vector<VarEntry> e;
  for (const auto& r : g.ring_vars) e.push_back(g.params->entry(g.params->index(r)));
  for (const auto& c : coords) {
    if (g.params && g.params->find(c)) throw StructuralError("coordinate name " + c + " clashes with a parameter");
    e.push_back({c, VarClass::Ordinary});
  }
  return VarTable::make(e);
}

namespace {

// Polynomial over slots (coefficients over params) moved to `target`, whose
// first |ring| entries are the ring variables and slot i becomes entry
// offset + i.
KPoly to_frame(const Grammar& g, const KPoly& p, const VarTablePtr& coeff, const VarTablePtr& target,
               std::size_t offset) {
  std::vector<VarEntry> ne;
  for (std::size_t i = 0; i < p.vars()->size(); ++i) ne.push_back(target->entry(offset + i));
  VarTablePtr named = VarTable::make(ne);
  std::vector<std::optional<KPoly>> images;
  for (std::size_t i = 0; i < p.vars()->size(); ++i) images.push_back(KPoly::variable(named, i));
  KPoly renamed = substitute(p, images, named);
  RatFunc flat = flatten_coefficients(renamed, concat_tables(g.params, named));
  return split_coefficients(flat, coeff, target);
}

// Ideal of a nonterminal moved into `target` with coords at offset.
std::vector<KPoly> move_ideal(const Grammar& g, const NtIdeal& ideal, const VarTablePtr& target, std::size_t offset) {
  VarTablePtr frame = frame_table(g, ideal.coords);
  std::size_t nr = g.ring_vars.size();
  std::vector<std::optional<KPoly>> images;
  for (std::size_t i = 0; i < nr; ++i) images.push_back(KPoly::variable(target, i));
  for (std::size_t i = 0; i < ideal.coords.size(); ++i) images.push_back(KPoly::variable(target, offset + i));
  std::vector<KPoly> out;
  for (const auto& f : ideal.generators) out.push_back(substitute(f.rebase(frame), images, target));
  return out;
}

std::vector<std::string> fresh_names(const Grammar& g, std::size_t n, const std::string& stem) {
  std::vector<std::string> out;
  for (std::size_t i = 1; out.size() < n; ++i) {
    std::string s = stem + std::to_string(i);
    if (g.params && g.params->find(s)) continue;
    out.push_back(s);
  }
  return out;
}

}  // namespace

namespace cert_detail {

ProductionFrame production_frame(const Grammar& g, const Production& p) {
  VarTablePtr coeff = g.coefficient_table();
  std::size_t nr = g.ring_vars.size();
  ProductionFrame f;
  f.table = frame_table(g, fresh_names(g, p.map.arity(), "_z"));
  for (std::size_t i = 0; i < nr; ++i) f.images.push_back(KPoly::variable(f.table, i));
  for (const auto& o : p.map.outputs)
    f.images.push_back(p.map.arity() ? to_frame(g, o, coeff, f.table, nr)
                                     : split_coefficients(o.constant_value(), coeff, f.table));
  std::size_t off = nr;
  for (std::size_t r : p.rhs) {
    f.child_offset.push_back(off);
    off += g.nonterminals[r].dim;
  }
  return f;
}

std::vector<KPoly> move_ideal(const Grammar& g, const NtIdeal& ideal, const VarTablePtr& target,
                              std::size_t offset) {
  return pgz::move_ideal(g, ideal, target, offset);
}

}  // namespace cert_detail

CertCheck check_certificate(const Grammar& g, const Certificate& cert) {
  auto productive = productive_nonterminals(g);
  VarTablePtr ring = g.ring_table();
  std::size_t nr = g.ring_vars.size();
  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) {
    const auto& nt = g.nonterminals[i];
    auto it = cert.ideals.find(nt.name);
    if (it == cert.ideals.end()) {
      if (productive[i]) throw StructuralError("certificate has no ideal for nonterminal " + nt.name);
      continue;
    }
    if (it->second.coords.size() != nt.dim)
      throw StructuralError("certificate ideal for " + nt.name + " has the wrong number of coordinates");
  }

  std::vector<KPoly> ambient;
  for (const auto& a : cert.ambient) ambient.push_back(a.rebase(ring));

  for (std::size_t pi = 0; pi < g.productions.size(); ++pi) {
    const Production& p = g.productions[pi];
    bool live = productive[p.lhs];
    for (std::size_t r : p.rhs) live = live && productive[r];
    if (!live) continue;
    const NtIdeal& lhs = cert.ideals.at(g.nonterminals[p.lhs].name);
    if (lhs.generators.empty()) continue;

    auto pf = cert_detail::production_frame(g, p);
    const VarTablePtr& t = pf.table;
    std::vector<KPoly> j;
    for (const auto& a : ambient) j.push_back(a.rebase(t));
    for (std::size_t c = 0; c < p.rhs.size(); ++c) {
      const NtIdeal& child = cert.ideals.at(g.nonterminals[p.rhs[c]].name);
      for (auto& f : move_ideal(g, child, t, pf.child_offset[c])) j.push_back(std::move(f));
    }
    MembershipOracle oracle(t, j);

    VarTablePtr lframe = frame_table(g, lhs.coords);
    const auto& images = pf.images;
    for (std::size_t k = 0; k < lhs.generators.size(); ++k) {
      KPoly h = substitute(lhs.generators[k].rebase(lframe), images, t);
      if (p.twist) h = p.twist->apply_inverse(h);
      if (!oracle.radical_contains(h)) {
        std::string where = p.rhs.empty() ? "base production " : "production ";
        return {CertVerdict::ClosureViolation,
                where + std::to_string(pi) + " (" + g.nonterminals[p.lhs].name + "): generator " +
                    std::to_string(k) + " not preserved"};
      }
    }
  }

  const NtIdeal& init = cert.ideals.at(g.start().name);
  VarTablePtr iframe = frame_table(g, init.coords);
  std::vector<KPoly> j;
  for (const auto& a : ambient) j.push_back(a.rebase(iframe));
  for (const auto& f : init.generators) j.push_back(f.rebase(iframe));
  MembershipOracle oracle(iframe, j);
  for (std::size_t i = 0; i < init.coords.size(); ++i) {
    if (!oracle.radical_contains(KPoly::variable(iframe, nr + i)))
      return {CertVerdict::ConclusionViolation, "coordinate " + init.coords[i] + " of " + g.start().name +
                                                    " does not vanish on the invariant"};
  }
  return {};
}

std::string format_generator(const Grammar& g, const KPoly& f, const VarTablePtr& frame) {
  return flatten_coefficients(f.rebase(frame), concat_tables(g.coefficient_table(), frame)).to_string();
}

nlohmann::json certificate_to_json(const Grammar& g, const Certificate& cert) {
  nlohmann::json j;
  j["format"] = "pgz-certificate/1";
  VarTablePtr ring = g.ring_table();
  nlohmann::json amb = {{"vars", g.ring_vars}, {"generators", nlohmann::json::array()}};
  for (const auto& a : cert.ambient) amb["generators"].push_back(format_generator(g, a, ring));
  j["ambient"] = amb;
  nlohmann::json nts = nlohmann::json::object();
  for (const auto& [name, ideal] : cert.ideals) {
    VarTablePtr frame = frame_table(g, ideal.coords);
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& f : ideal.generators) gens.push_back(format_generator(g, f, frame));
    nts[name] = {{"vars", ideal.coords}, {"generators", gens}};
  }
  j["nonterminals"] = nts;
  return j;
}

Certificate certificate_from_json(const Grammar& g, const nlohmann::json& j) {
  try {
    if (j.value("format", std::string()) != "pgz-certificate/1")
      throw StructuralError("not a pgz certificate (format field)");
    Certificate c;
    VarTablePtr coeff = g.coefficient_table();
    auto parse_in = [&](const std::string& s, const VarTablePtr& frame) {
      return split_coefficients(parse_ratfunc(s, concat_tables(coeff, frame)), coeff, frame);
    };
    if (j.contains("ambient")) {
      const auto& a = j.at("ambient");
      auto vars = a.value("vars", std::vector<std::string>{});
      if (vars != g.ring_vars) throw StructuralError("certificate ambient variables do not match the grammar");
      VarTablePtr ring = g.ring_table();
      for (const auto& s : a.at("generators")) c.ambient.push_back(parse_in(s.get<std::string>(), ring));
    }
    for (const auto& [name, v] : j.at("nonterminals").items()) {
      std::size_t idx = g.index(name);
      NtIdeal ideal;
      ideal.coords = v.at("vars").get<std::vector<std::string>>();
      if (ideal.coords.size() != g.nonterminals[idx].dim)
        throw StructuralError("certificate ideal for " + name + " has the wrong number of coordinates");
      VarTablePtr frame = frame_table(g, ideal.coords);
      for (const auto& s : v.at("generators")) ideal.generators.push_back(parse_in(s.get<std::string>(), frame));
      c.ideals[name] = std::move(ideal);
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace pgz
