#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pgz/certificate.hpp"
#include "pgz/grammar.hpp"

namespace pgz {

struct Budgets {
  std::size_t size = 12;    // largest derivation tree explored
  std::size_t iters = 8;    // forward-closure iterations
  double seconds = 60;      // wall clock; <= 0 means unlimited
};

struct ClosureOptions {
  std::vector<KPoly> ambient;                      // over the ring variables
  std::vector<std::vector<RatFunc>> ring_points;   // sample values for the ring variables
  std::size_t sample_size = 10;                    // enumeration depth used for samples
  std::size_t sample_cap = 60;                     // distinct values kept per nonterminal
  std::size_t max_unknowns = 3000;
};

// Value over the grammar's parameters with ring variables replaced by x;
// the result lives over `coeff`.
RatFunc substitute_ring(const Grammar& g, const RatFunc& v, const std::vector<RatFunc>& x,
                        const VarTablePtr& coeff);

// Q-basis of the polynomials over `frame` of degree <= d whose coefficients
// are polynomials of degree <= e over `coeff`, vanishing at all samples.
std::vector<KPoly> interpolate_vanishing(const std::vector<std::vector<RatFunc>>& samples, const VarTablePtr& frame,
                                         const VarTablePtr& coeff, std::size_t d, std::size_t e,
                                         std::size_t max_unknowns, const StopToken& stop);

// Iteration i tries invariants of coordinate degree d and parameter degree e.
std::pair<std::size_t, std::size_t> closure_degrees(std::size_t iteration);

// Candidate invariants interpolated from sampled values, then shrunk to the
// largest inductive subspace; a result always passes check_certificate.
class ClosureSearch {
public:
  ClosureSearch(const Grammar& g, ClosureOptions opts = {});

  std::optional<Certificate> attempt(std::size_t iteration, const StopToken& stop);

private:
  void ensure_samples(const StopToken& stop);
  std::vector<KPoly> interpolate(std::size_t nt, std::size_t d, std::size_t e, const StopToken& stop);
  void refine(std::vector<std::vector<KPoly>>& basis, const StopToken& stop);
  Certificate to_certificate(const std::vector<std::vector<KPoly>>& basis) const;

  const Grammar& g_;
  ClosureOptions opts_;
  VarTablePtr coeff_;
  std::vector<std::vector<std::string>> coords_;
  std::vector<VarTablePtr> frames_;
  std::vector<bool> productive_;
  bool sampled_ = false;
  std::vector<std::vector<std::vector<RatFunc>>> samples_;  // [nt][k] = frame point
};

std::optional<Certificate> forward_closure(const Grammar& g, std::size_t max_iters, const StopToken& stop = {},
                                           const ClosureOptions& opts = {});

enum class Verdict { Zero, NonZero, Unknown };
const char* to_string(Verdict v);

enum class Schedule { RoundRobin, Parallel };

struct ZeroOptions {
  Budgets budgets;
  Schedule schedule = Schedule::RoundRobin;
  std::vector<Certificate> certificates;  // tried before any search
  ClosureOptions closure;                 // a non-empty ambient disables enumeration
  const std::atomic<bool>* cancel = nullptr;
};

struct ZeroResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Certificate> certificate;
  std::optional<Witness> witness;
  std::string method;                  // "certificate", "closure", "enumeration" or empty
  std::vector<std::string> rejected;   // why user certificates failed
};

// Interleaves nonzero_search layers with forward-closure iterations.
// Throws EmptyLanguage when the initial nonterminal is unproductive.
ZeroResult zeroness(const Grammar& g, const ZeroOptions& o = {});
ZeroResult zeroness(const Grammar& g, const ZeroOptions& o, const StopToken& stop);

// Zeroness of A1(A2(...An)): the values of A_{i+1} are substituted for the
// ring variables of A_i. A Zero proof for n > 1 is an invariant ideal over the
// head's ring variables (the head certificate's ambient), a certificate for
// the head modulo it, and a proof that every generator vanishes on the tail.
struct ChainCertificate {
  Certificate head;
  std::shared_ptr<ChainCertificate> tail;  // for {ambient o A2, A3, ...}
};

struct ChainWitness {
  std::vector<Witness> parts;  // one per grammar
  Value value;                 // A1(A2(...)), nonzero
};

struct ChainResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<ChainCertificate> certificate;
  std::optional<ChainWitness> witness;
  std::string method;
  std::vector<std::string> rejected;
};

using GrammarChain = std::vector<const Grammar*>;

// Throws StructuralError unless dimensions and parameter tables chain.
void validate_chain(const GrammarChain& gs);

// Grammar S -> (f1, ..., fk)(A2) for the invariant generators f over the
// head's ring variables.
Grammar invariant_grammar(const Grammar& head, const Grammar& next, const std::vector<KPoly>& invariant);

// A1(A2(...(v))) for one value per grammar; coefficients over the head's field.
Value chain_value(const GrammarChain& gs, const std::vector<const Value*>& vals);

CertCheck check_chain_certificate(const GrammarChain& gs, const ChainCertificate& c);
nlohmann::json chain_certificate_to_json(const GrammarChain& gs, const ChainCertificate& c);
ChainCertificate chain_certificate_from_json(const GrammarChain& gs, const nlohmann::json& j);

ChainResult chain_zeroness(const GrammarChain& gs, const ZeroOptions& o = {},
                           const std::vector<ChainCertificate>& user = {});
ChainResult indep_zeroness(const Grammar& a, const Grammar& b, const ZeroOptions& o = {},
                           const std::vector<ChainCertificate>& user = {});

}  // namespace pgz
