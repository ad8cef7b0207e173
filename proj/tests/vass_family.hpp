#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pgz/vass.hpp"

namespace pgz::fixture {

// Normalized reset VASS with dim <= 2, <= 2 states and <= 3 transitions:
// every one-state dim-1 system exhaustively, then seeded random samples.
inline std::vector<ResetVass> vass_family(std::size_t random_count, std::uint32_t seed = 2024) {
  auto effects = [](std::size_t dim) {
    std::vector<VassTransition> out;
    for (std::size_t i = 0; i < dim; ++i)
      for (int s : {1, -1}) {
        VassTransition t;
        t.step.assign(dim, 0);
        t.step[i] = s;
        out.push_back(t);
      }
    for (std::size_t mask = 0; mask < (1u << dim); ++mask) {
      VassTransition t;
      t.is_reset = true;
      for (std::size_t i = 0; i < dim; ++i)
        if (mask >> i & 1) t.resets.push_back(i);
      out.push_back(t);
    }
    return out;
  };
  std::vector<ResetVass> fam;
  auto e1 = effects(1);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= e1.size();
    for (std::size_t code = 0; code < total; ++code) {
      ResetVass v;
      v.dim = 1;
      v.states = {"p"};
      v.accepting = {true};
      for (std::size_t k = 0, c = code; k < n; ++k, c /= e1.size()) v.transitions.push_back(e1[c % e1.size()]);
      fam.push_back(v);
    }
  }
  std::mt19937 rng(seed);
  for (std::size_t s = 0; s < random_count; ++s) {
    ResetVass v;
    v.dim = 1 + rng() % 2;
    std::size_t nq = 1 + rng() % 2;
    for (std::size_t q = 0; q < nq; ++q) {
      v.states.push_back("q" + std::to_string(q));
      v.accepting.push_back(rng() % 2 == 0);
    }
    if (rng() % 4 != 0) v.accepting[0] = true;
    auto e = effects(v.dim);
    std::size_t nt = 1 + rng() % 3;
    for (std::size_t k = 0; k < nt; ++k) {
      VassTransition t = e[rng() % e.size()];
      t.from = rng() % nq;
      t.to = rng() % nq;
      v.transitions.push_back(t);
    }
    fam.push_back(v);
  }
  return fam;
}

struct FamilyReport {
  std::size_t systems = 0, words = 0, mismatches = 0, invariant_failures = 0;
  std::string first_failure;
};

namespace detail {

struct Sim {
  std::size_t state = 0;
  bool connected = true, dipped = false;
  std::vector<std::int64_t> z;  // counters as a Z-VASS
};

inline void fail(FamilyReport& r, std::size_t& counter, const ResetVass& v, const std::string& w,
                 const std::string& what) {
  ++counter;
  if (r.first_failure.empty()) r.first_failure = what + " on word '" + w + "' for\n" + vass_to_string(v);
}

inline void walk(const ResetVass& v, const NumericTransducer& t, const std::string& w, std::size_t q,
                 const std::vector<QPoly>& regs, const Sim& sim, std::size_t max_len, FamilyReport& r) {
  ++r.words;
  std::size_t n = w.size();
  QPoly out = eval_num(t, t.output[q], regs);
  std::vector<std::size_t> run;
  for (char c : w) run.push_back(t.letter_index(c));
  if (!out.is_zero() != is_zero_run(v, run)) fail(r, r.mismatches, v, w, "output disagrees with the run oracle");

  if (sim.connected) {
    // Invariant 1: counter registers are the Z-VASS coordinates.
    for (std::size_t i = 0; i < v.dim; ++i)
      if (regs[3 + i] != QPoly::constant(Rat(sim.z[i]), t.ring)) fail(r, r.invariant_failures, v, w, "invariant 1");
    // Invariant 2: the error register vanishes iff a coordinate dipped.
    if (regs[2].is_zero() != sim.dipped) fail(r, r.invariant_failures, v, w, "invariant 2");
    // Invariant 3(b) with the auxiliary register starting at 1.
    if (regs[1] != QPoly::constant(Rat(static_cast<long>(n + 1)), t.ring)) fail(r, r.invariant_failures, v, w, "invariant 3(b)");
    // Invariant 3(a) over [0, n].
    for (std::size_t i = 0; i <= n; ++i) {
      Rat pt(static_cast<long>(i));
      bool z = evaluate(regs[0], std::span<const Rat>(&pt, 1)) == 0;
      if (z != (i != 0)) fail(r, r.invariant_failures, v, w, "invariant 3(a)");
    }
    // Invariant 3 on valid prefixes.
    if (!sim.dipped) {
      std::int64_t sum = 0;
      bool zero = true;
      for (auto c : sim.z) sum += c, zero = zero && c == 0;
      Rat pt(static_cast<long>(sum));
      bool nz = evaluate(regs[0], std::span<const Rat>(&pt, 1)) != 0;
      if (nz != zero) fail(r, r.invariant_failures, v, w, "invariant 3");
    }
  }
  if (n == max_len) return;
  for (std::size_t a = 0; a < t.input.size(); ++a) {
    const NumTransition& tr = t.delta[q][a];
    std::vector<QPoly> next;
    for (const auto& u : tr.updates) next.push_back(eval_num(t, u, regs));
    Sim s = sim;
    const VassTransition& vt = v.transitions[a];
    if (s.connected && vt.from == s.state) {
      s.state = vt.to;
      for (std::size_t i = 0; i < v.dim; ++i) {
        if (vt.is_reset) {
          for (auto k : vt.resets)
            if (k == i) s.z[i] = 0;
        } else {
          s.z[i] += vt.step[i];
        }
        if (s.z[i] < 0) s.dipped = true;
      }
    } else {
      s.connected = false;
    }
    walk(v, t, w + t.input[a], tr.to, next, s, max_len, r);
  }
}

}  // namespace detail

// Checks every word up to max_len against the run oracle and the register
// invariants on every connected prefix.
inline void check_end_to_end(const ResetVass& v, std::size_t max_len, FamilyReport& r) {
  ++r.systems;
  NumericTransducer t = compile_to_transducer(v);
  std::vector<QPoly> regs;
  for (auto c : t.init) regs.push_back(QPoly::constant(Rat(static_cast<long>(c)), t.ring));
  detail::Sim s;
  s.state = v.initial;
  s.z.assign(v.dim, 0);
  detail::walk(v, t, "", t.initial, regs, s, max_len, r);
}

}  // namespace pgz::fixture
