#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "argverify/baba/framework.hpp"
#include "argverify/baba/semantics.hpp"
#include "argverify/sat/backend.hpp"
#include "argverify/solver/attack_matrix.hpp"

namespace argverify::solver {

using Clause = std::vector<sat::Lit>;

// CNF whose models are exactly the assumption sets satisfying one semantics.
//
// Variable i (0-based, DIMACS i+1) is membership of the i-th assumption in id
// order. Auxiliary variables, when present, follow the membership block.
// Clauses:
//   closed         a -> b                         for each support rule b <- a
//   conflict-free  not (t and x)                  for each matrix entry (t, x)
//                  not x                          for each fact-attacked x
//   defence        x -> OR{u : u attacks cl(t)}   for each attacker t of x
//   stable         x or OR{u : u attacks cl(x)}   for each x
//   complete       d_t <-> OR{u : u attacks cl(t)}
//                  AND{d_t : t attacks a member of cl(x)} -> x
// Attackers whose closure a fact already attacks are neutralised and
// generate no defence obligation.
struct SatEncoding {
  baba::Semantics semantics = baba::Semantics::admissible;
  std::size_t membership_vars = 0;
  sat::Var var_count = 0;
  std::vector<Clause> clauses;
  // One name per variable: the assumption id, or "defended(<id>)".
  std::vector<std::string> var_names;

  static sat::Var membership(std::size_t assumption) { return static_cast<sat::Var>(assumption); }
};

// Throws MalformedInput for preferred, which is computed by the maximality
// loop on top of the admissible encoding.
SatEncoding encode(const baba::BipolarFramework& f, const AttackMatrix& matrix, baba::Semantics sem);
SatEncoding encode(const baba::BipolarFramework& f, baba::Semantics sem);

// DIMACS CNF with a comment line per variable ("c var <n> <name>").
void write_dimacs(std::ostream& out, const SatEncoding& encoding);

// Unary prefix counter over `inputs` (sequential counter, one direction):
// asserting at_least[s] forces at least s inputs true. at_least[0] is unused.
// Adds (n^2 + n)/2 variables and at most twice that many clauses.
struct CardinalityCounter {
  std::vector<sat::Lit> at_least;
};

CardinalityCounter add_at_least_counter(sat::Backend& backend, const std::vector<sat::Lit>& inputs);

}  // namespace argverify::solver
