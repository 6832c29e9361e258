#include "argverify/solver/encoding.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "argverify/error.hpp"

namespace argverify::solver {

namespace {

using baba::AssumptionSet;
using sat::Lit;

struct ClauseSink {
  std::set<Clause> seen;
  std::vector<Clause> ordered;

  void add(Clause c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (seen.insert(c).second) ordered.push_back(std::move(c));
  }
};

Lit member(std::size_t i) { return Lit::pos(SatEncoding::membership(i)); }

// counter[t] = every u that attacks some member of closure({t}).
std::vector<AssumptionSet> counter_attackers(const baba::BipolarFramework& f, const AttackMatrix& m,
                                             const std::vector<AssumptionSet>& closures) {
  std::vector<AssumptionSet> out(f.assumption_count(), f.empty_set());
  for (std::size_t t = 0; t < f.assumption_count(); ++t)
    for (std::size_t y : closures[t].indices()) out[t] |= m.attackers_of(y);
  return out;
}

}  // namespace

SatEncoding encode(const baba::BipolarFramework& f, const AttackMatrix& m, baba::Semantics sem) {
  using baba::Semantics;
  if (sem == Semantics::preferred)
    throw MalformedInput("preferred has no direct encoding; use the maximality search");
  const std::size_t n = f.assumption_count();
  if (m.size() != n) throw MalformedInput("attack matrix does not match framework");

  SatEncoding enc;
  enc.semantics = sem;
  enc.membership_vars = n;
  enc.var_count = static_cast<sat::Var>(n);
  for (const auto& a : f.assumptions()) enc.var_names.push_back(a.id);

  std::vector<AssumptionSet> closures;
  closures.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    AssumptionSet single = f.empty_set();
    single.insert(t);
    closures.push_back(baba::closure(f, single));
  }
  const auto counter = counter_attackers(f, m, closures);
  auto neutralised = [&](std::size_t t) { return f.fact_attacked().intersects(closures[t]); };
  auto counter_clause = [&](std::size_t t, Clause c) {
    for (std::size_t u : counter[t].indices()) c.push_back(member(u));
    return c;
  };

  ClauseSink sink;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b : f.supports_from(a)) sink.add({~member(a), member(b)});

  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t x : m.row(t).indices()) sink.add({~member(t), ~member(x)});
  for (std::size_t x : f.fact_attacked().indices()) sink.add({~member(x)});

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t t : m.attackers_of(x).indices())
      if (!neutralised(t)) sink.add(counter_clause(t, {~member(x)}));

  if (sem == Semantics::stable) {
    for (std::size_t x = 0; x < n; ++x)
      if (!neutralised(x)) sink.add(counter_clause(x, {member(x)}));
  }

  if (sem == Semantics::complete) {
    std::vector<sat::Var> defended(n, -1);
    for (std::size_t t = 0; t < n; ++t) {
      if (m.row(t).empty() || neutralised(t)) continue;
      const sat::Var d = enc.var_count++;
      defended[t] = d;
      enc.var_names.push_back("defended(" + f.assumptions()[t].id + ")");
      sink.add(counter_clause(t, {Lit::neg(d)}));
      for (std::size_t u : counter[t].indices()) sink.add({~member(u), Lit::pos(d)});
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (f.fact_attacked().intersects(closures[x])) continue;
      Clause c{member(x)};
      for (std::size_t y : closures[x].indices())
        for (std::size_t t : m.attackers_of(y).indices())
          if (defended[t] >= 0) c.push_back(Lit::neg(defended[t]));
      sink.add(std::move(c));
    }
  }

  enc.clauses = std::move(sink.ordered);
  return enc;
}

SatEncoding encode(const baba::BipolarFramework& f, baba::Semantics sem) {
  return encode(f, build_attack_matrix(f), sem);
}

void write_dimacs(std::ostream& out, const SatEncoding& enc) {
  out << "c argverify " << baba::to_string(enc.semantics) << " encoding\n";
  out << "c variables 1.." << enc.membership_vars << " are assumptions in id order\n";
  for (sat::Var v = 0; v < enc.var_count; ++v) out << "c var " << v + 1 << ' ' << enc.var_names[v] << '\n';
  out << "p cnf " << enc.var_count << ' ' << enc.clauses.size() << '\n';
  for (const auto& c : enc.clauses) {
    for (Lit l : c) out << l.dimacs() << ' ';
    out << "0\n";
  }
}

CardinalityCounter add_at_least_counter(sat::Backend& backend, const std::vector<sat::Lit>& inputs) {
  const std::size_t n = inputs.size();
  CardinalityCounter out;
  out.at_least.resize(n + 1);
  // prev[j]: "at least j of the first i-1 inputs are true", j = 1..i-1.
  std::vector<Lit> prev(1);
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Lit> cur(i + 1);
    for (std::size_t j = 1; j <= i; ++j) {
      cur[j] = Lit::pos(backend.new_var());
      // cur[j] -> prev[j] or (x_i and prev[j-1])
      Clause with_input{~cur[j], inputs[i - 1]};
      Clause with_prev{~cur[j]};
      if (j <= i - 1) {
        with_input.push_back(prev[j]);
        with_prev.push_back(prev[j]);
      }
      backend.add_clause(with_input);
      if (j >= 2) {
        with_prev.push_back(prev[j - 1]);
        backend.add_clause(with_prev);
      }
    }
    prev = std::move(cur);
  }
  for (std::size_t s = 1; s <= n; ++s) out.at_least[s] = prev[s];
  return out;
}

}  // namespace argverify::solver
