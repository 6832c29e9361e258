#include "argverify/solver/extension_solver.hpp"

#include <algorithm>

#include "argverify/error.hpp"
#include "argverify/solver/encoding.hpp"

namespace argverify::solver {

using baba::AssumptionSet;
using sat::Lit;

void SolverConfig::validate() const {
  if (k < 1) throw ConfigError("k", "must be at least 1");
  if (timeout.count() <= 0) throw ConfigError("timeout", "must be positive");
}

ExtensionSolver::ExtensionSolver(const baba::BipolarFramework& framework, SolverConfig config)
    : framework_(&framework), config_(config), matrix_(build_attack_matrix(framework)) {
  config_.validate();
}

namespace {

struct Context {
  std::unique_ptr<sat::Backend> backend;
  std::size_t n = 0;
  sat::Clock::time_point deadline;
  std::uint64_t calls = 0;

  sat::Status solve(const std::vector<Lit>& assumptions) {
    ++calls;
    return backend->solve(assumptions, deadline);
  }

  AssumptionSet model() const {
    AssumptionSet s(n);
    for (std::size_t i = 0; i < n; ++i)
      if (backend->model_value(SatEncoding::membership(i))) s.insert(i);
    return s;
  }

  // Rules out exactly `s`.
  void block_exact(const AssumptionSet& s) {
    Clause c;
    for (std::size_t i = 0; i < n; ++i) {
      const Lit x = Lit::pos(SatEncoding::membership(i));
      c.push_back(s.contains(i) ? ~x : x);
    }
    backend->add_clause(c);
  }

  // Rules out `s` and all of its subsets.
  void block_subsets(const AssumptionSet& s) {
    Clause c;
    for (std::size_t i = 0; i < n; ++i)
      if (!s.contains(i)) c.push_back(Lit::pos(SatEncoding::membership(i)));
    backend->add_clause(c);
  }
};

Context open(const baba::BipolarFramework& f, const AttackMatrix& m, baba::Semantics sem,
             const SolverConfig& cfg) {
  Context ctx;
  ctx.backend = sat::make_cdcl_backend(cfg.seed);
  ctx.n = f.assumption_count();
  ctx.deadline = sat::Clock::now() + cfg.timeout;
  const SatEncoding enc = encode(f, m, sem);
  for (sat::Var v = 0; v < enc.var_count; ++v) ctx.backend->new_var();
  for (const auto& c : enc.clauses) ctx.backend->add_clause(c);
  return ctx;
}

}  // namespace

SolveResult ExtensionSolver::run() {
  return config_.semantics == baba::Semantics::preferred ? preferred() : k_largest();
}

SolveResult ExtensionSolver::k_largest() {
  if (config_.semantics == baba::Semantics::preferred) return preferred();
  Context ctx = open(*framework_, matrix_, config_.semantics, config_);

  std::vector<Lit> members;
  for (std::size_t i = 0; i < ctx.n; ++i) members.push_back(Lit::pos(SatEncoding::membership(i)));
  const CardinalityCounter counter = add_at_least_counter(*ctx.backend, members);

  SolveResult result;
  for (std::size_t s = ctx.n + 1; s-- > 0 && result.extensions.size() < config_.k;) {
    std::vector<Lit> assume;
    if (s > 0) assume.push_back(counter.at_least[s]);
    while (result.extensions.size() < config_.k) {
      const sat::Status status = ctx.solve(assume);
      if (status == sat::Status::timeout) {
        result.complete = false;
        s = 0;
        break;
      }
      if (status == sat::Status::unsatisfiable) break;
      AssumptionSet found = ctx.model();
      ctx.block_exact(found);
      result.extensions.push_back(std::move(found));
    }
  }
  result.sat_calls = ctx.calls;
  // Levels are visited largest first, so this only orders sets of equal size.
  baba::sort_extensions(result.extensions);
  return result;
}

SolveResult ExtensionSolver::preferred() {
  Context ctx = open(*framework_, matrix_, baba::Semantics::admissible, config_);
  SolveResult result;

  while (result.extensions.size() < config_.k) {
    sat::Status status = ctx.solve({});
    if (status == sat::Status::unsatisfiable) break;
    if (status == sat::Status::timeout) {
      result.complete = false;
      break;
    }
    AssumptionSet current = ctx.model();

    // Each successful step adds a member, so at most n steps.
    for (std::size_t step = 0; step < ctx.n && current.size() < ctx.n; ++step) {
      const Lit grow = Lit::pos(ctx.backend->new_var());
      Clause bigger{~grow};
      std::vector<Lit> assume{grow};
      for (std::size_t i = 0; i < ctx.n; ++i) {
        const Lit x = Lit::pos(SatEncoding::membership(i));
        (current.contains(i) ? assume : bigger).push_back(x);
      }
      ctx.backend->add_clause(bigger);
      status = ctx.solve(assume);
      const Clause retire{~grow};
      ctx.backend->add_clause(retire);
      if (status == sat::Status::satisfiable) {
        current = ctx.model();
        continue;
      }
      break;
    }
    if (status == sat::Status::timeout) {
      result.complete = false;
      break;
    }
    ctx.block_subsets(current);
    result.extensions.push_back(std::move(current));
  }
  result.sat_calls = ctx.calls;
  baba::sort_extensions(result.extensions);
  return result;
}

SolveResult solve_k_largest(const baba::BipolarFramework& f, const SolverConfig& cfg) {
  return ExtensionSolver(f, cfg).k_largest();
}

SolveResult find_preferred(const baba::BipolarFramework& f, const SolverConfig& cfg) {
  SolverConfig c = cfg;
  c.semantics = baba::Semantics::preferred;
  return ExtensionSolver(f, c).preferred();
}

}  // namespace argverify::solver
