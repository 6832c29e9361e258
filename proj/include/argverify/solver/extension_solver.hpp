#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "argverify/baba/framework.hpp"
#include "argverify/baba/semantics.hpp"
#include "argverify/sat/backend.hpp"
#include "argverify/solver/attack_matrix.hpp"

namespace argverify::solver {

enum class SizeStrategy { descending_cardinality };

struct SolverConfig {
  std::size_t k = 3;
  baba::Semantics semantics = baba::Semantics::admissible;
  SizeStrategy size_strategy = SizeStrategy::descending_cardinality;
  std::chrono::milliseconds timeout{30'000};
  std::uint64_t seed = 0;

  // Throws ConfigError naming the field.
  void validate() const;
};

struct SolveResult {
  // Non-increasing in size; equal sizes ordered by member ids.
  std::vector<baba::Extension> extensions;
  // False when the deadline cut the search short.
  bool complete = true;
  std::uint64_t sat_calls = 0;
};

// Search over one framework. Each query owns a fresh incremental SAT context.
// Single-threaded; movable so it can be handed to another thread, never
// shared. The framework must outlive the solver.
class ExtensionSolver {
 public:
  ExtensionSolver(const baba::BipolarFramework& framework, SolverConfig config);
  ExtensionSolver(ExtensionSolver&&) noexcept = default;
  ExtensionSolver& operator=(ExtensionSolver&&) noexcept = default;
  ExtensionSolver(const ExtensionSolver&) = delete;
  ExtensionSolver& operator=(const ExtensionSolver&) = delete;

  // Dispatches on config.semantics.
  SolveResult run();

  // Up to k sets satisfying config.semantics, largest first: an at-least-s
  // bound is asserted for s = n, n-1, ..., 0 and every model found at a level
  // is blocked before asking again.
  SolveResult k_largest();

  // Up to k subset-maximal admissible sets. Each admissible model is grown
  // by forcing strict supersets until UNSAT, then every subset of it is
  // blocked.
  SolveResult preferred();

  const AttackMatrix& attack_matrix() const noexcept { return matrix_; }

 private:
  const baba::BipolarFramework* framework_;
  SolverConfig config_;
  AttackMatrix matrix_;
};

SolveResult solve_k_largest(const baba::BipolarFramework& f, const SolverConfig& cfg);
SolveResult find_preferred(const baba::BipolarFramework& f, const SolverConfig& cfg);

}  // namespace argverify::solver
