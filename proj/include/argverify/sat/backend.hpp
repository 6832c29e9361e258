#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>

namespace argverify::sat {

using Var = std::int32_t;

// Literal packed as 2*var + negated.
class Lit {
 public:
  constexpr Lit() = default;
  static constexpr Lit pos(Var v) { return Lit(2 * v); }
  static constexpr Lit neg(Var v) { return Lit(2 * v + 1); }

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool negated() const { return code_ & 1; }
  constexpr std::int32_t code() const { return code_; }
  constexpr Lit operator~() const { return Lit(code_ ^ 1); }

  friend constexpr bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
  friend constexpr auto operator<=>(Lit a, Lit b) { return a.code_ <=> b.code_; }

  // DIMACS form: 1-based, negative when negated.
  constexpr int dimacs() const { return negated() ? -(var() + 1) : var() + 1; }

 private:
  constexpr explicit Lit(std::int32_t code) : code_(code) {}
  std::int32_t code_ = -2;
};

enum class Status { satisfiable, unsatisfiable, timeout };

using Clock = std::chrono::steady_clock;

// Incremental SAT contract used by the extension solver: fresh variables,
// permanent clause addition between calls, solving under assumption
// literals, and model readout after a satisfiable answer. Instances are not
// thread-safe; one instance may be moved between threads but never used by
// two at once.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual Var new_var() = 0;
  virtual Var var_count() const = 0;

  // Returns false once the clause database is unsatisfiable at the root.
  virtual bool add_clause(std::span<const Lit> clause) = 0;

  virtual Status solve(std::span<const Lit> assumptions,
                       std::optional<Clock::time_point> deadline = std::nullopt) = 0;

  // Valid after solve() returned satisfiable.
  virtual bool model_value(Var v) const = 0;

  virtual std::uint64_t conflicts() const = 0;
};

// Conflict-driven clause learning backend. The seed perturbs initial branching
// activities; equal seeds give identical search.
std::unique_ptr<Backend> make_cdcl_backend(std::uint64_t seed = 0);

}  // namespace argverify::sat
