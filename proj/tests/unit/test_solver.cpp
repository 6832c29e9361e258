#include <doctest.h>

#include <random>
#include <sstream>

#include "argverify/baba/bruteforce.hpp"
#include "argverify/error.hpp"
#include "argverify/solver/encoding.hpp"
#include "argverify/solver/extension_solver.hpp"
#include "frameworks.hpp"

using namespace argverify;
using namespace argverify::baba;
using namespace argverify::solver;
using argverify::sat::Lit;

namespace {

using Ids = std::vector<std::vector<std::string>>;

Ids as_ids(const BipolarFramework& f, const std::vector<Extension>& exts) {
  Ids out;
  for (const auto& e : exts) out.push_back(f.ids(e));
  return out;
}

SolverConfig config(Semantics sem, std::size_t k) {
  SolverConfig c;
  c.semantics = sem;
  c.k = k;
  return c;
}

// Models of the encoding projected on membership, by exhaustive search over
// all variables.
std::vector<Extension> encoding_models(const BipolarFramework& f, const SatEncoding& enc) {
  std::vector<Extension> out;
  const auto vars = static_cast<unsigned>(enc.var_count);
  for (unsigned long m = 0; m < (1ul << vars); ++m) {
    bool ok = true;
    for (const auto& c : enc.clauses) {
      bool sat = false;
      for (Lit l : c) sat = sat || ((((m >> l.var()) & 1u) != 0) != l.negated());
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Extension e(f.assumption_count(), m & ((1ul << f.assumption_count()) - 1));
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }
  sort_extensions(out);
  return out;
}

}  // namespace

TEST_CASE("attack matrix") {
  auto f1 = testing::g1();
  auto m = build_attack_matrix(f1);
  CHECK(m.entry_count() == 1);
  CHECK(m(1, 0));  // b attacks a
  CHECK_FALSE(m(0, 1));

  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    auto f = testing::random_framework(rng, {0, 40, 3});
    CHECK(build_attack_matrix(f) == build_attack_matrix_serial(f));
  }
}

TEST_CASE("admissible encoding of the single-attack framework") {
  auto f1 = testing::g1();
  auto enc = encode(f1, Semantics::admissible);
  CHECK(enc.var_count == 2);
  REQUIRE(enc.clauses.size() == 2);
  const std::vector<std::vector<Lit>> expected{{Lit::neg(0), Lit::neg(1)}, {Lit::neg(0)}};
  CHECK(enc.clauses == expected);
  CHECK_THROWS_AS(encode(f1, Semantics::preferred), MalformedInput);
}

TEST_CASE("DIMACS output names every variable") {
  auto f2 = testing::g2();
  auto enc = encode(f2, Semantics::complete);
  std::ostringstream out;
  write_dimacs(out, enc);
  const std::string text = out.str();
  CHECK(text.find("c var 1 a\n") != std::string::npos);
  CHECK(text.find("c var 3 c\n") != std::string::npos);
  CHECK(text.find("p cnf " + std::to_string(enc.var_count) + " " + std::to_string(enc.clauses.size())) !=
        std::string::npos);
  std::size_t zero_terminated = 0;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);)
    if (!line.empty() && line[0] != 'c' && line[0] != 'p') zero_terminated += line.ends_with(" 0") || line == "0";
  CHECK(zero_terminated == enc.clauses.size());
}

TEST_CASE("encoding models equal the reference semantics") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 120; ++round) {
    auto f = testing::random_framework(rng, {0, 7, 2});
    for (auto sem : {Semantics::admissible, Semantics::complete, Semantics::stable}) {
      auto enc = encode(f, sem);
      if (enc.var_count > 16) continue;
      CHECK(encoding_models(f, enc) == enumerate_bruteforce(f, sem));
    }
  }
}

TEST_CASE("cardinality counter") {
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t s = 1; s <= n; ++s) {
      auto b = sat::make_cdcl_backend();
      std::vector<Lit> inputs;
      for (std::size_t i = 0; i < n; ++i) inputs.push_back(Lit::pos(b->new_var()));
      auto counter = add_at_least_counter(*b, inputs);
      std::size_t models = 0;
      std::vector<Lit> assume{counter.at_least[s]};
      while (b->solve(assume) == sat::Status::satisfiable) {
        std::size_t ones = 0;
        std::vector<Lit> block;
        for (std::size_t i = 0; i < n; ++i) {
          ones += b->model_value(static_cast<sat::Var>(i));
          block.push_back(b->model_value(static_cast<sat::Var>(i)) ? ~inputs[i] : inputs[i]);
        }
        CHECK(ones >= s);
        ++models;
        b->add_clause(block);
      }
      std::size_t expected = 0;
      for (unsigned long m = 0; m < (1ul << n); ++m) expected += static_cast<std::size_t>(__builtin_popcountl(m)) >= s;
      CHECK(models == expected);
    }
}

TEST_CASE("solver on the reference frameworks") {
  auto f1 = testing::g1();
  CHECK(as_ids(f1, solve_k_largest(f1, config(Semantics::admissible, 2)).extensions) == Ids{{"b"}, {}});
  CHECK(as_ids(f1, find_preferred(f1, config(Semantics::preferred, 3)).extensions) == Ids{{"b"}});
  CHECK(as_ids(f1, solve_k_largest(f1, config(Semantics::stable, 3)).extensions) == Ids{{"b"}});

  auto f2 = testing::g2();
  CHECK(as_ids(f2, solve_k_largest(f2, config(Semantics::stable, 3)).extensions) == Ids{{"b"}});
  CHECK(as_ids(f2, solve_k_largest(f2, config(Semantics::complete, 3)).extensions) == Ids{{"b"}});

  auto f3 = testing::g3();
  CHECK(as_ids(f3, find_preferred(f3, config(Semantics::preferred, 3)).extensions) == Ids{{"a", "c"}});

  auto empty = FrameworkBuilder().build();
  for (auto sem : kAllSemantics) {
    ExtensionSolver s(empty, config(sem, 3));
    CHECK(as_ids(empty, s.run().extensions) == Ids{{}});
  }

  auto free = FrameworkBuilder().assumption("a").assumption("b").build();
  CHECK(as_ids(free, find_preferred(free, config(Semantics::preferred, 3)).extensions) == Ids{{"a", "b"}});
}

TEST_CASE("config validation") {
  auto f1 = testing::g1();
  SolverConfig bad;
  bad.k = 0;
  CHECK_THROWS_AS(ExtensionSolver(f1, bad), ConfigError);
  try {
    bad.validate();
  } catch (const ConfigError& e) {
    CHECK(e.field() == "k");
  }
  SolverConfig slow;
  slow.timeout = std::chrono::milliseconds(0);
  CHECK_THROWS_AS(slow.validate(), ConfigError);
}

TEST_CASE("solver honours the k-largest contract against the oracle") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 80; ++round) {
    auto f = testing::random_framework(rng, {0, 10, 2});
    const std::size_t k = 1 + rng() % 5;
    for (auto sem : kAllSemantics) {
      auto all = enumerate_bruteforce(f, sem);
      auto got = ExtensionSolver(f, config(sem, k)).run();
      CHECK(got.complete);
      REQUIRE(got.extensions.size() == std::min(k, all.size()));
      for (std::size_t i = 0; i < got.extensions.size(); ++i) {
        CHECK(std::find(all.begin(), all.end(), got.extensions[i]) != all.end());
        if (i > 0) CHECK(extension_precedes(got.extensions[i - 1], got.extensions[i]));
      }
      // Which sets of a tied size are returned is search order, but the
      // sizes must match the oracle's largest-first prefix.
      if (sem != Semantics::preferred)
        for (std::size_t i = 0; i < got.extensions.size(); ++i)
          CHECK(got.extensions[i].size() == all[i].size());
    }
  }
}

TEST_CASE("full enumeration equals the oracle") {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 60; ++round) {
    auto f = testing::random_framework(rng, {0, 9, 2});
    for (auto sem : kAllSemantics) {
      auto got = ExtensionSolver(f, config(sem, std::size_t{1} << f.assumption_count())).run();
      CHECK(got.complete);
      CHECK(got.extensions == enumerate_bruteforce(f, sem));
    }
  }
}

TEST_CASE("equal seeds give identical answers") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 20; ++round) {
    auto f = testing::random_framework(rng, {5, 14, 2});
    for (auto sem : kAllSemantics) {
      auto c = config(sem, 4);
      c.seed = 99;
      auto a = ExtensionSolver(f, c).run();
      auto b = ExtensionSolver(f, c).run();
      CHECK(a.extensions == b.extensions);
    }
  }
}
