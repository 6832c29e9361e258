#include <doctest.h>

#include <random>

#include "argverify/sat/backend.hpp"

using namespace argverify::sat;

namespace {

using Cnf = std::vector<std::vector<Lit>>;

bool eval(const Cnf& cnf, unsigned long mask, const std::vector<Lit>& assumptions = {}) {
  auto val = [&](Lit l) { return (((mask >> l.var()) & 1u) != 0) != l.negated(); };
  for (Lit a : assumptions)
    if (!val(a)) return false;
  for (const auto& c : cnf) {
    bool sat = false;
    for (Lit l : c) sat = sat || val(l);
    if (!sat) return false;
  }
  return true;
}

bool brute_sat(const Cnf& cnf, int vars, const std::vector<Lit>& assumptions = {}) {
  for (unsigned long m = 0; m < (1ul << vars); ++m)
    if (eval(cnf, m, assumptions)) return true;
  return false;
}

Cnf random_cnf(std::mt19937_64& rng, int vars, int clauses, int width) {
  std::uniform_int_distribution<int> var(0, vars - 1), coin(0, 1), w(1, width);
  Cnf cnf;
  for (int i = 0; i < clauses; ++i) {
    std::vector<Lit> c;
    for (int j = w(rng); j > 0; --j) c.push_back(coin(rng) ? Lit::pos(var(rng)) : Lit::neg(var(rng)));
    cnf.push_back(c);
  }
  return cnf;
}

unsigned long model_mask(const Backend& b, int vars) {
  unsigned long m = 0;
  for (int v = 0; v < vars; ++v)
    if (b.model_value(v)) m |= 1ul << v;
  return m;
}

}  // namespace

TEST_CASE("literal encoding") {
  CHECK(Lit::pos(0).dimacs() == 1);
  CHECK(Lit::neg(4).dimacs() == -5);
  CHECK(~Lit::pos(3) == Lit::neg(3));
  CHECK(Lit::neg(2).var() == 2);
}

TEST_CASE("trivial instances") {
  auto b = make_cdcl_backend();
  CHECK(b->solve({}) == Status::satisfiable);
  Var x = b->new_var();
  std::vector<Lit> unit{Lit::pos(x)}, neg{Lit::neg(x)};
  CHECK(b->add_clause(unit));
  CHECK(b->solve({}) == Status::satisfiable);
  CHECK(b->model_value(x));
  CHECK(b->solve(neg) == Status::unsatisfiable);
  CHECK(b->solve({}) == Status::satisfiable);  // failed assumption is not permanent
  CHECK_FALSE(b->add_clause(neg));
  CHECK(b->solve({}) == Status::unsatisfiable);

  auto e = make_cdcl_backend();
  e->new_var();
  CHECK_FALSE(e->add_clause(std::vector<Lit>{}));
}

TEST_CASE("pigeonhole 5 into 4 is unsatisfiable") {
  auto b = make_cdcl_backend();
  const int p = 5, h = 4;
  auto v = [&](int i, int j) { return i * h + j; };
  for (int i = 0; i < p * h; ++i) b->new_var();
  for (int i = 0; i < p; ++i) {
    std::vector<Lit> c;
    for (int j = 0; j < h; ++j) c.push_back(Lit::pos(v(i, j)));
    b->add_clause(c);
  }
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < p; ++i)
      for (int k = i + 1; k < p; ++k) b->add_clause(std::vector<Lit>{Lit::neg(v(i, j)), Lit::neg(v(k, j))});
  CHECK(b->solve({}) == Status::unsatisfiable);
  CHECK(b->conflicts() > 0);
}

TEST_CASE("agrees with exhaustive search on random 3-CNF") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 300; ++round) {
    const int vars = 4 + static_cast<int>(rng() % 9);
    const int clauses = static_cast<int>(rng() % (vars * 6));
    auto cnf = random_cnf(rng, vars, clauses, 3);
    auto b = make_cdcl_backend(round);
    for (int i = 0; i < vars; ++i) b->new_var();
    for (auto& c : cnf) b->add_clause(c);
    const bool expected = brute_sat(cnf, vars);
    const auto st = b->solve({});
    REQUIRE(st != Status::timeout);
    CHECK((st == Status::satisfiable) == expected);
    if (st == Status::satisfiable) CHECK(eval(cnf, model_mask(*b, vars)));

    // Incremental use: assumptions, then more clauses, then solve again.
    std::vector<Lit> assumptions{Lit::pos(0), Lit::neg(1)};
    const auto st2 = b->solve(assumptions);
    CHECK((st2 == Status::satisfiable) == brute_sat(cnf, vars, assumptions));
    if (st2 == Status::satisfiable) CHECK(eval(cnf, model_mask(*b, vars), assumptions));

    auto extra = random_cnf(rng, vars, 3, 2);
    for (auto& c : extra) {
      b->add_clause(c);
      cnf.push_back(c);
    }
    const auto st3 = b->solve({});
    CHECK((st3 == Status::satisfiable) == brute_sat(cnf, vars));
  }
}

TEST_CASE("model enumeration by blocking clauses counts every model") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 40; ++round) {
    const int vars = 6;
    auto cnf = random_cnf(rng, vars, 8, 3);
    std::size_t expected = 0;
    for (unsigned long m = 0; m < (1ul << vars); ++m) expected += eval(cnf, m);
    auto b = make_cdcl_backend();
    for (int i = 0; i < vars; ++i) b->new_var();
    for (auto& c : cnf) b->add_clause(c);
    std::size_t found = 0;
    while (b->solve({}) == Status::satisfiable) {
      ++found;
      std::vector<Lit> block;
      for (int v = 0; v < vars; ++v) block.push_back(b->model_value(v) ? Lit::neg(v) : Lit::pos(v));
      if (!b->add_clause(block)) break;
    }
    CHECK(found == expected);
  }
}

TEST_CASE("an expired deadline reports timeout") {
  auto b = make_cdcl_backend();
  const int p = 9, h = 8;
  for (int i = 0; i < p * h; ++i) b->new_var();
  for (int i = 0; i < p; ++i) {
    std::vector<Lit> c;
    for (int j = 0; j < h; ++j) c.push_back(Lit::pos(i * h + j));
    b->add_clause(c);
  }
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < p; ++i)
      for (int k = i + 1; k < p; ++k) b->add_clause(std::vector<Lit>{Lit::neg(i * h + j), Lit::neg(k * h + j)});
  CHECK(b->solve({}, Clock::now() - std::chrono::seconds(1)) == Status::timeout);
}
