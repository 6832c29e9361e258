#include <doctest.h>

#include <random>

#include "argverify/baba/bruteforce.hpp"
#include "argverify/baba/from_graph.hpp"
#include "argverify/baba/semantics.hpp"
#include "argverify/error.hpp"
#include "frameworks.hpp"

using namespace argverify;
using namespace argverify::baba;
using argverify::testing::g1;
using argverify::testing::g2;
using argverify::testing::g3;

namespace {

std::vector<std::vector<std::string>> as_ids(const BipolarFramework& f, const std::vector<Extension>& exts) {
  std::vector<std::vector<std::string>> out;
  for (const auto& e : exts) out.push_back(f.ids(e));
  return out;
}

using Ids = std::vector<std::vector<std::string>>;

}  // namespace

TEST_CASE("framework construction mints one contrary per node") {
  auto f = FrameworkBuilder().assumption("b").assumption("a").fact("f").attack("f", "a").support("b", "a").build();
  CHECK(f.assumptions()[0].id == "a");  // sorted
  CHECK(f.contraries().size() == 3);
  CHECK(f.contrary_map().at("a") == "a~contrary");
  CHECK(f.rules().size() == 2);
  CHECK(f.fact_attacked().contains(0));

  CHECK_THROWS_AS(FrameworkBuilder().assumption("a").assumption("a").build(), MalformedInput);
  CHECK_THROWS_AS(FrameworkBuilder().assumption("a~contrary").build(), MalformedInput);
  CHECK_THROWS_AS(FrameworkBuilder().assumption("a").attack("a", "a").build(), MalformedInput);
  CHECK_THROWS_AS(FrameworkBuilder().assumption("a").fact("f").attack("a", "f").build(), MalformedInput);
  CHECK_THROWS_AS(FrameworkBuilder().assumption("a").support("zz", "a").build(), MalformedInput);
}

TEST_CASE("closure") {
  auto f2 = g2();
  CHECK(f2.ids(closure(f2, f2.make_set({"c"}))) == std::vector<std::string>{"a", "c"});
  CHECK(closure(f2, f2.empty_set()).empty());
  auto f1 = g1();
  CHECK(closure(f1, f1.make_set({"a", "b"})) == f1.make_set({"a", "b"}));
  CHECK_THROWS_AS(f1.make_set({"nope"}), MalformedInput);
  CHECK_THROWS_AS(closure(f1, AssumptionSet(5)), MalformedInput);
}

TEST_CASE("derived contraries and attacks") {
  auto f1 = g1();
  CHECK(derived_contraries(f1, f1.make_set({"b"})) == std::vector<std::string>{"a~contrary"});
  CHECK(derived_contraries(f1, f1.empty_set()).empty());
  auto f2 = g2();
  CHECK(derived_contraries(f2, f2.make_set({"c"})).empty());

  CHECK(attacks(f1, f1.make_set({"b"}), "a"));
  CHECK_FALSE(attacks(f1, f1.make_set({"a"}), "b"));
  CHECK_FALSE(attacks(f1, f1.empty_set(), "a"));
  CHECK_FALSE(attacks(f1, f1.empty_set(), "b"));
  CHECK_THROWS_AS(attacks(f1, f1.empty_set(), "zz"), MalformedInput);
}

TEST_CASE("conflict-freeness") {
  auto f1 = g1();
  CHECK_FALSE(is_conflict_free(f1, f1.make_set({"a", "b"})));
  CHECK(is_conflict_free(f1, f1.make_set({"b"})));
  CHECK(is_conflict_free(f1, f1.empty_set()));

  // Conflict only visible through closure: {c} pulls in a, which b attacks.
  auto f2 = g2();
  CHECK_FALSE(is_conflict_free(f2, f2.make_set({"b", "c"})));

  // A fact-attacked literal is never conflict-free.
  auto ff = FrameworkBuilder().assumption("a").fact("f").attack("f", "a").build();
  CHECK_FALSE(is_conflict_free(ff, ff.make_set({"a"})));
}

TEST_CASE("defence") {
  auto f1 = g1();
  CHECK(defends(f1, f1.empty_set(), "b"));
  CHECK_FALSE(defends(f1, f1.empty_set(), "a"));
  auto f3 = g3();
  CHECK(defends(f3, f3.make_set({"c"}), "a"));
  CHECK_FALSE(defends(f3, f3.empty_set(), "a"));

  // Counter-attacking a support consequence of the attacker defends: every
  // closed set containing t also contains u.
  auto lifted = FrameworkBuilder()
                    .assumption("x").assumption("t").assumption("u").assumption("d")
                    .attack("t", "x").support("t", "u").attack("d", "u")
                    .build();
  CHECK(defends(lifted, lifted.make_set({"d"}), "x"));
}

TEST_CASE("satisfies on the small reference frameworks") {
  auto f1 = g1();
  CHECK(satisfies(f1, f1.make_set({"b"}), Semantics::stable));
  CHECK_FALSE(satisfies(f1, f1.make_set({"a"}), Semantics::admissible));
  CHECK(satisfies(f1, f1.empty_set(), Semantics::admissible));
  CHECK(satisfies(f1, f1.make_set({"b"}), Semantics::preferred));
  CHECK(satisfies(f1, f1.make_set({"b"}), Semantics::complete));
  CHECK_FALSE(satisfies(f1, f1.empty_set(), Semantics::complete));

  auto f2 = g2();
  CHECK(satisfies(f2, f2.make_set({"b"}), Semantics::stable));
  CHECK(satisfies(f2, f2.make_set({"b"}), Semantics::complete));
  CHECK_FALSE(satisfies(f2, f2.make_set({"c"}), Semantics::admissible));  // not closed

  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    auto f = testing::random_framework(rng, {0, 8, 2});
    CHECK(satisfies(f, f.empty_set(), Semantics::admissible));
  }
}

TEST_CASE("brute-force enumeration") {
  auto f1 = g1();
  CHECK(as_ids(f1, enumerate_bruteforce(f1, Semantics::preferred)) == Ids{{"b"}});
  CHECK(as_ids(f1, enumerate_bruteforce(f1, Semantics::admissible)) == Ids{{"b"}, {}});

  auto empty = FrameworkBuilder().build();
  for (auto sem : kAllSemantics) CHECK(as_ids(empty, enumerate_bruteforce(empty, sem)) == Ids{{}});

  auto f2 = g2();
  CHECK(as_ids(f2, enumerate_bruteforce(f2, Semantics::stable)) == Ids{{"b"}});
  CHECK(as_ids(f2, enumerate_bruteforce(f2, Semantics::admissible)) == Ids{{"b"}, {}});

  auto f3 = g3();
  CHECK(as_ids(f3, enumerate_bruteforce(f3, Semantics::preferred)) == Ids{{"a", "c"}});
  CHECK(as_ids(f3, enumerate_bruteforce(f3, Semantics::admissible)) == Ids{{"a", "c"}, {"c"}, {}});

  FrameworkBuilder big;
  for (int i = 0; i < 17; ++i) big.assumption("x" + std::to_string(i));
  CHECK_THROWS_AS(enumerate_bruteforce(big.build(), Semantics::admissible), BoundExceeded);
  CHECK_NOTHROW(enumerate_bruteforce(big.build(), Semantics::stable, 17));
}

TEST_CASE("parallel subset scan matches the serial reference") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    auto f = testing::random_framework(rng, {0, 10, 2});
    for (auto sem : kAllSemantics)
      CHECK(enumerate_bruteforce(f, sem) == enumerate_bruteforce_serial(f, sem));
  }
}

TEST_CASE("closure properties on random frameworks") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<unsigned long> bits;
  for (int round = 0; round < 60; ++round) {
    auto f = testing::random_framework(rng, {1, 12, 0});
    const std::size_t n = f.assumption_count();
    const unsigned long mask_limit = (1ul << n) - 1;
    for (int k = 0; k < 10; ++k) {
      AssumptionSet s(n, bits(rng) & mask_limit), t(n, bits(rng) & mask_limit);
      const auto cs = closure(f, s), ct = closure(f, t);
      CHECK(s.is_subset_of(cs));
      CHECK(closure(f, cs) == cs);
      CHECK(closure(f, s | t) == (cs | ct));
      CHECK(closure(f, s).is_subset_of(closure(f, s | t)));
    }
  }
}

TEST_CASE("semantics lattice on random frameworks") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 60; ++round) {
    auto f = testing::random_framework(rng, {0, 8, 1});
    auto adm = enumerate_bruteforce(f, Semantics::admissible);
    auto contains = [](const std::vector<Extension>& xs, const Extension& e) {
      return std::find(xs.begin(), xs.end(), e) != xs.end();
    };
    auto pref = enumerate_bruteforce(f, Semantics::preferred);
    for (const auto& s : enumerate_bruteforce(f, Semantics::stable)) CHECK(contains(pref, s));
    for (const auto& s : pref) CHECK(contains(adm, s));
    for (const auto& s : enumerate_bruteforce(f, Semantics::complete)) CHECK(contains(adm, s));
    for (const auto& s : pref) CHECK(satisfies(f, s, Semantics::preferred));
  }
}

TEST_CASE("from_graph translation") {
  using graph::Edge;
  using graph::Node;
  using graph::NodeKind;
  using graph::Relation;

  graph::ArgumentGraph g;
  g.add_node(Node{"a", "A", 0, NodeKind::assumption});
  g.add_node(Node{"b", "B", 0, NodeKind::assumption});
  g.add_edge(Edge{"a", "b", Relation::attack, 0.9});
  auto t = from_graph(g);
  CHECK(t.framework.rules() == std::vector<Rule>{{"b~contrary", "a"}});
  CHECK(t.warnings.empty());

  graph::ArgumentGraph g2g;
  for (auto id : {"a", "b", "c"}) g2g.add_node(Node{id, id, 0, NodeKind::assumption});
  g2g.add_edge(Edge{"c", "a", Relation::support, 0.9});
  g2g.add_edge(Edge{"b", "a", Relation::attack, 0.9});
  auto t2 = from_graph(g2g);
  CHECK(t2.framework.ids(t2.framework.make_set({"a", "b", "c"})) == g2().ids(g2().make_set({"a", "b", "c"})));
  CHECK(t2.framework.rules() == g2().rules());
  CHECK(t2.framework.contraries().size() == 3);

  graph::ArgumentGraph gf;
  gf.add_node(Node{"a", "A", 0, NodeKind::assumption});
  gf.add_node(Node{"f", "F", 0, NodeKind::fact});
  gf.add_edge(Edge{"a", "f", Relation::attack, 0.8});
  gf.add_edge(Edge{"f", "a", Relation::attack, 0.8});
  auto tf = from_graph(gf);
  CHECK(tf.dropped_edges == 1);
  CHECK(tf.warnings.size() == 1);
  CHECK(tf.framework.rules().size() == tf.kept_edges);
  CHECK(tf.framework.contraries().size() == gf.node_count());
}
