#include <doctest.h>

#include <random>
#include <set>

#include "argverify/baba/bruteforce.hpp"
#include "argverify/baba/from_graph.hpp"
#include "argverify/baba/semantics.hpp"
#include "argverify/error.hpp"
#include "argverify/pipeline/clients.hpp"
#include "argverify/pipeline/mining.hpp"
#include "argverify/verify/feedback_file.hpp"
#include "argverify/verify/verification.hpp"
#include "graphs.hpp"

using namespace argverify;
using namespace argverify::verify;
using argverify::testing::make_graph;
using graph::ArgumentGraph;
using graph::NodeKind;
using graph::Relation;

namespace {

ArgumentGraph random_graph(std::mt19937_64& rng, int max_nodes, int max_facts) {
  std::vector<std::string> assumptions, facts;
  const int n = 1 + static_cast<int>(rng() % max_nodes);
  const int nf = static_cast<int>(rng() % (max_facts + 1));
  for (int i = 0; i < n; ++i) assumptions.push_back("a" + std::to_string(i));
  for (int i = 0; i < nf; ++i) facts.push_back("f" + std::to_string(i));
  ArgumentGraph g = make_graph(assumptions, {}, facts);
  const int edges = static_cast<int>(rng() % (2 * (n + nf) + 1));
  for (int e = 0; e < edges; ++e) {
    const bool from_fact = nf > 0 && rng() % 4 == 0;
    const auto src = from_fact ? facts[rng() % nf] : assumptions[rng() % n];
    const auto dst = assumptions[rng() % n];
    if (src == dst) continue;
    g.add_edge({src, dst, rng() % 3 == 0 ? Relation::attack : Relation::support, 0.9});
  }
  return g;
}

// A node on a support cycle does not count as its own supporter.
std::vector<std::size_t> supporter_counts_oracle(const ArgumentGraph& g) {
  std::vector<std::size_t> out(g.node_count(), 0);
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (g.node(v).kind != NodeKind::assumption) continue;
    std::set<std::size_t> reach;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto s = g.src_index(e), d = g.dst_index(e);
        if (g.edges()[e].relation != Relation::support || g.node(s).kind != NodeKind::assumption) continue;
        if ((d == v || reach.count(d)) && reach.insert(s).second) grew = true;
      }
    }
    reach.erase(v);
    out[v] = reach.size();
  }
  return out;
}

// Independent reading of the chain definition: attacks on support ancestors
// within min(m - 1, chain_depth) hops whose attacker is a fact or has no
// attacked member in its forward support closure.
std::set<std::pair<std::string, std::string>> undefended_oracle(const ArgumentGraph& g, const std::string& target,
                                                                const DepthConfig& depth) {
  const int hops = std::min(depth.m - 1, depth.chain_depth);
  std::map<std::string, int> dist{{target, 0}};
  for (int h = 1; h <= hops; ++h)
    for (const auto& e : g.edges())
      if (e.relation == Relation::support && g.node(e.src).kind == NodeKind::assumption && dist.count(e.dst) &&
          dist[e.dst] == h - 1 && !dist.count(e.src))
        dist[e.src] = h;

  auto counter_attacked = [&](const std::string& x) {
    if (g.node(x).kind == NodeKind::fact) return false;
    std::set<std::string> closure{x};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& e : g.edges())
        if (e.relation == Relation::support && closure.count(e.src) && g.node(e.dst).kind == NodeKind::assumption &&
            closure.insert(e.dst).second)
          grew = true;
    }
    for (const auto& e : g.edges())
      if (e.relation == Relation::attack && closure.count(e.dst)) return true;
    return false;
  };

  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : g.edges())
    if (e.relation == Relation::attack && dist.count(e.dst) && !counter_attacked(e.src)) out.insert({e.src, e.dst});
  return out;
}

const ArgumentGraph& fact_checked_risk() {
  static const ArgumentGraph g = [] {
    pipeline::MockExtractor ex;
    pipeline::MockClassifier cls;
    auto mined = pipeline::mine_document(pipeline::load_document(testing::fixture("risk_assessment.md")), ex, cls, {});
    return pipeline::ingest_facts(pipeline::load_document(testing::fixture("risk_facts.md")), mined.graph, ex, cls, {})
        .graph;
  }();
  return g;
}

}  // namespace

TEST_CASE("fact check examples") {
  CHECK(fact_check(make_graph({"a", "b"}, {{"a", "b", '-'}})).entries.empty());

  auto one = make_graph({"a"}, {{"f", "a", '-', 0.8}}, {"f"});
  auto r = fact_check(one);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0] == FactCheckEntry{"a", "f", 0.8});

  auto two = make_graph({"a", "b", "c"}, {{"f1", "a", '-'}, {"f2", "a", '-'}, {"b", "a", '+'}, {"f1", "c", '+'}},
                        {"f1", "f2"});
  r = fact_check(two);
  CHECK(r.entries.size() == 2);
  REQUIRE(r.corroborations.size() == 1);
  CHECK(r.corroborations[0] == FactCheckEntry{"c", "f1", 0.9});
  auto report = build_feedback(two, r, {}, {});
  REQUIRE(report.fact_checked.size() == 1);
  CHECK(report.fact_checked[0].attacks.size() == 2);
  const auto msg = render_feedback_message(two, report);
  CHECK(msg.find("Literals attacked by facts (1):") != std::string::npos);
  CHECK(msg.find("attacked by fact f1") < msg.find("attacked by fact f2"));
}

TEST_CASE("fact check entries correspond to fact attack edges") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 100; ++round) {
    auto g = random_graph(rng, 10, 4);
    std::multiset<std::tuple<std::string, std::string>> expected, got;
    for (const auto& e : g.edges())
      if (e.relation == Relation::attack && g.node(e.src).kind == NodeKind::fact) expected.insert({e.dst, e.src});
    for (const auto& e : fact_check(g).entries) got.insert({e.literal, e.fact});
    CHECK(got == expected);
  }
}

TEST_CASE("key literals rank by transitive support") {
  auto star = make_graph({"a", "b", "c", "d", "e", "f"},
                         {{"b", "a", '+'}, {"c", "a", '+'}, {"d", "a", '+'}, {"e", "a", '+'}, {"f", "a", '+'}});
  CHECK(select_key_literals(star, 1) == std::vector<std::string>{"a"});

  auto chain = make_graph({"a", "b", "c"}, {{"c", "b", '+'}, {"b", "a", '+'}});
  CHECK(transitive_support_counts(chain) == std::vector<std::size_t>{2, 1, 0});
  CHECK(select_key_literals(chain, 3) == std::vector<std::string>{"a", "b", "c"});

  auto edgeless = make_graph({"q", "d", "m", "a"}, {});
  CHECK(select_key_literals(edgeless, 2) == std::vector<std::string>{"a", "d"});
  CHECK(select_key_literals(edgeless, 10).size() == 4);
  CHECK_THROWS_AS(select_key_literals(edgeless, 0), ConfigError);

  auto with_fact = make_graph({"a", "b"}, {{"f", "a", '+'}, {"b", "a", '+'}}, {"f"});
  CHECK(select_key_literals(with_fact, 5) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("support counts match an independent fixpoint") {
  std::mt19937_64 rng(67);
  for (int round = 0; round < 100; ++round) {
    auto g = random_graph(rng, 25, 3);
    const auto counts = transitive_support_counts(g);
    CHECK(counts == supporter_counts_oracle(g));
    CHECK(counts == transitive_support_counts_serial(g));
  }
}

TEST_CASE("undefended attack examples") {
  DepthConfig d;
  auto g1 = graph::load_graph_file(testing::fixture("g1.json"));
  auto chains = find_undefended_attacks(g1, "a", d);
  REQUIRE(chains.size() == 1);
  CHECK(chains[0] == AttackChain{"b", {"a"}});

  auto g3 = graph::load_graph_file(testing::fixture("g3.json"));
  CHECK(find_undefended_attacks(g3, "a", d).empty());
  CHECK(has_counter_attacker(g3, "b"));
  auto f3 = baba::from_graph(g3).framework;
  CHECK(baba::defends(f3, f3.make_set({"c"}), "a"));

  // x attacks the end of a support chain of length m + 1.
  for (int m = 1; m <= 5; ++m) {
    std::vector<std::string> ids{"x"};
    std::vector<testing::EdgeSpec> edges;
    for (int i = 0; i <= m; ++i) ids.push_back("n" + std::to_string(i));
    for (int i = 1; i <= m; ++i) edges.push_back({"n" + std::to_string(i), "n" + std::to_string(i - 1), '+'});
    edges.push_back({"x", "n" + std::to_string(m), '-'});
    auto g = make_graph(ids, edges);
    DepthConfig cfg{m, 10};
    CHECK(find_undefended_attacks(g, "n0", cfg).empty());
    CHECK(find_undefended_attacks(g, "n1", cfg).size() == 1);
    cfg.m = m + 1;
    auto found = find_undefended_attacks(g, "n0", cfg);
    REQUIRE(found.size() == 1);
    CHECK(found[0].length() == static_cast<std::size_t>(m + 1));
    CHECK(found[0].attacked() == "n" + std::to_string(m));
    CHECK(found[0].path.back() == "n0");
  }

  CHECK_THROWS_AS(find_undefended_attacks(g1, "zz", d), MalformedInput);
  CHECK_THROWS_AS(find_undefended_attacks(g1, "a", {0, 4}), ConfigError);
}

TEST_CASE("depth fixture chain counts grow with m") {
  auto g = graph::load_graph_file(testing::fixture("depth.json"));
  std::vector<std::size_t> counts;
  for (int m = 1; m <= 4; ++m) counts.push_back(find_undefended_attacks(g, "k", {m, 4}).size());
  CHECK(counts == std::vector<std::size_t>{1, 2, 3, 4});
  CHECK(find_undefended_attacks(g, "k", {5, 4}).size() == 4);
  CHECK(find_undefended_attacks(g, "k", {5, 2}).size() == 3);
  CHECK_FALSE(find_undefended_attacks(g, "k", {3, 4}).empty());
  for (const auto& c : find_undefended_attacks(g, "k", {5, 4})) CHECK(c.attacker != "y");
}

TEST_CASE("undefended chains agree with the oracle and with defends") {
  std::mt19937_64 rng(71);
  int weak_links_checked = 0;
  for (int round = 0; round < 200; ++round) {
    auto g = random_graph(rng, 9, 2);
    const auto f = baba::from_graph(g).framework;
    auto all = f.empty_set();
    for (std::size_t i = 0; i < f.assumption_count(); ++i) all.insert(i);
    const DepthConfig depth{1 + static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)};
    for (const auto& n : g.nodes()) {
      if (n.kind != NodeKind::assumption) continue;
      const auto chains = find_undefended_attacks(g, n.id, depth);
      std::set<std::pair<std::string, std::string>> got;
      for (const auto& c : chains) {
        got.insert({c.attacker, c.attacked()});
        CHECK(c.path.back() == n.id);
        CHECK(static_cast<int>(c.length()) <= depth.m);
        for (std::size_t i = 0; i + 1 < c.path.size(); ++i) {
          auto s = g.index_of(c.path[i]);
          bool linked = false;
          for (auto e : g.out_edges(s))
            linked = linked || (g.edges()[e].dst == c.path[i + 1] && g.edges()[e].relation == Relation::support);
          CHECK(linked);
        }
        CHECK_FALSE(baba::defends(f, all, c.attacked()));
        ++weak_links_checked;
      }
      CHECK(got == undefended_oracle(g, n.id, depth));
    }
  }
  CHECK(weak_links_checked > 100);
}

TEST_CASE("fact-attacked literals are in no stable extension") {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 150; ++round) {
    auto g = random_graph(rng, 8, 3);
    const auto f = baba::from_graph(g).framework;
    const auto stable = baba::enumerate_bruteforce(f, baba::Semantics::stable);
    for (const auto& e : fact_check(g).entries) {
      const auto x = f.require_assumption(e.literal);
      for (const auto& ext : stable) CHECK_FALSE(ext.contains(x));
    }
  }
}

TEST_CASE("empty feedback renders as no findings") {
  auto g = make_graph({"a", "b"}, {{"a", "b", '+'}});
  auto report = analyze(g, {}, 3);
  CHECK(report.empty());
  CHECK(render_feedback_message(g, report) == std::string(kNoFindings) + "\n");
}

TEST_CASE("a single fact attack reports that literal's ancestry") {
  auto g = make_graph({"a", "b", "c", "d"}, {{"b", "a", '+'}, {"c", "b", '+'}, {"d", "c", '+'}, {"f", "a", '-', 0.85}},
                      {"f"});
  auto report = build_feedback(g, fact_check(g), {}, {3, 2});
  REQUIRE(report.fact_checked.size() == 1);
  const auto& finding = report.fact_checked[0];
  CHECK(finding.literal == "a");
  CHECK(finding.attacks == std::vector<FactCheckEntry>{{"a", "f", 0.85}});
  CHECK(finding.ancestry == std::vector<AncestryStep>{{"b", "a", 1}, {"c", "b", 2}});
  const auto msg = render_feedback_message(g, report);
  CHECK(msg.find("a \"text of a\"") != std::string::npos);
  CHECK(msg.find("attacked by fact f \"text of f\"") != std::string::npos);
  CHECK(msg.find("d \"text of d\"") == std::string::npos);
}

TEST_CASE("feedback on the fact-checked fixture lists exactly the planted contradictions") {
  const auto& g = fact_checked_risk();
  auto report = analyze(g, {}, 3);
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& f : report.fact_checked)
    for (const auto& a : f.attacks) got.insert({f.literal, a.fact});
  const std::set<std::pair<std::string, std::string>> planted{
      {"a0001", "f0001"}, {"a0003", "f0002"}, {"a0006", "f0002"}, {"a0012", "f0003"}, {"a0012", "f0004"}};
  CHECK(got == planted);
  REQUIRE(report.corroborations.size() == 1);
  CHECK(report.corroborations[0].literal == "a0007");

  const auto msg = render_feedback_message(g, report);
  for (const auto& [literal, fact] : planted) {
    CHECK(msg.find("- " + literal + " \"" + g.node(literal).text + "\"") != std::string::npos);
    CHECK(msg.find("attacked by fact " + fact) != std::string::npos);
  }
  CHECK(msg == testing::slurp(testing::fixture("golden/risk_feedback.txt")));
  CHECK(render_feedback_message(g, analyze(g, {}, 3)) == msg);
}

TEST_CASE("feedback file header") {
  FeedbackMeta meta{"abc123", {2, 5}, 4, "2026-01-02T03:04:05Z"};
  CHECK(feedback_file(meta, "body\n") ==
        "---\ngraph_sha256: abc123\nconfig: m=2 chain_depth=5 top_j=4\ntimestamp: 2026-01-02T03:04:05Z\n---\nbody\n");
  auto line = nlohmann::json::parse(checkpoint_line(meta, "body\n"));
  CHECK(line["graph_sha256"] == "abc123");
  CHECK(line["message"] == "body\n");
  CHECK(checkpoint_line(meta, "x").back() == '\n');

  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(format_utc(0) == "1970-01-01T00:00:00Z");
  CHECK(format_utc(1767225600) == "2026-01-01T00:00:00Z");
  CHECK(resolve_timestamp(std::string("fixed")) == "fixed");
  setenv("SOURCE_DATE_EPOCH", "86400", 1);
  CHECK(resolve_timestamp(std::nullopt) == "1970-01-02T00:00:00Z");
  unsetenv("SOURCE_DATE_EPOCH");
  CHECK(resolve_timestamp(std::nullopt).ends_with("Z"));
}
