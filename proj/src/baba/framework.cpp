#include "argverify/baba/framework.hpp"

#include <algorithm>
#include <set>

#include "argverify/error.hpp"

namespace argverify::baba {

std::string contrary_id(std::string_view node_id) {
  std::string id(node_id);
  id.append(kContrarySuffix);
  return id;
}

std::vector<std::size_t> AssumptionSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(bits_.count());
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
    out.push_back(i);
  return out;
}

std::map<std::string, std::string> BipolarFramework::contrary_map() const {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < assumptions_.size(); ++i) out.emplace(assumptions_[i].id, contraries_[i].id);
  return out;
}

std::optional<std::size_t> BipolarFramework::assumption_index(std::string_view id) const {
  auto it = assumption_by_id_.find(std::string(id));
  if (it == assumption_by_id_.end()) return std::nullopt;
  return it->second;
}

std::size_t BipolarFramework::require_assumption(std::string_view id) const {
  if (auto i = assumption_index(id)) return *i;
  throw MalformedInput("unknown assumption id '" + std::string(id) + "'");
}

bool BipolarFramework::is_fact(std::string_view id) const {
  return fact_by_id_.contains(std::string(id));
}

AssumptionSet BipolarFramework::make_set(std::span<const std::string> ids) const {
  AssumptionSet set = empty_set();
  for (const auto& id : ids) set.insert(require_assumption(id));
  return set;
}

AssumptionSet BipolarFramework::make_set(std::initializer_list<std::string_view> ids) const {
  AssumptionSet set = empty_set();
  for (auto id : ids) set.insert(require_assumption(id));
  return set;
}

std::vector<std::string> BipolarFramework::ids(const AssumptionSet& set) const {
  validate(set);
  std::vector<std::string> out;
  for (auto i : set.indices()) out.push_back(assumptions_[i].id);
  return out;
}

void BipolarFramework::validate(const AssumptionSet& set) const {
  if (set.universe() != assumptions_.size())
    throw MalformedInput("assumption set has universe " + std::to_string(set.universe()) +
                         ", framework has " + std::to_string(assumptions_.size()) + " assumptions");
}

FrameworkBuilder& FrameworkBuilder::assumption(std::string id, std::string text) {
  nodes_.push_back(Sentence{std::move(id), std::move(text), SentenceKind::assumption});
  return *this;
}

FrameworkBuilder& FrameworkBuilder::fact(std::string id, std::string text) {
  nodes_.push_back(Sentence{std::move(id), std::move(text), SentenceKind::fact});
  return *this;
}

FrameworkBuilder& FrameworkBuilder::support(std::string from, std::string to) {
  edges_.push_back(PendingEdge{std::move(from), std::move(to), false});
  return *this;
}

FrameworkBuilder& FrameworkBuilder::attack(std::string from, std::string to) {
  edges_.push_back(PendingEdge{std::move(from), std::move(to), true});
  return *this;
}

namespace {

bool ends_with_suffix(const std::string& id) {
  return id.size() >= kContrarySuffix.size() &&
         std::string_view(id).substr(id.size() - kContrarySuffix.size()) == kContrarySuffix;
}

}  // namespace

BipolarFramework FrameworkBuilder::build() const {
  BipolarFramework f;

  std::set<std::string> seen;
  for (const auto& node : nodes_) {
    if (node.id.empty()) throw MalformedInput("sentence id must not be empty");
    if (ends_with_suffix(node.id))
      throw MalformedInput("id '" + node.id + "' uses the reserved contrary suffix");
    if (!seen.insert(node.id).second) throw MalformedInput("duplicate sentence id '" + node.id + "'");
    (node.kind == SentenceKind::fact ? f.facts_ : f.assumptions_).push_back(node);
  }
  auto by_id = [](const Sentence& a, const Sentence& b) { return a.id < b.id; };
  std::sort(f.assumptions_.begin(), f.assumptions_.end(), by_id);
  std::sort(f.facts_.begin(), f.facts_.end(), by_id);

  for (std::size_t i = 0; i < f.assumptions_.size(); ++i) f.assumption_by_id_.emplace(f.assumptions_[i].id, i);
  for (std::size_t i = 0; i < f.facts_.size(); ++i) f.fact_by_id_.emplace(f.facts_[i].id, i);
  for (const auto* group : {&f.assumptions_, &f.facts_})
    for (const auto& s : *group)
      f.contraries_.push_back(Sentence{contrary_id(s.id), "not: " + s.text, SentenceKind::contrary});

  const std::size_t n = f.assumptions_.size();
  f.support_out_.assign(n, {});
  f.attack_out_.assign(n, {});
  f.fact_attack_out_.assign(f.facts_.size(), {});
  f.fact_attacked_ = AssumptionSet(n);

  std::set<Rule> rules;
  for (const auto& e : edges_) {
    if (e.from == e.to) throw MalformedInput("self-loop on '" + e.from + "'");
    const auto body_assumption = f.assumption_index(e.from);
    const auto body_fact = f.fact_by_id_.find(e.from);
    if (!body_assumption && body_fact == f.fact_by_id_.end())
      throw MalformedInput("rule body '" + e.from + "' is not a known sentence");
    if (f.is_fact(e.to))
      throw MalformedInput("edge " + e.from + " -> " + e.to + " targets a fact; facts are unattackable");
    const std::size_t head = f.require_assumption(e.to);

    Rule rule{e.attack ? contrary_id(e.to) : e.to, e.from};
    if (!rules.insert(rule).second) continue;
    if (body_assumption) {
      (e.attack ? f.attack_out_ : f.support_out_)[*body_assumption].push_back(head);
    } else if (e.attack) {
      f.fact_attack_out_[body_fact->second].push_back(head);
      f.fact_attacked_.insert(head);
    }
    // Fact-bodied support rules are kept but do not propagate through closure.
  }
  f.rules_.assign(rules.begin(), rules.end());
  for (auto* adj : {&f.support_out_, &f.attack_out_, &f.fact_attack_out_})
    for (auto& row : *adj) std::sort(row.begin(), row.end());
  return f;
}

}  // namespace argverify::baba
