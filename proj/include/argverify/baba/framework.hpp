#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace argverify::baba {

enum class SentenceKind { assumption, contrary, fact };

struct Sentence {
  std::string id;
  std::string text;
  SentenceKind kind = SentenceKind::assumption;

  bool operator==(const Sentence&) const = default;
};

// Mined text carries no explicit negations, so every node gets a minted
// contrary whose id is the node id plus this suffix. Node ids ending in the
// suffix are rejected.
inline constexpr std::string_view kContrarySuffix = "~contrary";

std::string contrary_id(std::string_view node_id);

// head <- body. The head is an assumption id (support) or a contrary id
// (attack); the body is a single assumption or fact id.
struct Rule {
  std::string head;
  std::string body;

  auto operator<=>(const Rule&) const = default;
};

// A set of assumptions of one framework, stored as a bitset over the
// framework's assumption indices. Index i is the i-th assumption in id order.
class AssumptionSet {
 public:
  AssumptionSet() = default;
  explicit AssumptionSet(std::size_t universe) : bits_(universe) {}
  AssumptionSet(std::size_t universe, unsigned long mask) : bits_(universe, mask) {}

  std::size_t universe() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  bool contains(std::size_t i) const { return bits_.test(i); }
  void insert(std::size_t i) { bits_.set(i); }
  void erase(std::size_t i) { bits_.reset(i); }

  bool is_subset_of(const AssumptionSet& other) const { return bits_.is_subset_of(other.bits_); }
  bool is_proper_subset_of(const AssumptionSet& other) const {
    return bits_.is_proper_subset_of(other.bits_);
  }
  bool intersects(const AssumptionSet& other) const { return bits_.intersects(other.bits_); }

  AssumptionSet& operator|=(const AssumptionSet& other) {
    bits_ |= other.bits_;
    return *this;
  }
  friend AssumptionSet operator|(AssumptionSet a, const AssumptionSet& b) { return a |= b; }

  // Member indices in ascending order.
  std::vector<std::size_t> indices() const;

  const boost::dynamic_bitset<>& bits() const noexcept { return bits_; }

  friend bool operator==(const AssumptionSet& a, const AssumptionSet& b) {
    return a.bits_ == b.bits_;
  }

 private:
  boost::dynamic_bitset<> bits_;
};

using Extension = AssumptionSet;

// Bipolar ABA framework: assumptions, facts, one minted contrary per node and
// single-body rules. Immutable once built; all queries are const and safe to
// share across threads.
class BipolarFramework {
 public:
  std::size_t assumption_count() const noexcept { return assumptions_.size(); }
  std::size_t fact_count() const noexcept { return facts_.size(); }

  // Sorted by id; position is the assumption index used by AssumptionSet.
  const std::vector<Sentence>& assumptions() const noexcept { return assumptions_; }
  const std::vector<Sentence>& facts() const noexcept { return facts_; }
  // One contrary per node (assumptions first, then facts).
  const std::vector<Sentence>& contraries() const noexcept { return contraries_; }
  // Sorted and duplicate-free.
  const std::vector<Rule>& rules() const noexcept { return rules_; }

  // assumption id -> contrary id, total over assumptions.
  std::map<std::string, std::string> contrary_map() const;

  std::optional<std::size_t> assumption_index(std::string_view id) const;
  // Throws MalformedInput for ids that are not assumptions.
  std::size_t require_assumption(std::string_view id) const;
  bool is_fact(std::string_view id) const;

  // Heads b of support rules b <- a with both ends assumptions.
  const std::vector<std::size_t>& supports_from(std::size_t a) const { return support_out_[a]; }
  // Assumptions x with a rule contrary(x) <- a.
  const std::vector<std::size_t>& attacks_from(std::size_t a) const { return attack_out_[a]; }
  // Assumptions x with a rule contrary(x) <- f for fact index f.
  const std::vector<std::size_t>& fact_attacks_from(std::size_t f) const { return fact_attack_out_[f]; }
  // Assumptions directly attacked by some fact.
  const AssumptionSet& fact_attacked() const noexcept { return fact_attacked_; }

  AssumptionSet empty_set() const { return AssumptionSet(assumptions_.size()); }
  // Throws MalformedInput on ids that are not assumptions of this framework.
  AssumptionSet make_set(std::span<const std::string> ids) const;
  AssumptionSet make_set(std::initializer_list<std::string_view> ids) const;
  std::vector<std::string> ids(const AssumptionSet& set) const;

  // Throws MalformedInput when the set belongs to a different universe.
  void validate(const AssumptionSet& set) const;

  bool operator==(const BipolarFramework& other) const {
    return assumptions_ == other.assumptions_ && facts_ == other.facts_ &&
           contraries_ == other.contraries_ && rules_ == other.rules_;
  }

 private:
  friend class FrameworkBuilder;

  std::vector<Sentence> assumptions_;
  std::vector<Sentence> facts_;
  std::vector<Sentence> contraries_;
  std::vector<Rule> rules_;
  std::unordered_map<std::string, std::size_t> assumption_by_id_;
  std::unordered_map<std::string, std::size_t> fact_by_id_;
  std::vector<std::vector<std::size_t>> support_out_;
  std::vector<std::vector<std::size_t>> attack_out_;
  std::vector<std::vector<std::size_t>> fact_attack_out_;
  AssumptionSet fact_attacked_;
};

// Collects sentences and edges, then validates them into a framework.
//
//   support(from, to)  adds rule  to <- from
//   attack(from, to)   adds rule  contrary(to) <- from
//
// Facts may only be rule bodies and their contraries are never derivable;
// build() throws MalformedInput if an edge targets a fact, if an id is
// unknown or duplicated, or on self-loops. Duplicate edges collapse.
class FrameworkBuilder {
 public:
  FrameworkBuilder& assumption(std::string id, std::string text = {});
  FrameworkBuilder& fact(std::string id, std::string text = {});
  FrameworkBuilder& support(std::string from, std::string to);
  FrameworkBuilder& attack(std::string from, std::string to);

  BipolarFramework build() const;

 private:
  struct PendingEdge {
    std::string from;
    std::string to;
    bool attack;
  };
  std::vector<Sentence> nodes_;
  std::vector<PendingEdge> edges_;
};

}  // namespace argverify::baba
