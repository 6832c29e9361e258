#include "argverify/baba/semantics.hpp"

#include <algorithm>

#include "argverify/error.hpp"

namespace argverify::baba {

std::string_view to_string(Semantics sem) noexcept {
  switch (sem) {
    case Semantics::admissible: return "admissible";
    case Semantics::preferred: return "preferred";
    case Semantics::complete: return "complete";
    case Semantics::stable: return "stable";
  }
  return "unknown";
}

Semantics parse_semantics(std::string_view name) {
  for (auto sem : kAllSemantics)
    if (to_string(sem) == name) return sem;
  throw MalformedInput("unknown semantics '" + std::string(name) + "'");
}

AssumptionSet closure(const BipolarFramework& f, const AssumptionSet& s) {
  f.validate(s);
  AssumptionSet out = s;
  std::vector<std::size_t> stack = s.indices();
  while (!stack.empty()) {
    const std::size_t a = stack.back();
    stack.pop_back();
    for (std::size_t b : f.supports_from(a)) {
      if (!out.contains(b)) {
        out.insert(b);
        stack.push_back(b);
      }
    }
  }
  return out;
}

bool is_closed(const BipolarFramework& f, const AssumptionSet& s) { return closure(f, s) == s; }

AssumptionSet attacked_by(const BipolarFramework& f, const AssumptionSet& s) {
  AssumptionSet out = f.empty_set();
  for (std::size_t a : closure(f, s).indices())
    for (std::size_t x : f.attacks_from(a)) out.insert(x);
  return out;
}

std::vector<std::string> derived_contraries(const BipolarFramework& f, const AssumptionSet& s) {
  std::vector<std::string> out;
  for (std::size_t x : attacked_by(f, s).indices()) out.push_back(f.contraries()[x].id);
  return out;
}

bool attacks(const BipolarFramework& f, const AssumptionSet& s, std::size_t x) {
  if (x >= f.assumption_count()) throw MalformedInput("assumption index out of range");
  return attacked_by(f, s).contains(x);
}

bool attacks(const BipolarFramework& f, const AssumptionSet& s, std::string_view x) {
  return attacks(f, s, f.require_assumption(x));
}

bool attacks_set(const BipolarFramework& f, const AssumptionSet& s, const AssumptionSet& target) {
  f.validate(target);
  return attacked_by(f, s).intersects(target);
}

bool fact_attacks_set(const BipolarFramework& f, const AssumptionSet& target) {
  f.validate(target);
  return f.fact_attacked().intersects(target);
}

bool is_conflict_free(const BipolarFramework& f, const AssumptionSet& s) {
  const AssumptionSet members = closure(f, s);
  return !attacked_by(f, s).intersects(members) && !f.fact_attacked().intersects(members);
}

namespace {

AssumptionSet singleton(const BipolarFramework& f, std::size_t i) {
  AssumptionSet s = f.empty_set();
  s.insert(i);
  return s;
}

}  // namespace

bool defends(const BipolarFramework& f, const AssumptionSet& s, std::size_t x) {
  f.validate(s);
  if (x >= f.assumption_count()) throw MalformedInput("assumption index out of range");
  if (f.fact_attacked().contains(x)) return false;
  const AssumptionSet by_s = attacked_by(f, s);
  for (std::size_t t = 0; t < f.assumption_count(); ++t) {
    const AssumptionSet attacker = singleton(f, t);
    if (!attacks(f, attacker, x)) continue;
    const AssumptionSet closed_attacker = closure(f, attacker);
    if (!by_s.intersects(closed_attacker) && !f.fact_attacked().intersects(closed_attacker))
      return false;
  }
  return true;
}

bool defends(const BipolarFramework& f, const AssumptionSet& s, std::string_view x) {
  return defends(f, s, f.require_assumption(x));
}

namespace {

bool admissible(const BipolarFramework& f, const AssumptionSet& s) {
  if (!is_closed(f, s) || !is_conflict_free(f, s)) return false;
  for (std::size_t x : s.indices())
    if (!defends(f, s, x)) return false;
  return true;
}

// x counts as defended when every member of closure({x}) is, since x cannot
// join a closed set without its closure.
bool complete(const BipolarFramework& f, const AssumptionSet& s) {
  if (!admissible(f, s)) return false;
  for (std::size_t x = 0; x < f.assumption_count(); ++x) {
    if (s.contains(x)) continue;
    const auto members = closure(f, singleton(f, x)).indices();
    if (std::all_of(members.begin(), members.end(), [&](std::size_t y) { return defends(f, s, y); }))
      return false;
  }
  return true;
}

bool stable(const BipolarFramework& f, const AssumptionSet& s) {
  if (!is_closed(f, s) || !is_conflict_free(f, s)) return false;
  const AssumptionSet by_s = attacked_by(f, s);
  for (std::size_t x = 0; x < f.assumption_count(); ++x) {
    if (s.contains(x)) continue;
    const AssumptionSet outsider = closure(f, singleton(f, x));
    if (!by_s.intersects(outsider) && !f.fact_attacked().intersects(outsider)) return false;
  }
  return true;
}

bool preferred(const BipolarFramework& f, const AssumptionSet& s, std::size_t bound) {
  if (!admissible(f, s)) return false;
  std::vector<std::size_t> outside;
  for (std::size_t x = 0; x < f.assumption_count(); ++x)
    if (!s.contains(x)) outside.push_back(x);
  if (outside.size() > bound)
    throw BoundExceeded("preferred check needs 2^" + std::to_string(outside.size()) +
                        " superset tests; bound is " + std::to_string(bound));
  const unsigned long limit = 1ul << outside.size();
  for (unsigned long mask = 1; mask < limit; ++mask) {
    AssumptionSet bigger = s;
    for (std::size_t j = 0; j < outside.size(); ++j)
      if (mask & (1ul << j)) bigger.insert(outside[j]);
    if (admissible(f, bigger)) return false;
  }
  return true;
}

}  // namespace

bool satisfies(const BipolarFramework& f, const AssumptionSet& s, Semantics sem,
               std::size_t superset_bound) {
  f.validate(s);
  switch (sem) {
    case Semantics::admissible: return admissible(f, s);
    case Semantics::complete: return complete(f, s);
    case Semantics::stable: return stable(f, s);
    case Semantics::preferred: return preferred(f, s, superset_bound);
  }
  return false;
}

bool extension_precedes(const AssumptionSet& a, const AssumptionSet& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  // Assumption indices follow id order, so comparing index lists compares ids.
  const auto ia = a.indices(), ib = b.indices();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

void sort_extensions(std::vector<AssumptionSet>& extensions) {
  std::sort(extensions.begin(), extensions.end(), extension_precedes);
}

}  // namespace argverify::baba
