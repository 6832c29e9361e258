#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "argverify/baba/framework.hpp"

namespace argverify::baba {

enum class Semantics { admissible, preferred, complete, stable };

inline constexpr Semantics kAllSemantics[] = {Semantics::admissible, Semantics::preferred,
                                              Semantics::complete, Semantics::stable};

std::string_view to_string(Semantics sem) noexcept;
// Throws MalformedInput on an unknown name.
Semantics parse_semantics(std::string_view name);

// Reference semantics. These are direct transcriptions of the definitions,
// written for clarity rather than speed, and serve as the oracle the SAT
// encoding is checked against. Every function validates that the sets
// belong to `f` and throws MalformedInput otherwise.
//
// Facts are always in force and cannot be attacked: a set whose closure
// contains a fact-attacked assumption is not conflict-free, and an attack
// from a fact counts towards defence and stability the same way an attack
// from the set itself does. Fact-bodied support rules do not propagate.

// Smallest superset of `s` closed under assumption-bodied support rules.
AssumptionSet closure(const BipolarFramework& f, const AssumptionSet& s);

bool is_closed(const BipolarFramework& f, const AssumptionSet& s);

// Assumptions whose contrary is derived from closure(s).
AssumptionSet attacked_by(const BipolarFramework& f, const AssumptionSet& s);

// Contrary ids derived from closure(s), sorted.
std::vector<std::string> derived_contraries(const BipolarFramework& f, const AssumptionSet& s);

// True iff contrary(x) is derived from closure(s). Throws on unknown x.
bool attacks(const BipolarFramework& f, const AssumptionSet& s, std::string_view x);
bool attacks(const BipolarFramework& f, const AssumptionSet& s, std::size_t x);

// True iff `s` attacks some member of `target`.
bool attacks_set(const BipolarFramework& f, const AssumptionSet& s, const AssumptionSet& target);

// True iff some fact attacks a member of `target`.
bool fact_attacks_set(const BipolarFramework& f, const AssumptionSet& target);

bool is_conflict_free(const BipolarFramework& f, const AssumptionSet& s);

// `s` defends x iff x is not attacked by a fact, and for every assumption t
// with {t} attacking x, closure({t}) is attacked by `s` or by a fact. The
// closed attackers of x are exactly the closed supersets of such closure({t}),
// so singleton attackers suffice.
bool defends(const BipolarFramework& f, const AssumptionSet& s, std::string_view x);
bool defends(const BipolarFramework& f, const AssumptionSet& s, std::size_t x);

// Complete requires x in s whenever s defends every member of closure({x}).
// Preferred checks every strict superset of `s`; it throws BoundExceeded when
// more than `superset_bound` assumptions lie outside `s`.
bool satisfies(const BipolarFramework& f, const AssumptionSet& s, Semantics sem,
               std::size_t superset_bound = 16);

// Size descending, then lexicographic over sorted member ids.
bool extension_precedes(const AssumptionSet& a, const AssumptionSet& b);
void sort_extensions(std::vector<AssumptionSet>& extensions);

}  // namespace argverify::baba
