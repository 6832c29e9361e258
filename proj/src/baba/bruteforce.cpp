#include "argverify/baba/bruteforce.hpp"

#include <algorithm>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "argverify/error.hpp"

namespace argverify::baba {

namespace {

constexpr std::size_t kHardBound = 30;

unsigned long subset_count(const BipolarFramework& f, std::size_t bound) {
  const std::size_t n = f.assumption_count();
  const std::size_t limit = std::min(bound, kHardBound);
  if (n > limit)
    throw BoundExceeded("brute-force enumeration refused: " + std::to_string(n) +
                        " assumptions exceeds bound " + std::to_string(limit));
  return 1ul << n;
}

// Preferred is derived from the admissible sets: after sorting by size
// descending, a set is maximal iff no already accepted maximal set contains it.
std::vector<Extension> keep_maximal(std::vector<Extension> admissible_sets) {
  sort_extensions(admissible_sets);
  std::vector<Extension> maximal;
  for (auto& s : admissible_sets) {
    const bool dominated = std::any_of(maximal.begin(), maximal.end(),
                                       [&](const Extension& m) { return s.is_proper_subset_of(m); });
    if (!dominated) maximal.push_back(std::move(s));
  }
  return maximal;
}

Semantics scan_semantics(Semantics sem) {
  return sem == Semantics::preferred ? Semantics::admissible : sem;
}

std::vector<Extension> finish(std::vector<Extension> found, Semantics sem) {
  if (sem == Semantics::preferred) return keep_maximal(std::move(found));
  sort_extensions(found);
  return found;
}

}  // namespace

std::vector<Extension> enumerate_bruteforce_serial(const BipolarFramework& f, Semantics sem,
                                                   std::size_t bound) {
  const unsigned long limit = subset_count(f, bound);
  const Semantics scan = scan_semantics(sem);
  std::vector<Extension> found;
  for (unsigned long mask = 0; mask < limit; ++mask) {
    AssumptionSet s(f.assumption_count(), mask);
    if (satisfies(f, s, scan)) found.push_back(std::move(s));
  }
  return finish(std::move(found), sem);
}

std::vector<Extension> enumerate_bruteforce(const BipolarFramework& f, Semantics sem,
                                            std::size_t bound) {
  const unsigned long limit = subset_count(f, bound);
  const Semantics scan = scan_semantics(sem);
  const long total = static_cast<long>(limit);
  std::vector<Extension> found;

#pragma omp parallel
  {
    std::vector<Extension> local;
#pragma omp for schedule(static) nowait
    for (long mask = 0; mask < total; ++mask) {
      AssumptionSet s(f.assumption_count(), static_cast<unsigned long>(mask));
      if (satisfies(f, s, scan)) local.push_back(std::move(s));
    }
#pragma omp critical(argverify_bruteforce_merge)
    found.insert(found.end(), std::make_move_iterator(local.begin()),
                 std::make_move_iterator(local.end()));
  }
  return finish(std::move(found), sem);
}

}  // namespace argverify::baba
