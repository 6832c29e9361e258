#pragma once

#include <cstddef>
#include <vector>

#include "argverify/baba/framework.hpp"
#include "argverify/baba/semantics.hpp"

namespace argverify::baba {

inline constexpr std::size_t kDefaultOracleBound = 16;

// Every subset of the assumptions that satisfies `sem`, found by scanning all
// 2^n subsets. Sorted with sort_extensions. Throws BoundExceeded when the
// framework has more than `bound` assumptions (bound itself is capped at 30).
//
// The subset scan is split across OpenMP threads when available; the result
// is identical to enumerate_bruteforce_serial.
std::vector<Extension> enumerate_bruteforce(const BipolarFramework& f, Semantics sem,
                                            std::size_t bound = kDefaultOracleBound);

// Single-threaded reference scan.
std::vector<Extension> enumerate_bruteforce_serial(const BipolarFramework& f, Semantics sem,
                                                   std::size_t bound = kDefaultOracleBound);

}  // namespace argverify::baba
