#pragma once

#include <cstddef>
#include <vector>

#include "argverify/baba/framework.hpp"

namespace argverify::solver {

// n x n relation over assumptions: entry (t, x) holds iff the singleton {t}
// attacks x, i.e. contrary(x) is derived from closure({t}). Row t equals
// the derived contraries of {t} mapped back through the contrary map.
class AttackMatrix {
 public:
  AttackMatrix() = default;
  explicit AttackMatrix(std::vector<baba::AssumptionSet> rows);

  std::size_t size() const noexcept { return rows_.size(); }
  bool operator()(std::size_t t, std::size_t x) const { return rows_[t].contains(x); }
  const baba::AssumptionSet& row(std::size_t t) const { return rows_[t]; }
  // Every t with (t, x) set.
  const baba::AssumptionSet& attackers_of(std::size_t x) const { return columns_[x]; }
  std::size_t entry_count() const;

  friend bool operator==(const AttackMatrix& a, const AttackMatrix& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<baba::AssumptionSet> rows_;
  std::vector<baba::AssumptionSet> columns_;
};

// Rows are independent closures and are computed in parallel under OpenMP.
AttackMatrix build_attack_matrix(const baba::BipolarFramework& f);

// Single-threaded reference.
AttackMatrix build_attack_matrix_serial(const baba::BipolarFramework& f);

}  // namespace argverify::solver
