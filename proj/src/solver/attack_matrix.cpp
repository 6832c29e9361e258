#include "argverify/solver/attack_matrix.hpp"

#include "argverify/baba/semantics.hpp"

namespace argverify::solver {

AttackMatrix::AttackMatrix(std::vector<baba::AssumptionSet> rows) : rows_(std::move(rows)) {
  const std::size_t n = rows_.size();
  columns_.assign(n, baba::AssumptionSet(n));
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t x : rows_[t].indices()) columns_[x].insert(t);
}

std::size_t AttackMatrix::entry_count() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

namespace {

baba::AssumptionSet row_for(const baba::BipolarFramework& f, std::size_t t) {
  baba::AssumptionSet single = f.empty_set();
  single.insert(t);
  return baba::attacked_by(f, single);
}

}  // namespace

AttackMatrix build_attack_matrix_serial(const baba::BipolarFramework& f) {
  std::vector<baba::AssumptionSet> rows;
  rows.reserve(f.assumption_count());
  for (std::size_t t = 0; t < f.assumption_count(); ++t) rows.push_back(row_for(f, t));
  return AttackMatrix(std::move(rows));
}

AttackMatrix build_attack_matrix(const baba::BipolarFramework& f) {
  const long n = static_cast<long>(f.assumption_count());
  std::vector<baba::AssumptionSet> rows(f.assumption_count());
#pragma omp parallel for schedule(dynamic, 16)
  for (long t = 0; t < n; ++t) rows[t] = row_for(f, static_cast<std::size_t>(t));
  return AttackMatrix(std::move(rows));
}

}  // namespace argverify::solver
