#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <vector>

#include "argverify/sat/backend.hpp"

namespace argverify::sat {

namespace {

using CRef = std::uint32_t;
constexpr CRef kNoReason = static_cast<CRef>(-1);

enum : std::int8_t { kFalse = 0, kTrue = 1, kUndef = 2 };

struct Clause {
  std::vector<Lit> lits;
  bool learnt = false;
  double activity = 0.0;
};

struct Watcher {
  CRef cref;
  Lit blocker;
};

// Finite subsequences of the Luby restart sequence: 1 1 2 1 1 2 4 ...
double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

// Max-heap of variables keyed by activity.
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& activity) : activity_(activity) {}

  bool empty() const { return heap_.empty(); }
  bool contains(Var v) const { return v < static_cast<Var>(pos_.size()) && pos_[v] >= 0; }

  void grow(Var v) {
    if (v >= static_cast<Var>(pos_.size())) pos_.resize(v + 1, -1);
  }

  void insert(Var v) {
    grow(v);
    if (contains(v)) return;
    pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    up(pos_[v]);
  }

  void increased(Var v) {
    if (contains(v)) up(pos_[v]);
  }

  Var pop() {
    Var top = heap_.front();
    heap_.front() = heap_.back();
    pos_[heap_.front()] = 0;
    pos_[top] = -1;
    heap_.pop_back();
    if (!heap_.empty()) down(0);
    return top;
  }

 private:
  bool better(Var a, Var b) const { return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b); }

  void up(int i) {
    Var v = heap_[i];
    while (i > 0) {
      int parent = (i - 1) >> 1;
      if (!better(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  void down(int i) {
    Var v = heap_[i];
    const int n = static_cast<int>(heap_.size());
    for (;;) {
      int child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && better(heap_[child + 1], heap_[child])) ++child;
      if (!better(heap_[child], v)) break;
      heap_[i] = heap_[child];
      pos_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  const std::vector<double>& activity_;
  std::vector<Var> heap_;
  std::vector<int> pos_;
};

class CdclSolver final : public Backend {
 public:
  explicit CdclSolver(std::uint64_t seed) : rng_(seed), order_(activity_) {}

  Var new_var() override {
    const Var v = static_cast<Var>(assigns_.size());
    assigns_.push_back(kUndef);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    polarity_.push_back(true);  // branch negative first
    seen_.push_back(0);
    std::uniform_real_distribution<double> jitter(0.0, 1e-5);
    activity_.push_back(jitter(rng_));
    watches_.emplace_back();
    watches_.emplace_back();
    order_.insert(v);
    return v;
  }

  Var var_count() const override { return static_cast<Var>(assigns_.size()); }

  bool add_clause(std::span<const Lit> input) override {
    if (!ok_) return false;
    cancel_until(0);
    std::vector<Lit> lits(input.begin(), input.end());
    assert(std::all_of(lits.begin(), lits.end(), [&](Lit l) { return l.var() >= 0 && l.var() < var_count(); }));
    std::sort(lits.begin(), lits.end());
    std::vector<Lit> kept;
    Lit prev;
    for (Lit l : lits) {
      if (value(l) == kTrue || (kept.size() && l == ~prev)) return true;  // satisfied or tautology
      if (value(l) == kFalse || (kept.size() && l == prev)) continue;
      kept.push_back(l);
      prev = l;
    }
    if (kept.empty()) return ok_ = false;
    if (kept.size() == 1) {
      enqueue(kept[0], kNoReason);
      return ok_ = (propagate() == kNoReason);
    }
    attach(store(std::move(kept), false));
    return true;
  }

  Status solve(std::span<const Lit> assumptions,
               std::optional<Clock::time_point> deadline) override {
    model_.clear();
    if (!ok_) return Status::unsatisfiable;
    assumptions_.assign(assumptions.begin(), assumptions.end());
    deadline_ = deadline;
    Status status = Status::timeout;
    for (int restart = 0;; ++restart) {
      const auto budget = static_cast<std::uint64_t>(luby(2.0, restart) * 100);
      auto result = search(budget);
      if (result) {
        status = *result;
        break;
      }
      if (timed_out()) break;
    }
    if (status == Status::satisfiable) {
      model_.resize(assigns_.size());
      for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == kTrue;
    }
    cancel_until(0);
    return status;
  }

  bool model_value(Var v) const override { return model_.at(v); }

  std::uint64_t conflicts() const override { return conflicts_; }

 private:
  std::int8_t value(Lit l) const {
    const std::int8_t a = assigns_[l.var()];
    if (a == kUndef) return kUndef;
    return static_cast<std::int8_t>(a ^ static_cast<std::int8_t>(l.negated()));
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  CRef store(std::vector<Lit> lits, bool learnt) {
    clauses_.push_back(Clause{std::move(lits), learnt, 0.0});
    if (learnt) ++learnt_count_;
    return static_cast<CRef>(clauses_.size() - 1);
  }

  void attach(CRef cr) {
    const auto& c = clauses_[cr].lits;
    watches_[(~c[0]).code()].push_back({cr, c[1]});
    watches_[(~c[1]).code()].push_back({cr, c[0]});
  }

  void enqueue(Lit l, CRef from) {
    assigns_[l.var()] = static_cast<std::int8_t>(!l.negated());
    level_[l.var()] = decision_level();
    reason_[l.var()] = from;
    trail_.push_back(l);
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[lvl]);) {
      const Var v = trail_[i].var();
      polarity_[v] = trail_[i].negated();
      assigns_[v] = kUndef;
      reason_[v] = kNoReason;
      order_.insert(v);
    }
    trail_.resize(trail_lim_[lvl]);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
  }

  // Returns the conflicting clause or kNoReason.
  CRef propagate() {
    while (qhead_ < trail_.size()) {
      const Lit p = trail_[qhead_++];
      auto& ws = watches_[p.code()];
      std::size_t i = 0, j = 0;
      const Lit false_lit = ~p;
      while (i < ws.size()) {
        const Watcher w = ws[i];
        if (value(w.blocker) == kTrue) {
          ws[j++] = ws[i++];
          continue;
        }
        auto& c = clauses_[w.cref].lits;
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        ++i;
        const Lit first = c[0];
        if (first != w.blocker && value(first) == kTrue) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != kFalse) {
            std::swap(c[1], c[k]);
            watches_[(~c[1]).code()].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.cref, first};
        if (value(first) == kFalse) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return w.cref;
        }
        enqueue(first, w.cref);
      }
      ws.resize(j);
    }
    return kNoReason;
  }

  void bump_var(Var v) {
    if ((activity_[v] += var_inc_) > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    order_.increased(v);
  }

  void bump_clause(Clause& c) {
    if ((c.activity += cla_inc_) > 1e20) {
      for (auto& cl : clauses_)
        if (cl.learnt) cl.activity *= 1e-20;
      cla_inc_ *= 1e-20;
    }
  }

  // First-UIP learning with removal of literals implied by the rest.
  void analyze(CRef confl, std::vector<Lit>& learnt, int& bt_level) {
    learnt.assign(1, Lit());
    int path = 0;
    Lit p;
    bool have_p = false;
    std::size_t index = trail_.size();
    do {
      Clause& c = clauses_[confl];
      if (c.learnt) bump_clause(c);
      for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
        const Lit q = c.lits[k];
        const Var v = q.var();
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          bump_var(v);
          if (level_[v] >= decision_level())
            ++path;
          else
            learnt.push_back(q);
        }
      }
      while (!seen_[trail_[--index].var()]) {
      }
      p = trail_[index];
      confl = reason_[p.var()];
      seen_[p.var()] = 0;
      have_p = true;
      --path;
      // Reason clauses keep their implied literal first.
      if (path > 0) assert(clauses_[confl].lits[0] == p);
    } while (path > 0);
    learnt[0] = ~p;

    to_clear_.assign(learnt.begin(), learnt.end());
    std::size_t keep = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
      const CRef r = reason_[learnt[k].var()];
      bool redundant = r != kNoReason;
      if (redundant) {
        for (Lit q : clauses_[r].lits) {
          if (q.var() == learnt[k].var()) continue;
          if (!seen_[q.var()] && level_[q.var()] > 0) {
            redundant = false;
            break;
          }
        }
      }
      if (!redundant) learnt[keep++] = learnt[k];
    }
    learnt.resize(keep);

    bt_level = 0;
    if (learnt.size() > 1) {
      std::size_t max_i = 1;
      for (std::size_t k = 2; k < learnt.size(); ++k)
        if (level_[learnt[k].var()] > level_[learnt[max_i].var()]) max_i = k;
      std::swap(learnt[1], learnt[max_i]);
      bt_level = level_[learnt[1].var()];
    }
    for (Lit l : to_clear_) seen_[l.var()] = 0;
  }

  bool timed_out() const { return deadline_ && Clock::now() >= *deadline_; }

  // Drops the less active half of the learnt clauses. Runs at the root only,
  // where no clause is a live reason, so the database can be compacted.
  void reduce_db() {
    assert(decision_level() == 0);
    std::vector<double> acts;
    for (const auto& c : clauses_)
      if (c.learnt && c.lits.size() > 2) acts.push_back(c.activity);
    if (acts.empty()) return;
    std::nth_element(acts.begin(), acts.begin() + acts.size() / 2, acts.end());
    const double median = acts[acts.size() / 2];
    std::vector<Clause> kept;
    kept.reserve(clauses_.size());
    learnt_count_ = 0;
    for (auto& c : clauses_) {
      if (c.learnt && c.lits.size() > 2 && c.activity < median) continue;
      if (c.learnt) ++learnt_count_;
      kept.push_back(std::move(c));
    }
    clauses_ = std::move(kept);
    for (auto& w : watches_) w.clear();
    for (Lit l : trail_) reason_[l.var()] = kNoReason;
    for (CRef cr = 0; cr < clauses_.size(); ++cr) attach(cr);
  }

  std::optional<Status> search(std::uint64_t budget) {
    std::uint64_t local_conflicts = 0;
    std::vector<Lit> learnt;
    for (;;) {
      const CRef confl = propagate();
      if (confl != kNoReason) {
        ++conflicts_;
        ++local_conflicts;
        if (decision_level() == 0) {
          ok_ = false;
          return Status::unsatisfiable;
        }
        int bt_level = 0;
        analyze(confl, learnt, bt_level);
        cancel_until(bt_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          const CRef cr = store(learnt, true);
          attach(cr);
          bump_clause(clauses_[cr]);
          enqueue(learnt[0], cr);
        }
        var_inc_ /= 0.95;
        cla_inc_ /= 0.999;
        if ((conflicts_ & 127) == 0 && timed_out()) return Status::timeout;
        continue;
      }

      if (local_conflicts >= budget) {
        cancel_until(0);
        if (learnt_count_ > max_learnts_) {
          reduce_db();
          max_learnts_ = max_learnts_ * 11 / 10;
        }
        return std::nullopt;
      }
      if ((++decisions_ & 255) == 0 && timed_out()) return Status::timeout;

      Lit next;
      bool have_next = false;
      while (decision_level() < static_cast<int>(assumptions_.size())) {
        const Lit a = assumptions_[decision_level()];
        if (value(a) == kTrue) {
          trail_lim_.push_back(static_cast<int>(trail_.size()));
        } else if (value(a) == kFalse) {
          return Status::unsatisfiable;
        } else {
          next = a;
          have_next = true;
          break;
        }
      }
      if (!have_next) {
        while (!order_.empty()) {
          const Var v = order_.pop();
          if (assigns_[v] == kUndef) {
            next = polarity_[v] ? Lit::neg(v) : Lit::pos(v);
            have_next = true;
            break;
          }
        }
        if (!have_next) return Status::satisfiable;
      }
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(next, kNoReason);
    }
  }

  std::mt19937_64 rng_;
  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<char> polarity_;
  std::vector<char> seen_;
  std::vector<double> activity_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<Lit> assumptions_;
  std::vector<Lit> to_clear_;
  std::vector<bool> model_;
  std::optional<Clock::time_point> deadline_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::uint64_t conflicts_ = 0;
  std::uint64_t decisions_ = 0;
  std::size_t learnt_count_ = 0;
  std::size_t max_learnts_ = 4000;
  VarHeap order_;
};

}  // namespace

std::unique_ptr<Backend> make_cdcl_backend(std::uint64_t seed) {
  return std::make_unique<CdclSolver>(seed);
}

}  // namespace argverify::sat
