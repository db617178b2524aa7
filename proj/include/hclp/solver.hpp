#pragma once

// Consistency checking by recursive level-set search (PC-check), the greedy
// lexicographic C(1) procedure, and deduction via negation.

#include <algorithm>
#include <array>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hclp/conflict_store.hpp"
#include "hclp/core.hpp"

namespace hclp {

struct SearchConfig {
  /// Largest admissible level-set size.
  std::size_t t = 1;
  bool conflicts_enabled = false;
  /// Largest conflicting set kept in the store.
  std::size_t s = 5;
  /// Cooperative deadline, checked per search node and every few thousand
  /// candidates.
  std::optional<std::chrono::milliseconds> timeout;
};

enum class Verdict { Consistent, Inconsistent, Timeout };

constexpr const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
    case Verdict::Timeout: return "timeout";
  }
  return "?";
}

struct SolveStats {
  std::uint64_t nodes = 0;
  /// Level sets of size 2..t generated, including skipped ones.
  std::uint64_t candidates = 0;
  /// Candidates rejected because they contain a learned conflicting set.
  std::uint64_t candidates_skipped = 0;
  std::uint64_t singleton_calls = 0;
  std::uint64_t conflicts_learned = 0;
  std::uint64_t max_depth = 0;
  double wall_ms = 0.0;
  bool timed_out = false;

  bool same_counts(const SolveStats& o) const {
    return nodes == o.nodes && candidates == o.candidates &&
           candidates_skipped == o.candidates_skipped &&
           singleton_calls == o.singleton_calls &&
           conflicts_learned == o.conflicts_learned &&
           max_depth == o.max_depth && timed_out == o.timed_out;
  }
};

struct SolveResult {
  Verdict verdict = Verdict::Inconsistent;
  std::optional<HclpModel> witness;
  SolveStats stats;

  bool consistent() const { return verdict == Verdict::Consistent; }
};

/// Observation points into a running search, for tests and diagnostics.
struct SearchHooks {
  /// Called when a conflicting set is learned; prefix is the partial model
  /// the set was learned under (the candidate itself excluded).
  std::function<void(const std::vector<EvalSet>& prefix, EvalSet learned)>
      on_learn;
};

class SearchTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using StatementIds = std::vector<std::uint32_t>;

/// Per-statement evaluation columns, laid out for the inner loops.
template <Combiner Op>
class StatementTable {
 public:
  StatementTable(const EvaluationMatrix& e, const Statements& gamma,
                 const Op& op)
      : op_(op), n_(e.evaluations()), strict_(gamma.size()) {
    for (const auto& phi : gamma) validate_statement(phi, e.alternatives());
    if constexpr (AdditiveCombiner<Op>) {
      diff_.resize(gamma.size() * n_);
    } else {
      alpha_.resize(gamma.size() * n_);
      beta_.resize(gamma.size() * n_);
    }
    for (std::size_t k = 0; k < gamma.size(); ++k) {
      strict_[k] = gamma[k].strict;
      for (std::size_t i = 0; i < n_; ++i) {
        const Value a = e(i, gamma[k].alpha);
        const Value b = e(i, gamma[k].beta);
        if constexpr (AdditiveCombiner<Op>) {
          diff_[k * n_ + i] = a - b;
        } else {
          alpha_[k * n_ + i] = a;
          beta_[k * n_ + i] = b;
        }
      }
    }
  }

  std::size_t size() const { return strict_.size(); }
  bool strict(std::uint32_t k) const { return strict_[k] != 0; }

  Ordering3 compare(std::uint32_t k, EvalSet c) const {
    if constexpr (AdditiveCombiner<Op>) {
      const Value* d = diff_.data() + k * n_;
      Value sum = 0;
      for (std::size_t i : c) sum += d[i];
      return order_of(sum, 0);
    } else {
      const Value* a = alpha_.data() + k * n_;
      const Value* b = beta_.data() + k * n_;
      Value ca = op_.identity();
      Value cb = op_.identity();
      for (std::size_t i : c) {
        ca = op_(ca, a[i]);
        cb = op_(cb, b[i]);
      }
      return order_of(ca, cb);
    }
  }

  Ordering3 compare_single(std::uint32_t k, std::size_t i) const {
    if constexpr (AdditiveCombiner<Op>) {
      return order_of(diff_[k * n_ + i], 0);
    } else {
      return compare(k, EvalSet::singleton(i));
    }
  }

  StatementIds all_ids() const {
    StatementIds ids(size());
    for (std::size_t k = 0; k < ids.size(); ++k) {
      ids[k] = static_cast<std::uint32_t>(k);
    }
    return ids;
  }

  bool any_strict(const StatementIds& ids) const {
    return std::any_of(ids.begin(), ids.end(),
                       [&](std::uint32_t k) { return strict(k); });
  }

 private:
  Op op_;
  std::size_t n_;
  std::vector<char> strict_;
  std::vector<Value> diff_;
  std::vector<Value> alpha_;
  std::vector<Value> beta_;
};

/// Greedy non-extendable singleton sequence: repeated ascending passes over
/// `available`, appending every evaluation that opposes no tied statement.
/// Consumed evaluations leave `available`; strictly satisfied statements
/// leave `tied`.
template <Combiner Op>
std::vector<std::size_t> greedy_singletons(const StatementTable<Op>& table,
                                           EvalSet& available,
                                           StatementIds& tied) {
  std::vector<std::size_t> order;
  bool added = true;
  while (added) {
    added = false;
    for (std::size_t i : available) {
      const bool opposes =
          std::any_of(tied.begin(), tied.end(), [&](std::uint32_t k) {
            return table.compare_single(k, i) == Ordering3::Greater;
          });
      if (opposes) continue;
      order.push_back(i);
      available.erase(i);
      std::erase_if(tied, [&](std::uint32_t k) {
        return table.compare_single(k, i) == Ordering3::Less;
      });
      added = true;
    }
  }
  return order;
}

/// Enumerates level sets C of `available` with 2 <= |C| <= t, smaller sets
/// first, then lexicographically by sorted indices. Candidates containing a
/// stored conflicting set are counted and skipped; candidates opposing a tied
/// statement are dropped. visit(C, still_tied) returns true to stop.
/// poll() is consulted periodically and aborts the enumeration when true.
template <Combiner Op, class Visit, class Poll>
bool for_each_candidate(const StatementTable<Op>& table, EvalSet available,
                        const StatementIds& tied, std::size_t t,
                        const ConflictStore* store, SolveStats& stats,
                        Visit&& visit, Poll&& poll) {
  const std::vector<std::size_t> idx = available.indices();
  const std::size_t r = idx.size();
  const std::size_t kmax = std::min(t, r);
  std::array<std::size_t, kMaxEvaluations> pos{};
  StatementIds still;
  still.reserve(tied.size());

  for (std::size_t k = 2; k <= kmax; ++k) {
    for (std::size_t j = 0; j < k; ++j) pos[j] = j;
    while (true) {
      std::uint64_t bits = 0;
      for (std::size_t j = 0; j < k; ++j) bits |= std::uint64_t{1} << idx[pos[j]];
      const EvalSet c(bits);

      if ((++stats.candidates & 0xFFF) == 0 && poll()) return true;
      if (store != nullptr && store->blocks(c)) {
        ++stats.candidates_skipped;
      } else {
        still.clear();
        bool opposing = false;
        for (std::uint32_t s : tied) {
          const Ordering3 o = table.compare(s, c);
          if (o == Ordering3::Greater) {
            opposing = true;
            break;
          }
          if (o == Ordering3::Equal) still.push_back(s);
        }
        if (!opposing && visit(c, still)) return true;
      }

      // Advance to the next k-combination in lexicographic order.
      std::size_t j = k;
      while (j > 0 && pos[j - 1] == r - k + (j - 1)) --j;
      if (j == 0) break;
      ++pos[j - 1];
      for (std::size_t l = j; l < k; ++l) pos[l] = pos[l - 1] + 1;
    }
  }
  return false;
}

template <Combiner Op>
class PcSearch {
 public:
  PcSearch(const EvaluationMatrix& e, const Statements& gamma,
           const SearchConfig& cfg, const Op& op, const SearchHooks& hooks)
      : e_(e),
        gamma_(gamma),
        cfg_(cfg),
        op_(op),
        hooks_(hooks),
        table_(e, gamma, op),
        store_(cfg.s) {}

  SolveResult run() {
    const auto start = std::chrono::steady_clock::now();
    if (cfg_.timeout) deadline_ = start + *cfg_.timeout;

    SolveResult result;
    const bool found = search(e_.all(), table_.all_ids(), 0);
    if (stats_.timed_out) {
      result.verdict = Verdict::Timeout;
    } else if (found) {
      result.verdict = Verdict::Consistent;
      result.witness = HclpModel(path_);
    } else {
      result.verdict = Verdict::Inconsistent;
    }
    stats_.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    result.stats = stats_;
    return result;
  }

 private:
  bool expired() {
    if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) {
      stats_.timed_out = true;
    }
    return stats_.timed_out;
  }

  bool search(EvalSet available, StatementIds tied, std::size_t depth) {
    ++stats_.nodes;
    stats_.max_depth = std::max<std::uint64_t>(stats_.max_depth, depth);
    if (expired()) return false;

    const std::size_t entry = path_.size();
    ++stats_.singleton_calls;
    for (std::size_t i : greedy_singletons(table_, available, tied)) {
      path_.push_back(EvalSet::singleton(i));
    }
    if (!table_.any_strict(tied)) return true;

    const ConflictStore::Checkpoint mark = store_.checkpoint();
    const ConflictStore* store = cfg_.conflicts_enabled ? &store_ : nullptr;
    const std::size_t prefix = path_.size();
    bool found = false;

    for_each_candidate(
        table_, available, tied, cfg_.t, store, stats_,
        [&](EvalSet c, const StatementIds& still) {
          path_.push_back(c);
#ifndef NDEBUG
          assert(satisfies_all(HclpModel(path_), non_strict_version(gamma_),
                               e_, op_));
#endif
          if (!table_.any_strict(still) ||
              search(available - c, still, depth + 1)) {
            found = true;
            return true;
          }
          path_.resize(prefix);
          if (stats_.timed_out) return true;
          if (cfg_.conflicts_enabled && c.size() <= cfg_.s &&
              store_.insert(c)) {
            ++stats_.conflicts_learned;
            if (hooks_.on_learn) hooks_.on_learn(path_, c);
          }
          return false;
        },
        [&] { return expired(); });

    if (!found) {
      store_.rollback(mark);
      path_.resize(entry);
    }
    return found;
  }

  const EvaluationMatrix& e_;
  const Statements& gamma_;
  SearchConfig cfg_;
  Op op_;
  const SearchHooks& hooks_;
  StatementTable<Op> table_;
  ConflictStore store_;
  SolveStats stats_;
  std::vector<EvalSet> path_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace detail

/// Greedy maximal Gamma^(<=)-satisfying singleton sequence over `available`.
/// Statements are treated as non-strict.
template <Combiner Op = Addition>
std::vector<std::size_t> max_singleton_sequence(EvalSet available,
                                                const Statements& active,
                                                const EvaluationMatrix& e,
                                                const Op& op = {}) {
  detail::check_level(available, e);
  detail::StatementTable<Op> table(e, active, op);
  auto tied = table.all_ids();
  return detail::greedy_singletons(table, available, tied);
}

/// Decides C(1)-consistency: the greedy singleton model works iff anything
/// does.
template <Combiner Op = Addition>
SolveResult c1_solve(const EvaluationMatrix& e, const Statements& gamma,
                     const Op& op = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::StatementTable<Op> table(e, gamma, op);
  EvalSet available = e.all();
  auto tied = table.all_ids();
  SolveResult result;
  const auto order = detail::greedy_singletons(table, available, tied);
  result.stats.nodes = 1;
  result.stats.singleton_calls = 1;
  if (table.any_strict(tied)) {
    result.verdict = Verdict::Inconsistent;
  } else {
    result.verdict = Verdict::Consistent;
    result.witness = HclpModel::singletons(order);
  }
  result.stats.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return result;
}

/// Candidate level sets for extending a partial model whose tied statements
/// are `tied`, in search order. `store` may be null.
template <Combiner Op = Addition>
std::vector<EvalSet> candidate_level_sets(EvalSet available,
                                          const Statements& tied,
                                          const SearchConfig& cfg,
                                          const ConflictStore* store,
                                          const EvaluationMatrix& e,
                                          const Op& op = {}) {
  detail::check_level(available, e);
  detail::StatementTable<Op> table(e, tied, op);
  SolveStats stats;
  std::vector<EvalSet> out;
  detail::for_each_candidate(
      table, available, table.all_ids(), cfg.t,
      cfg.conflicts_enabled ? store : nullptr, stats,
      [&](EvalSet c, const detail::StatementIds&) {
        out.push_back(c);
        return false;
      },
      [] { return false; });
  return out;
}

inline void validate_config(const SearchConfig& cfg) {
  if (cfg.t == 0) throw InputError("level-size bound t must be at least 1");
  if (cfg.conflicts_enabled && cfg.s < 2) {
    throw InputError("conflict-size bound s must be at least 2");
  }
}

/// Recursive search for a Gamma-satisfying model in C(t). Conflict learning
/// is controlled by cfg.conflicts_enabled.
template <Combiner Op = Addition>
SolveResult pc_check(const EvaluationMatrix& e, const Statements& gamma,
                     const SearchConfig& cfg, const Op& op = {},
                     const SearchHooks& hooks = {}) {
  validate_config(cfg);
  return detail::PcSearch<Op>(e, gamma, cfg, op, hooks).run();
}

/// Swaps the pair and flips strictness.
inline PreferenceStatement negate(const PreferenceStatement& phi) {
  return {phi.beta, phi.alpha, !phi.strict};
}

/// True iff every Gamma-satisfying model in C(t) satisfies phi.
template <Combiner Op = Addition>
bool deduce(const EvaluationMatrix& e, const Statements& gamma,
            const PreferenceStatement& phi, const SearchConfig& cfg,
            const Op& op = {}) {
  if (std::find(gamma.begin(), gamma.end(), phi) != gamma.end()) {
    throw InputError("statement " + to_string(phi) +
                     " is already part of the statement set");
  }
  validate_statement(phi, e.alternatives());
  Statements extended = gamma;
  extended.push_back(negate(phi));
  const SolveResult r = pc_check(e, extended, cfg, op);
  if (r.verdict == Verdict::Timeout) {
    throw SearchTimeout("deduction search exceeded its deadline");
  }
  return r.verdict == Verdict::Inconsistent;
}

}  // namespace hclp
