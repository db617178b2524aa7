#pragma once

// Exhaustive enumeration of C(t) models; ground truth for small instances.

#include <chrono>
#include <string>
#include <vector>

#include "hclp/core.hpp"
#include "hclp/solver.hpp"

namespace hclp {

inline constexpr std::size_t kOracleMaxEvaluations = 10;

namespace detail {

/// k-combinations of `pool` in lexicographic order; visit returns true to
/// stop.
template <class Visit>
bool for_each_combination(const std::vector<std::size_t>& pool, std::size_t k,
                          Visit&& visit) {
  const std::size_t r = pool.size();
  if (k > r) return false;
  std::vector<std::size_t> pos(k);
  for (std::size_t j = 0; j < k; ++j) pos[j] = j;
  while (true) {
    EvalSet c;
    for (std::size_t j = 0; j < k; ++j) c.insert(pool[pos[j]]);
    if (visit(c)) return true;
    std::size_t j = k;
    while (j > 0 && pos[j - 1] == r - k + (j - 1)) --j;
    if (j == 0) return false;
    ++pos[j - 1];
    for (std::size_t l = j; l < k; ++l) pos[l] = pos[l - 1] + 1;
  }
}

template <class Visit>
bool for_each_ordered_partition(EvalSet rest, std::size_t t,
                                std::vector<EvalSet>& levels, Visit& visit) {
  if (rest.empty()) return visit(HclpModel(levels));
  const auto pool = rest.indices();
  const std::size_t bmax = std::min(t, pool.size());
  for (std::size_t b = 1; b <= bmax; ++b) {
    const bool stop = for_each_combination(pool, b, [&](EvalSet block) {
      levels.push_back(block);
      const bool s = for_each_ordered_partition(rest - block, t, levels, visit);
      levels.pop_back();
      return s;
    });
    if (stop) return true;
  }
  return false;
}

inline void check_oracle_size(EvalSet indices) {
  if (indices.size() > kOracleMaxEvaluations) {
    throw InputError("exhaustive enumeration is limited to " +
                     std::to_string(kOracleMaxEvaluations) +
                     " evaluations, got " + std::to_string(indices.size()));
  }
}

}  // namespace detail

/// Visits every model in C(t) over subsets of `indices` exactly once: subsets
/// by size then lexicographically, and within a subset its ordered partitions
/// with earlier blocks chosen smallest-first. visit returns true to stop;
/// the return value reports whether it did.
template <class Visit>
bool for_each_model(EvalSet indices, std::size_t t, Visit&& visit) {
  detail::check_oracle_size(indices);
  if (t == 0) throw InputError("level-size bound t must be at least 1");
  const auto pool = indices.indices();
  std::vector<EvalSet> levels;
  for (std::size_t k = 0; k <= pool.size(); ++k) {
    const bool stop = detail::for_each_combination(pool, k, [&](EvalSet s) {
      return detail::for_each_ordered_partition(s, t, levels, visit);
    });
    if (stop) return true;
  }
  return false;
}

inline std::vector<HclpModel> enumerate_models(EvalSet indices,
                                               std::size_t t) {
  std::vector<HclpModel> out;
  for_each_model(indices, t, [&](const HclpModel& h) {
    out.push_back(h);
    return false;
  });
  return out;
}

/// First Gamma-satisfying model in enumeration order over `available`
/// (default: all evaluations).
template <Combiner Op = Addition>
SolveResult brute_force_solve(const EvaluationMatrix& e,
                              const Statements& gamma, std::size_t t,
                              const Op& op = {},
                              std::optional<EvalSet> available = {}) {
  const auto start = std::chrono::steady_clock::now();
  const EvalSet pool = available.value_or(e.all());
  detail::check_level(pool, e);
  for (const auto& phi : gamma) validate_statement(phi, e.alternatives());

  SolveResult result;
  result.verdict = Verdict::Inconsistent;
  for_each_model(pool, t, [&](const HclpModel& h) {
    ++result.stats.nodes;
    if (satisfies_all(h, gamma, e, op)) {
      result.verdict = Verdict::Consistent;
      result.witness = h;
      return true;
    }
    return false;
  });
  result.stats.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return result;
}

}  // namespace hclp
