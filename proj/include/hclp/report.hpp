#pragma once

// Algorithm dispatch, consistency classes and run reports shared by the CLI
// and the benchmark driver.

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hclp/instance.hpp"
#include "hclp/oracle.hpp"
#include "hclp/solver.hpp"

namespace hclp {

enum class Algorithm { C1, Pc, PcConflicts, Oracle };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::C1: return "c1";
    case Algorithm::Pc: return "pc";
    case Algorithm::PcConflicts: return "pc-conflicts";
    case Algorithm::Oracle: return "oracle";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "c1") return Algorithm::C1;
  if (s == "pc") return Algorithm::Pc;
  if (s == "pc-conflicts") return Algorithm::PcConflicts;
  if (s == "oracle") return Algorithm::Oracle;
  throw InputError("unknown algorithm '" + s +
                   "' (expected c1, pc, pc-conflicts or oracle)");
}

struct RunOptions {
  std::size_t t = 0;  // 0 selects t = n
  std::size_t s = 5;
  std::optional<std::chrono::milliseconds> timeout;
};

inline std::size_t effective_t(const RunOptions& o, std::size_t n) {
  return o.t == 0 ? n : o.t;
}

inline SolveResult run_algorithm(Algorithm algo, const Instance& inst,
                                 const RunOptions& opts) {
  const std::size_t t = effective_t(opts, inst.evaluations());
  switch (algo) {
    case Algorithm::C1:
      return c1_solve(inst.matrix, inst.statements);
    case Algorithm::Pc:
    case Algorithm::PcConflicts: {
      SearchConfig cfg;
      cfg.t = t;
      cfg.s = opts.s;
      cfg.conflicts_enabled = algo == Algorithm::PcConflicts;
      cfg.timeout = opts.timeout;
      return pc_check(inst.matrix, inst.statements, cfg);
    }
    case Algorithm::Oracle:
      return brute_force_solve(inst.matrix, inst.statements, t);
  }
  throw InputError("unknown algorithm");
}

/// Three-way split: C(1)-consistent, consistent only with larger levels,
/// inconsistent for every t.
enum class ConsistencyClass { C1, Ct, Inconsistent, NotC1, Unknown };

inline const char* to_string(ConsistencyClass c) {
  switch (c) {
    case ConsistencyClass::C1: return "c1";
    case ConsistencyClass::Ct: return "ct";
    case ConsistencyClass::Inconsistent: return "inconsistent";
    case ConsistencyClass::NotC1: return "not-c1";
    case ConsistencyClass::Unknown: return "unknown";
  }
  return "?";
}

/// Combines the greedy C(1) verdict with the verdict of `algo`.
inline ConsistencyClass classify(bool c1_consistent, Algorithm algo,
                                 Verdict verdict) {
  if (c1_consistent) return ConsistencyClass::C1;
  if (algo == Algorithm::C1) return ConsistencyClass::NotC1;
  switch (verdict) {
    case Verdict::Consistent: return ConsistencyClass::Ct;
    case Verdict::Inconsistent: return ConsistencyClass::Inconsistent;
    case Verdict::Timeout: return ConsistencyClass::Unknown;
  }
  return ConsistencyClass::Unknown;
}

/// "[1 2] [0]", or with names "[s] [f] [c]".
inline std::string format_model(const HclpModel& h,
                                const std::vector<std::string>& names = {}) {
  std::string out;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (k) out += ' ';
    out += '[';
    bool first = true;
    for (std::size_t i : h.levels()[k]) {
      if (!first) out += ' ';
      out += i < names.size() ? names[i] : std::to_string(i);
      first = false;
    }
    out += ']';
  }
  return out;
}

struct RunReport {
  std::string instance_id;
  Algorithm algorithm = Algorithm::Pc;
  std::size_t t = 0;
  std::size_t s = 0;
  Verdict verdict = Verdict::Inconsistent;
  std::optional<HclpModel> witness;
  SolveStats stats;
};

inline RunReport make_report(const Instance& inst, Algorithm algo,
                             const RunOptions& opts, const SolveResult& r) {
  RunReport rep;
  rep.instance_id = inst.meta.name.value_or("instance");
  rep.algorithm = algo;
  rep.t = effective_t(opts, inst.evaluations());
  rep.s = opts.s;
  rep.verdict = r.verdict;
  rep.witness = r.witness;
  rep.stats = r.stats;
  return rep;
}

/// One JSON document. Wall time is omitted when include_time is false so
/// reports of identical runs compare byte for byte.
inline nlohmann::ordered_json to_json(const RunReport& r,
                                      const std::vector<std::string>& names = {},
                                      bool include_time = true) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance_id;
  j["algorithm"] = to_string(r.algorithm);
  j["t"] = r.t;
  j["s"] = r.s;
  j["verdict"] = to_string(r.verdict);
  if (r.witness) {
    j["witness"] = format_model(*r.witness, names);
    auto levels = nlohmann::ordered_json::array();
    for (EvalSet c : r.witness->levels()) levels.push_back(c.indices());
    j["witness_levels"] = levels;
  }
  nlohmann::ordered_json st;
  st["nodes"] = r.stats.nodes;
  st["candidates"] = r.stats.candidates;
  st["candidates_skipped"] = r.stats.candidates_skipped;
  st["singleton_calls"] = r.stats.singleton_calls;
  st["conflicts_learned"] = r.stats.conflicts_learned;
  st["max_depth"] = r.stats.max_depth;
  st["timed_out"] = r.stats.timed_out;
  j["stats"] = st;
  if (include_time) j["time_ms"] = r.stats.wall_ms;
  return j;
}

}  // namespace hclp
