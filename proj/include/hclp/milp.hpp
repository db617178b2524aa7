#pragma once

// Feasibility MILP for C(t) consistency with additive combination, and an
// exact checker for assignments derived from models.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hclp/core.hpp"

namespace hclp::milp {

/// Tight range of a statement's per-level difference sum(c(alpha)-c(beta)).
struct Bounds {
  Value lo = 0;
  Value hi = 0;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

enum class VarKind { Binary, Integer };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Binary;
  Value lower = 0;
  Value upper = 1;

  friend bool operator==(const Variable&, const Variable&) = default;
};

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Term {
  Value coef = 0;
  std::size_t var = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  Value rhs = 0;
  /// Constraint family 1..9 of the formulation; 0 when unknown (e.g. read
  /// back from text).
  int family = 0;
  /// Statement index for families 2..9.
  std::optional<std::size_t> statement;
};

class MilpFormulation {
 public:
  std::size_t add_variable(Variable v) {
    auto [it, inserted] = index_.emplace(v.name, variables_.size());
    if (!inserted) throw InputError("duplicate variable " + v.name);
    variables_.push_back(std::move(v));
    return it->second;
  }

  void add_constraint(Constraint c) {
    std::erase_if(c.terms, [](const Term& t) { return t.coef == 0; });
    constraints_.push_back(std::move(c));
  }

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t at(const std::string& name) const {
    auto idx = find(name);
    if (!idx) throw InputError("unknown variable " + name);
    return *idx;
  }

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Same variables and constraints (names, coefficients, senses, constants);
/// provenance tags are ignored.
inline bool structurally_equal(const MilpFormulation& a,
                               const MilpFormulation& b) {
  if (a.variables() != b.variables()) return false;
  if (a.constraints().size() != b.constraints().size()) return false;
  for (std::size_t k = 0; k < a.constraints().size(); ++k) {
    const Constraint& x = a.constraints()[k];
    const Constraint& y = b.constraints()[k];
    if (x.name != y.name || x.terms != y.terms || x.sense != y.sense ||
        x.rhs != y.rhs) {
      return false;
    }
  }
  return true;
}

inline std::string y_name(std::size_t evaluation, std::size_t level) {
  return "y_" + std::to_string(evaluation) + "_" + std::to_string(level);
}
inline std::string x_name(std::size_t level, std::size_t phi) {
  return "x_" + std::to_string(level) + "_" + std::to_string(phi);
}
inline std::string slt_name(std::size_t level, std::size_t phi) {
  return "slt_" + std::to_string(level) + "_" + std::to_string(phi);
}
inline std::string sgt_name(std::size_t level, std::size_t phi) {
  return "sgt_" + std::to_string(level) + "_" + std::to_string(phi);
}
inline std::string seq_name(std::size_t level, std::size_t phi) {
  return "seq_" + std::to_string(level) + "_" + std::to_string(phi);
}

namespace detail {

template <Combiner Op>
void require_additive() {
  if constexpr (!AdditiveCombiner<Op>) {
    throw UnsupportedOperation(
        "the MILP encoding requires an additive combiner");
  }
}

}  // namespace detail

/// lo sums the negative per-evaluation differences, hi the positive ones.
template <Combiner Op = Addition>
Bounds compute_bounds(const EvaluationMatrix& e,
                      const PreferenceStatement& phi, const Op& = {}) {
  detail::require_additive<Op>();
  validate_statement(phi, e.alternatives());
  Bounds b;
  for (std::size_t i = 0; i < e.evaluations(); ++i) {
    const Value d = e(i, phi.alpha) - e(i, phi.beta);
    if (d < 0) b.lo += d;
    if (d > 0) b.hi += d;
  }
  return b;
}

/// Variables: y (n*n), then x, slt, sgt, seq per (level, statement).
/// Constraints: families (1)..(9) in that order; see constraint_count().
template <Combiner Op = Addition>
MilpFormulation build_formulation(const EvaluationMatrix& e,
                                  const Statements& gamma, std::size_t t,
                                  const Op& op = {}) {
  detail::require_additive<Op>();
  if (t == 0) throw InputError("level-size bound t must be at least 1");
  const std::size_t n = e.evaluations();
  const std::size_t g = gamma.size();

  std::vector<Bounds> bounds;
  for (const auto& phi : gamma) bounds.push_back(compute_bounds(e, phi, op));

  MilpFormulation f;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      f.add_variable({y_name(i, j), VarKind::Binary, 0, 1});
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t p = 0; p < g; ++p) {
      f.add_variable({x_name(j, p), VarKind::Integer, bounds[p].lo,
                      bounds[p].hi});
    }
  }
  for (auto* name : {&slt_name, &sgt_name, &seq_name}) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t p = 0; p < g; ++p) {
        f.add_variable({(*name)(j, p), VarKind::Binary, 0, 1});
      }
    }
  }

  std::size_t next = 0;
  auto add = [&](std::vector<Term> terms, Sense sense, Value rhs, int family,
                 std::optional<std::size_t> phi) {
    f.add_constraint({"c" + std::to_string(next++), std::move(terms), sense,
                      rhs, family, phi});
  };
  auto var = [&](const std::string& name) { return f.at(name); };

  // (1) each evaluation in at most one level; each level holds at most t.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> row;
    std::vector<Term> col;
    for (std::size_t j = 0; j < n; ++j) {
      row.push_back({1, var(y_name(i, j))});
      col.push_back({1, var(y_name(j, i))});
    }
    add(std::move(row), Sense::LessEqual, 1, 1, std::nullopt);
    add(std::move(col), Sense::LessEqual, static_cast<Value>(t), 1,
        std::nullopt);
  }

  for (std::size_t p = 0; p < g; ++p) {
    const auto& phi = gamma[p];
    const Value lo = bounds[p].lo;
    const Value hi = bounds[p].hi;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t x = var(x_name(j, p));
      const std::size_t lt = var(slt_name(j, p));
      const std::size_t gt = var(sgt_name(j, p));
      const std::size_t eq = var(seq_name(j, p));

      // (2) x = sum_i y_ij (c_i(alpha) - c_i(beta))
      std::vector<Term> sum;
      for (std::size_t i = 0; i < n; ++i) {
        sum.push_back({e(i, phi.alpha) - e(i, phi.beta), var(y_name(i, j))});
      }
      sum.push_back({-1, x});
      add(std::move(sum), Sense::Equal, 0, 2, p);
      // (3) exactly one sign
      add({{1, lt}, {1, gt}, {1, eq}}, Sense::Equal, 1, 3, p);
      // (4) slt = 1 => x <= -1
      add({{1, x}, {hi + 1, lt}}, Sense::LessEqual, hi, 4, p);
      // (5) sgt = 1 => x >= 1
      add({{1, x}, {lo - 1, gt}}, Sense::GreaterEqual, lo, 5, p);
      // (6), (7) seq = 1 => x = 0
      add({{1, x}, {lo, eq}}, Sense::GreaterEqual, lo, 6, p);
      add({{1, x}, {hi, eq}}, Sense::LessEqual, hi, 7, p);
    }
  }

  // (8) an opposing level needs a supporting level before it.
  for (std::size_t p = 0; p < g; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Term> terms;
      for (std::size_t j = 0; j < i; ++j) {
        terms.push_back({1, var(slt_name(j, p))});
      }
      terms.push_back({-1, var(sgt_name(i, p))});
      add(std::move(terms), Sense::GreaterEqual, 0, 8, p);
    }
  }

  // (9) strict statements need a supporting level.
  for (std::size_t p = 0; p < g; ++p) {
    if (!gamma[p].strict) continue;
    std::vector<Term> terms;
    for (std::size_t j = 0; j < n; ++j) terms.push_back({1, var(slt_name(j, p))});
    add(std::move(terms), Sense::GreaterEqual, 1, 9, p);
  }
  return f;
}

inline std::size_t variable_count(std::size_t n, std::size_t g) {
  return n * n + 4 * n * g;
}

inline std::size_t constraint_count(std::size_t n, std::size_t g,
                                    std::size_t strict) {
  return 2 * n + 7 * n * g + strict;
}

using Assignment = std::map<std::string, Value>;

/// Level j of h goes to position j; positions past the last level stay
/// empty.
template <Combiner Op = Addition>
Assignment assignment_from_model(const HclpModel& h,
                                 const EvaluationMatrix& e,
                                 const Statements& gamma, std::size_t t,
                                 const Op& = {}) {
  detail::require_additive<Op>();
  const std::size_t n = e.evaluations();
  if (auto v = validate_model(h, t, n); !v.empty()) {
    throw InputError("invalid model: " + v.front());
  }
  Assignment a;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[y_name(i, j)] = (j < h.size() && h.levels()[j].contains(i)) ? 1 : 0;
    }
  }
  for (std::size_t p = 0; p < gamma.size(); ++p) {
    const auto& phi = gamma[p];
    validate_statement(phi, e.alternatives());
    for (std::size_t j = 0; j < n; ++j) {
      Value x = 0;
      if (j < h.size()) {
        for (std::size_t i : h.levels()[j]) x += e(i, phi.alpha) - e(i, phi.beta);
      }
      a[x_name(j, p)] = x;
      a[slt_name(j, p)] = x < 0 ? 1 : 0;
      a[sgt_name(j, p)] = x > 0 ? 1 : 0;
      a[seq_name(j, p)] = x == 0 ? 1 : 0;
    }
  }
  return a;
}

/// Evaluates every bound and constraint exactly; returns one message per
/// violation, empty when the assignment is feasible.
inline std::vector<std::string> check_assignment(const MilpFormulation& f,
                                                 const Assignment& a) {
  std::vector<Value> values(f.variables().size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const Variable& v = f.variables()[k];
    auto it = a.find(v.name);
    if (it == a.end()) throw InputError("assignment misses variable " + v.name);
    values[k] = it->second;
  }

  std::vector<std::string> violations;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const Variable& v = f.variables()[k];
    if (values[k] < v.lower || values[k] > v.upper) {
      violations.push_back("bound " + v.name + " = " +
                           std::to_string(values[k]) + " outside [" +
                           std::to_string(v.lower) + ", " +
                           std::to_string(v.upper) + "]");
    }
  }
  for (const Constraint& c : f.constraints()) {
    Value lhs = 0;
    for (const Term& t : c.terms) lhs += t.coef * values[t.var];
    bool ok = false;
    switch (c.sense) {
      case Sense::LessEqual: ok = lhs <= c.rhs; break;
      case Sense::GreaterEqual: ok = lhs >= c.rhs; break;
      case Sense::Equal: ok = lhs == c.rhs; break;
    }
    if (!ok) {
      violations.push_back(c.name + " (family " + std::to_string(c.family) +
                           "): lhs " + std::to_string(lhs) + " vs rhs " +
                           std::to_string(c.rhs));
    }
  }
  return violations;
}

}  // namespace hclp::milp
