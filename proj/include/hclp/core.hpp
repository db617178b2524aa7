#pragma once

// HCLP structures, models and the combined lexicographic order relations.

#include <algorithm>
#include <bit>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hclp {

using Value = std::int64_t;
using Alternative = std::size_t;

/// Evaluation sets are 64-bit masks, which bounds the number of evaluations.
inline constexpr std::size_t kMaxEvaluations = 64;

/// Malformed or out-of-range input to a library operation.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation not available for the chosen combiner.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A set of evaluation indices in [0, 64).
class EvalSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = std::size_t;
    using difference_type = std::ptrdiff_t;
    using pointer = const std::size_t*;
    using reference = std::size_t;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}

    constexpr std::size_t operator*() const {
      return static_cast<std::size_t>(std::countr_zero(rest_));
    }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr EvalSet() = default;
  constexpr explicit EvalSet(std::uint64_t bits) : bits_(bits) {}
  EvalSet(std::initializer_list<std::size_t> indices) {
    for (std::size_t i : indices) insert(i);
  }

  /// {0, ..., n-1}
  static EvalSet first(std::size_t n) {
    check_index_bound(n, kMaxEvaluations + 1);
    return EvalSet(n == kMaxEvaluations ? ~std::uint64_t{0}
                                        : (std::uint64_t{1} << n) - 1);
  }
  static EvalSet singleton(std::size_t i) {
    EvalSet s;
    s.insert(i);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t i) const {
    return i < kMaxEvaluations && ((bits_ >> i) & 1U) != 0;
  }
  constexpr bool subset_of(EvalSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(EvalSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  /// Highest index plus one; 0 for the empty set.
  constexpr std::size_t extent() const {
    return kMaxEvaluations - static_cast<std::size_t>(std::countl_zero(bits_));
  }

  void insert(std::size_t i) {
    check_index_bound(i, kMaxEvaluations);
    bits_ |= std::uint64_t{1} << i;
  }
  void erase(std::size_t i) {
    if (i < kMaxEvaluations) bits_ &= ~(std::uint64_t{1} << i);
  }

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<std::size_t> indices() const { return {begin(), end()}; }

  friend constexpr EvalSet operator|(EvalSet a, EvalSet b) {
    return EvalSet(a.bits_ | b.bits_);
  }
  friend constexpr EvalSet operator&(EvalSet a, EvalSet b) {
    return EvalSet(a.bits_ & b.bits_);
  }
  /// Set difference.
  friend constexpr EvalSet operator-(EvalSet a, EvalSet b) {
    return EvalSet(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(EvalSet, EvalSet) = default;
  friend constexpr auto operator<=>(EvalSet, EvalSet) = default;

 private:
  static void check_index_bound(std::size_t i, std::size_t limit) {
    if (i >= limit) {
      throw InputError("evaluation index " + std::to_string(i) +
                       " exceeds the supported maximum of " +
                       std::to_string(kMaxEvaluations));
    }
  }

  std::uint64_t bits_ = 0;
};

/// n evaluation functions rating m alternatives; row i holds c_i.
class EvaluationMatrix {
 public:
  EvaluationMatrix() = default;

  EvaluationMatrix(std::size_t n, std::size_t m, std::vector<Value> row_major)
      : n_(n), m_(m), values_(std::move(row_major)) {
    if (n == 0 || m == 0) {
      throw InputError("evaluation matrix needs at least one row and column");
    }
    if (n > kMaxEvaluations) {
      throw InputError("at most " + std::to_string(kMaxEvaluations) +
                       " evaluations are supported, got " + std::to_string(n));
    }
    if (values_.size() != n * m) {
      throw InputError("evaluation matrix expects " + std::to_string(n * m) +
                       " values, got " + std::to_string(values_.size()));
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (values_[k] < 0) {
        throw InputError("negative value " + std::to_string(values_[k]) +
                         " at evaluation " + std::to_string(k / m) +
                         ", alternative " + std::to_string(k % m));
      }
    }
  }

  static EvaluationMatrix from_rows(
      const std::vector<std::vector<Value>>& rows) {
    if (rows.empty()) throw InputError("evaluation matrix has no rows");
    std::vector<Value> flat;
    const std::size_t m = rows.front().size();
    for (const auto& row : rows) {
      if (row.size() != m) throw InputError("ragged evaluation matrix");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return EvaluationMatrix(rows.size(), m, std::move(flat));
  }

  std::size_t evaluations() const { return n_; }
  std::size_t alternatives() const { return m_; }

  Value at(std::size_t evaluation, Alternative a) const {
    if (evaluation >= n_) {
      throw InputError("evaluation index " + std::to_string(evaluation) +
                       " out of range (n=" + std::to_string(n_) + ")");
    }
    if (a >= m_) {
      throw InputError("alternative index " + std::to_string(a) +
                       " out of range (m=" + std::to_string(m_) + ")");
    }
    return values_[evaluation * m_ + a];
  }

  /// Unchecked access for inner loops.
  Value operator()(std::size_t evaluation, Alternative a) const {
    return values_[evaluation * m_ + a];
  }

  EvalSet all() const { return EvalSet::first(n_); }

  bool operator==(const EvaluationMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<Value> values_;
};

/// Associative, commutative, strictly monotonic operation with identity.
template <class Op>
concept Combiner = std::default_initializable<Op> &&
                   requires(const Op& op, Value x, Value y) {
                     { op.identity() } -> std::convertible_to<Value>;
                     { op(x, y) } -> std::convertible_to<Value>;
                   };

/// Combiners that are plain integer addition; enables difference-based
/// shortcuts and the MILP encoding.
template <class Op>
concept AdditiveCombiner = Combiner<Op> && requires {
  requires Op::is_additive;
};

struct Addition {
  static constexpr bool is_additive = true;

  constexpr Value identity() const { return 0; }
  Value operator()(Value x, Value y) const {
    Value r = 0;
    if (__builtin_add_overflow(x, y, &r)) {
      throw std::overflow_error("combined evaluation value overflows int64");
    }
    return r;
  }
};

enum class Ordering3 { Less, Equal, Greater };

constexpr Ordering3 order_of(Value a, Value b) {
  return a < b ? Ordering3::Less : (b < a ? Ordering3::Greater : Ordering3::Equal);
}

constexpr const char* to_string(Ordering3 o) {
  switch (o) {
    case Ordering3::Less: return "Less";
    case Ordering3::Equal: return "Equal";
    case Ordering3::Greater: return "Greater";
  }
  return "?";
}

/// alpha < beta (strict) or alpha <= beta: alpha is preferred to beta.
struct PreferenceStatement {
  Alternative alpha = 0;
  Alternative beta = 0;
  bool strict = false;

  friend bool operator==(const PreferenceStatement&,
                         const PreferenceStatement&) = default;
  friend auto operator<=>(const PreferenceStatement&,
                          const PreferenceStatement&) = default;
};

using Statements = std::vector<PreferenceStatement>;

inline PreferenceStatement strictly_prefer(Alternative a, Alternative b) {
  return {a, b, true};
}
inline PreferenceStatement weakly_prefer(Alternative a, Alternative b) {
  return {a, b, false};
}

inline void validate_statement(const PreferenceStatement& phi,
                               std::size_t alternatives) {
  if (phi.alpha >= alternatives || phi.beta >= alternatives) {
    throw InputError("statement refers to alternative outside [0, " +
                     std::to_string(alternatives) + ")");
  }
  if (phi.alpha == phi.beta) {
    throw InputError("statement compares alternative " +
                     std::to_string(phi.alpha) + " with itself");
  }
}

/// Ordered sequence of disjoint level sets, most important first. Empty level
/// sets are dropped on construction.
class HclpModel {
 public:
  HclpModel() = default;
  HclpModel(std::vector<EvalSet> levels) : levels_(std::move(levels)) {
    std::erase_if(levels_, [](EvalSet c) { return c.empty(); });
  }
  HclpModel(std::initializer_list<EvalSet> levels)
      : HclpModel(std::vector<EvalSet>(levels)) {}

  /// Singleton levels in the given order.
  static HclpModel singletons(const std::vector<std::size_t>& order) {
    std::vector<EvalSet> levels;
    levels.reserve(order.size());
    for (std::size_t i : order) levels.push_back(EvalSet::singleton(i));
    return HclpModel(std::move(levels));
  }

  const std::vector<EvalSet>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  bool empty() const { return levels_.empty(); }

  /// sigma(H): union of all level sets.
  EvalSet support() const {
    EvalSet s;
    for (EvalSet c : levels_) s = s | c;
    return s;
  }

  friend bool operator==(const HclpModel&, const HclpModel&) = default;

 private:
  std::vector<EvalSet> levels_;
};

inline std::string to_string(EvalSet c) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : c) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

inline std::string to_string(const HclpModel& h) {
  std::string out = "(";
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (k) out += ", ";
    out += to_string(h.levels()[k]);
  }
  return out + ")";
}

inline std::string to_string(const PreferenceStatement& phi) {
  return std::to_string(phi.alpha) + (phi.strict ? " < " : " <= ") +
         std::to_string(phi.beta);
}

namespace detail {

inline void check_level(EvalSet c, const EvaluationMatrix& e) {
  if (c.extent() > e.evaluations()) {
    throw InputError("level set " + to_string(c) +
                     " refers to evaluations outside [0, " +
                     std::to_string(e.evaluations()) + ")");
  }
}

inline void check_alternative(Alternative a, const EvaluationMatrix& e) {
  if (a >= e.alternatives()) {
    throw InputError("alternative index " + std::to_string(a) +
                     " out of range (m=" + std::to_string(e.alternatives()) +
                     ")");
  }
}

}  // namespace detail

/// Combined rating of alternative a over the evaluations in c; the identity
/// for c = {}.
template <Combiner Op = Addition>
Value combine_level(EvalSet c, Alternative a, const EvaluationMatrix& e,
                    const Op& op = {}) {
  detail::check_level(c, e);
  detail::check_alternative(a, e);
  Value acc = op.identity();
  for (std::size_t i : c) acc = op(acc, e(i, a));
  return acc;
}

template <Combiner Op = Addition>
Ordering3 compare_on_set(EvalSet c, Alternative a, Alternative b,
                         const EvaluationMatrix& e, const Op& op = {}) {
  return order_of(combine_level(c, a, e, op), combine_level(c, b, e, op));
}

/// First level set that separates a and b decides; Equal if none does.
template <Combiner Op = Addition>
Ordering3 model_compare(const HclpModel& h, Alternative a, Alternative b,
                        const EvaluationMatrix& e, const Op& op = {}) {
  detail::check_alternative(a, e);
  detail::check_alternative(b, e);
  for (EvalSet c : h.levels()) {
    Ordering3 o = compare_on_set(c, a, b, e, op);
    if (o != Ordering3::Equal) return o;
  }
  return Ordering3::Equal;
}

template <Combiner Op = Addition>
bool satisfies(const HclpModel& h, const PreferenceStatement& phi,
               const EvaluationMatrix& e, const Op& op = {}) {
  Ordering3 o = model_compare(h, phi.alpha, phi.beta, e, op);
  return phi.strict ? o == Ordering3::Less : o != Ordering3::Greater;
}

template <Combiner Op = Addition>
bool satisfies_all(const HclpModel& h, const Statements& gamma,
                   const EvaluationMatrix& e, const Op& op = {}) {
  return std::all_of(gamma.begin(), gamma.end(), [&](const auto& phi) {
    return satisfies(h, phi, e, op);
  });
}

/// Statements on which h is indifferent, i.e. not yet strictly satisfied.
template <Combiner Op = Addition>
Statements tied_statements(const HclpModel& h, const Statements& gamma,
                           const EvaluationMatrix& e, const Op& op = {}) {
  Statements out;
  for (const auto& phi : gamma) {
    if (model_compare(h, phi.alpha, phi.beta, e, op) == Ordering3::Equal) {
      out.push_back(phi);
    }
  }
  return out;
}

inline Statements non_strict_version(Statements gamma) {
  for (auto& phi : gamma) phi.strict = false;
  return gamma;
}

/// H o H': the levels of H followed by those of H' with sigma(H) removed.
inline HclpModel compose(const HclpModel& h, const HclpModel& tail) {
  const EvalSet used = h.support();
  std::vector<EvalSet> levels = h.levels();
  for (EvalSet c : tail.levels()) levels.push_back(c - used);
  return HclpModel(std::move(levels));
}

/// Lists every reason h is not a model in C(t) over n evaluations; empty
/// when valid.
inline std::vector<std::string> validate_model(const HclpModel& h,
                                               std::size_t t, std::size_t n) {
  std::vector<std::string> violations;
  EvalSet seen;
  for (std::size_t k = 0; k < h.size(); ++k) {
    EvalSet c = h.levels()[k];
    if (c.size() > t) {
      violations.push_back("level " + std::to_string(k) + " has size " +
                           std::to_string(c.size()) + " > t=" +
                           std::to_string(t));
    }
    if (c.extent() > n) {
      violations.push_back("level " + std::to_string(k) +
                           " uses evaluations outside [0, " +
                           std::to_string(n) + ")");
    }
    if (c.intersects(seen)) {
      violations.push_back("level " + std::to_string(k) +
                           " overlaps earlier levels on " +
                           to_string(c & seen));
    }
    seen = seen | c;
  }
  return violations;
}

}  // namespace hclp
