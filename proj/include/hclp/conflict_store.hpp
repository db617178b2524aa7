#pragma once

#include <cstddef>
#include <vector>

#include "hclp/core.hpp"

namespace hclp {

/// Learned conflicting level sets. A stored set S blocks every candidate
/// C with S subset of C. The store is kept as an antichain: inserting a set
/// that is already blocked is a no-op, and inserting a set retires every
/// stored superset of it.
///
/// Insertions are journaled so a search can roll the store back to a
/// checkpoint when it retreats above the prefix a set was learned under.
class ConflictStore {
 public:
  using Checkpoint = std::size_t;

  explicit ConflictStore(std::size_t max_size = 5) : max_size_(max_size) {}

  std::size_t max_size() const { return max_size_; }

  /// True iff some stored set is a subset of c.
  bool blocks(EvalSet c) const {
    for (const Entry& e : entries_) {
      if (e.alive && e.set.subset_of(c)) return true;
    }
    return false;
  }

  /// Returns false when c is outside [2, s] or already implied.
  bool insert(EvalSet c) {
    if (c.size() < 2 || c.size() > max_size_ || blocks(c)) return false;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      Entry& e = entries_[k];
      if (e.alive && c.subset_of(e.set)) {
        e.alive = false;
        --live_;
        journal_.push_back({Op::Retire, k});
      }
    }
    entries_.push_back({c, true});
    ++live_;
    journal_.push_back({Op::Add, entries_.size() - 1});
    return true;
  }

  Checkpoint checkpoint() const { return journal_.size(); }

  void rollback(Checkpoint mark) {
    while (journal_.size() > mark) {
      const Record r = journal_.back();
      journal_.pop_back();
      if (r.op == Op::Add) {
        entries_.pop_back();
        --live_;
      } else {
        entries_[r.index].alive = true;
        ++live_;
      }
    }
  }

  std::size_t size() const { return live_; }
  bool empty() const { return live_ == 0; }

  /// Live sets in insertion order.
  std::vector<EvalSet> sets() const {
    std::vector<EvalSet> out;
    out.reserve(live_);
    for (const Entry& e : entries_) {
      if (e.alive) out.push_back(e.set);
    }
    return out;
  }

 private:
  enum class Op { Add, Retire };
  struct Entry {
    EvalSet set;
    bool alive;
  };
  struct Record {
    Op op;
    std::size_t index;
  };

  std::size_t max_size_;
  std::vector<Entry> entries_;
  std::vector<Record> journal_;
  std::size_t live_ = 0;
};

}  // namespace hclp
