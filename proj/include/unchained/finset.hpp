#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "unchained/error.hpp"

namespace unchained {

/// Canonical total order on element names: shorter first, then lexicographic.
/// Decimal ordinal names "0","1",...,"10",... come out in numeric order.
inline bool shortlex_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// An immutable finite set of named elements in canonical (shortlex) order.
/// Cheap to copy; equality is structural (same names).
class FinSet {
public:
  FinSet() : data_(empty_data()) {}

  /// Builds a set from names; sorts canonically, rejects duplicates.
  static FinSet from_names(std::vector<std::string> names);

  /// The canonical ordinal {"0", ..., "n-1"}.
  static FinSet ordinal(int n);

  int size() const { return static_cast<int>(data_->names.size()); }
  bool empty() const { return data_->names.empty(); }

  const std::string& name(int i) const { return data_->names[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& names() const { return data_->names; }

  std::optional<int> find(std::string_view name) const {
    auto it = data_->index.find(name);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  /// Index of a name; throws InvalidValueError when absent.
  int index_of(std::string_view name) const;

  bool contains(std::string_view name) const { return find(name).has_value(); }

  bool operator==(const FinSet& o) const {
    return data_ == o.data_ || data_->names == o.data_->names;
  }
  bool operator!=(const FinSet& o) const { return !(*this == o); }

private:
  struct Data {
    std::vector<std::string> names;
    std::unordered_map<std::string_view, int> index;
  };
  static std::shared_ptr<const Data> empty_data();
  explicit FinSet(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// A total function between finite sets, tabulated on element indices.
class FinFn {
public:
  FinFn() = default;
  FinFn(FinSet dom, FinSet cod, std::vector<int> table);

  static FinFn identity(const FinSet& x);

  /// Builds from name pairs; every dom element must be mapped exactly once.
  static FinFn from_pairs(const FinSet& dom, const FinSet& cod,
                          const std::vector<std::pair<std::string, std::string>>& pairs);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  int operator()(int i) const { return table_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& table() const { return table_; }

  /// Image of a named element, by name.
  const std::string& apply_name(std::string_view name) const {
    return cod_.name(table_[static_cast<std::size_t>(dom_.index_of(name))]);
  }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }

  /// The two-sided inverse, present exactly when the function is bijective.
  std::optional<FinFn> try_inverse() const;

  bool operator==(const FinFn& o) const {
    return dom_ == o.dom_ && cod_ == o.cod_ && table_ == o.table_;
  }
  bool operator!=(const FinFn& o) const { return !(*this == o); }

private:
  FinSet dom_, cod_;
  std::vector<int> table_;
};

/// g after f. Throws DomainMismatchError unless cod(f) = dom(g).
FinFn compose(const FinFn& g, const FinFn& f);

/// Union-find partition of {0,...,n-1}. After normalize(), the representative
/// of every class is its least member and find is idempotent.
class Partition {
public:
  Partition() : Partition(0) {}
  explicit Partition(int n);

  int size() const { return static_cast<int>(parent_.size()); }
  int find(int a) const;
  /// Merges the classes of a and b; returns true when they were distinct.
  bool unite(int a, int b);
  /// Rewrites every parent pointer to the least member of its class.
  void normalize();
  bool normalized() const { return normalized_; }

  int class_count() const;
  /// Representatives (least members), ascending. Requires normalize().
  std::vector<int> representatives() const;

  bool same_class(int a, int b) const { return find(a) == find(b); }

private:
  mutable std::vector<int> parent_;
  bool normalized_ = false;
};

/// A partition of a named finite set; realizes quotients of FinSets.
struct SetPartition {
  FinSet base;
  Partition classes;

  const std::string& representative_name(std::string_view elem) const {
    return base.name(classes.find(base.index_of(elem)));
  }
};

/// Binary coproduct with tagged canonical names "L:<name>" / "R:<name>".
struct Coproduct {
  FinSet apex;
  FinFn inl;
  FinFn inr;
};

Coproduct coproduct(const FinSet& x, const FinSet& y);

/// The unique [f,g] with [f,g] o inl = f and [f,g] o inr = g.
/// Throws DomainMismatchError when f, g disagree on codomain or do not match
/// the coproduct's summands.
FinFn copair(const FinFn& f, const FinFn& g, const Coproduct& cop);

/// Quotient of x by the equivalence generated by the given pairs.
/// proj maps every element to its class representative (least in canonical
/// order); the codomain of proj is the set of representatives.
std::pair<SetPartition, FinFn> quotient(const FinSet& x,
                                        const std::vector<std::pair<std::string, std::string>>& pairs);

/// Projection onto representatives for an already-built partition.
FinFn partition_projection(const SetPartition& p);

} // namespace unchained
