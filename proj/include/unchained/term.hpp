#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "unchained/error.hpp"
#include "unchained/functor.hpp"

namespace unchained {

/// Identifier of a hash-consed term inside a TermPool.
using TermId = int;

/// Pool of maximally shared finite terms over a signature. Node children and
/// powerset members are TermIds into the same pool; structurally equal terms
/// get the same id, so term equality is id equality.
class TermPool {
public:
  explicit TermPool(Signature sig) : sig_(std::move(sig)) {}

  const Signature& sig() const { return sig_; }

  /// Interns op(children); children of a powerset node are sorted and
  /// deduplicated. Pass FElem::kSubset as op for powerset nodes.
  TermId intern(int op, std::vector<TermId> children);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int op_of(TermId t) const { return nodes_[static_cast<std::size_t>(t)].op; }
  const std::vector<TermId>& children_of(TermId t) const {
    return nodes_[static_cast<std::size_t>(t)].children;
  }

  /// 0 for constants and the empty set, else 1 + max over children.
  int depth(TermId t) const { return nodes_[static_cast<std::size_t>(t)].depth; }

  /// Number of distinct subterms (nodes of the maximally shared DAG).
  int dag_size(TermId t) const;

  std::string to_string(TermId t) const;

private:
  struct Node {
    int op;
    std::vector<TermId> children;
    int depth;
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<int, std::vector<TermId>>& k) const {
      std::size_t h = std::hash<int>()(k.first);
      for (TermId c : k.second) h = h * 1000003u + static_cast<std::size_t>(c) + 0x9e3779b9u;
      return h;
    }
  };
  Signature sig_;
  std::vector<Node> nodes_;
  std::unordered_map<std::pair<int, std::vector<TermId>>, TermId, KeyHash> intern_;
};

/// All terms of depth < max_depth, grouped by depth bound: result[d] holds
/// exactly the terms of depth <= d-1 ... i.e. result[d] = terms of depth < d,
/// for d = 0..max_depth. Throws SizeCapError when a level exceeds cap.
std::vector<std::vector<TermId>> enumerate_terms_by_depth(TermPool& pool, int max_depth,
                                                          std::uint64_t cap = default_cap());

} // namespace unchained
