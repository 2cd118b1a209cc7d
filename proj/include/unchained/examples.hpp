#pragma once

#include <string>
#include <vector>

#include "unchained/coalgebra.hpp"

namespace unchained::examples {

/// Binary-tree signature {leaf: 0, node: 2}.
Signature cherry();
/// Natural-number signature {z: 0, s: 1}.
Signature successor();
/// k constant symbols c1..ck.
Signature constants(int k);

/// Six-state recursive coalgebra over the cherry signature: leaves x,y,z and
/// inner states u -> (x,x), w -> (z,y), v -> (y,w).
struct HeightExample {
  Coalgebra coalg;
  Algebra algebra; // height: leaf -> 0, node(k,n) -> 1+max(k,n), saturated
};
HeightExample height_example();

/// Divide-and-conquer sorting on lists over {1..alphabet} of length <= max_len:
/// the divide coalgebra splits at the head pivot, the merge algebra
/// concatenates around it. List names are digit strings; the empty list is "e".
struct QuicksortExample {
  Signature sig;        // {nil: 0, piv1..pivA: 2}
  FinSet lists;
  Coalgebra divide;
  Algebra merge;
  int alphabet = 0;
  int max_len = 0;
};
QuicksortExample quicksort_example(int alphabet = 3, int max_len = 5,
                                   std::uint64_t cap = default_cap());

std::string list_name(const std::vector<int>& letters);
std::vector<int> list_letters(const std::string& name);

/// A well-founded relation on {a,b,c} as a powerset coalgebra:
/// c(x) = set of predecessors of x.
struct WfRelationExample {
  Coalgebra coalg;
  std::vector<std::pair<std::string, std::string>> relation; // (y, x) meaning y R x
};
WfRelationExample wf_relation_example();

} // namespace unchained::examples
