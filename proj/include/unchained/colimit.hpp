#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unchained/error.hpp"
#include "unchained/finset.hpp"
#include "unchained/functor.hpp"

namespace unchained {

/// A finite diagram of finite sets over a directed multigraph. Node ids must
/// not contain ':' (reserved for coproduct tagging).
struct Diagram {
  std::map<std::string, FinSet> nodes;
  struct Edge {
    std::string id, src, dst;
    FinFn fn;
  };
  std::vector<Edge> edges;

  void validate() const;
  const FinSet& node(const std::string& id) const;
};

/// Colimit of a diagram: apex, one injection per node, and the quotient
/// partition of the disjoint union of all node sets.
struct ColimitData {
  FinSet apex;
  std::map<std::string, FinFn> injections;
  FinSet coproduct;              // named "<node>:<elem>", canonical order
  SetPartition partition;        // over the coproduct
};

ColimitData colimit(const Diagram& d, std::uint64_t cap = default_cap());

/// A cocone over a diagram: one leg per node into a common apex set.
struct Cocone {
  FinSet apex;
  std::map<std::string, FinFn> legs;
};

/// The canonical cocone of a computed colimit.
Cocone colimit_cocone(const ColimitData& c);

/// The unique mediating map v with v o injection_i = leg_i for all i.
/// Throws NotACoconeError when the legs fail an edge equation.
FinFn mediate(const Diagram& d, const ColimitData& c, const Cocone& k);

/// Report for the two-condition characterization of colimits in sets:
/// (1) joint surjectivity, (2) merged pairs are merged by some composite of
/// edge functions within the diagram.
struct FilteredColimitReport {
  bool joint_surjective = false;
  bool condition2 = false;
  struct Witness {
    std::string node;
    std::string x1, x2;
    std::vector<std::string> path; // edge ids; empty when x1 == x2 trivially
    std::string target_node;
  };
  std::vector<Witness> witnesses;
  struct Failure {
    std::string node;
    std::string x1, x2;
  };
  std::vector<Failure> failures;
  bool ok() const { return joint_surjective && condition2; }
};

FilteredColimitReport verify_filtered_characterization(const Diagram& d, const ColimitData& c);

/// Factorization of f: X -> apex through a colimit injection: the first node
/// (in id order) whose injection covers the image of f, with the
/// lexicographically least witness. Throws NoFactorizationError.
std::pair<std::string, FinFn> factor_through(const Diagram& d, const ColimitData& c,
                                             const FinFn& f);

/// Given two factorizations f1, f2: X -> D(i) with c_i o f1 = c_i o f2,
/// searches (breadth-first over edge paths, bounded by path_cap, default the
/// number of edges) for a composite Dh with Dh o f1 = Dh o f2.
/// Returns the target node and the composite. Throws NoMergeError.
std::pair<std::string, FinFn> merge_factorizations(const Diagram& d, const std::string& i,
                                                   const FinFn& f1, const FinFn& f2,
                                                   int path_cap = -1);

/// True iff applying the functor to the diagram and to the colimit cocone
/// again yields a colimit, decided by computing the image colimit and testing
/// the canonical comparison map for bijectivity.
bool preserves_colimit_check(const Signature& f, const Diagram& d, const ColimitData& c,
                             std::uint64_t cap = default_cap());

struct SliceOptions {
  /// Keep only the first max_objects objects (canonical order) when positive.
  int max_objects = 0;
  std::uint64_t cap = default_cap();
};

/// The canonical diagram of all maps p: P -> x from ordinals |P| <= bound,
/// with all commuting triangles as edges, plus its canonical cocone (legs p).
std::pair<Diagram, Cocone> canonical_slice_diagram(const FinSet& x, int bound,
                                                   const SliceOptions& opts = {});

} // namespace unchained
