#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "unchained/error.hpp"
#include "unchained/finset.hpp"
#include "unchained/functor.hpp"
#include "unchained/term.hpp"

namespace unchained {

/// A coalgebra (C, c): carrier plus one FElem over the carrier per state.
struct Coalgebra {
  Signature sig;
  FinSet carrier;
  std::vector<FElem> structure;
};

/// Validates arities and argument ranges.
Coalgebra make_coalgebra(Signature sig, FinSet carrier, std::vector<FElem> structure);

/// The structure map as a function C -> F C into the encoded apply_obj apex.
FinFn coalgebra_structure_fn(const Coalgebra& c, const FObj& fobj);

/// An algebra (A, a): structure tabulated over the materialized F A.
struct Algebra {
  Signature sig;
  FinSet carrier;
  FObj fcarrier;
  std::vector<int> structure; // indexed by fcarrier.carrier() order

  int eval(const FElem& e) const {
    return structure[static_cast<std::size_t>(fcarrier.encode(e))];
  }
  FinFn structure_fn() const { return FinFn(fcarrier.carrier(), carrier, structure); }
};

Algebra make_algebra(Signature sig, FinSet carrier, std::vector<int> structure_table,
                     std::uint64_t cap = default_cap());

/// Builds an algebra by evaluating a callback on every decoded FElem.
Algebra make_algebra_by(Signature sig, FinSet carrier,
                        const std::function<int(const FElem&)>& eval,
                        std::uint64_t cap = default_cap());

/// Successor graph: x -> every carrier element occurring in structure(x).
std::vector<std::vector<int>> successor_graph(const Coalgebra& c);

/// Recursiveness certificate: a topological order (dependencies first) when
/// the successor graph is acyclic, a concrete cycle otherwise.
struct RecResult {
  bool recursive = false;
  std::vector<int> topo;  // dependencies before dependents
  std::vector<int> cycle; // v0 -> v1 -> ... -> v0 (first edge-closed cycle found)
};

RecResult is_recursive(const Coalgebra& c);

std::vector<std::string> cycle_names(const Coalgebra& c, const RecResult& r);

// ---- morphism checks ------------------------------------------------------

bool is_coalgebra_morphism(const FinFn& h, const Coalgebra& src, const Coalgebra& dst);
bool is_algebra_morphism(const FinFn& h, const Algebra& src, const Algebra& dst);
bool is_coalg_to_alg_morphism(const FinFn& s, const Coalgebra& c, const Algebra& a);

/// First state where the morphism square fails, or nullopt when it commutes.
std::optional<std::string> coalgebra_morphism_failure(const FinFn& h, const Coalgebra& src,
                                                      const Coalgebra& dst);

// ---- hylomorphism and the brute-force uniqueness oracle -------------------

/// The unique h = a o Fh o c for a recursive coalgebra, by memoized
/// evaluation along the topological order. Throws NotRecursiveError.
FinFn hylo(const Coalgebra& c, const Algebra& a);

/// All solutions of the coalgebra-to-algebra equation, by exhaustive
/// enumeration of |A|^|C| functions (cap-guarded). Ordered lexicographically.
std::vector<FinFn> brute_force_solutions(const Coalgebra& c, const Algebra& a,
                                         std::uint64_t cap = default_cap());

// ---- structural combinators ------------------------------------------------

/// (F C, F c): carrier apply_obj(F, C), structure the image of c under F.
Coalgebra iterate(const Coalgebra& c, std::uint64_t cap = default_cap());

struct SandwichReport {
  bool r_recursive = false;
  bool b_recursive = false;
};

/// Verifies h: (R,r) -> (B,b) and g: (B,b) -> (FR,Fr) are coalgebra
/// morphisms with b = Fh o g; when (R,r) is recursive, asserts (B,b) is too.
/// Throws HypothesisError naming the violated equation.
SandwichReport sandwich_transfer(const Coalgebra& r, const Coalgebra& b, const FinFn& h,
                                 const FinFn& g, std::uint64_t cap = default_cap());

// ---- colimits of coalgebras -------------------------------------------------

struct CoalgebraDiagram {
  std::vector<Coalgebra> objects;
  struct Edge {
    int src = 0, dst = 0;
    FinFn fn;
  };
  std::vector<Edge> edges;
};

struct CoalgColimit {
  Coalgebra coalg;                     // apex coalgebra (A, alpha)
  std::vector<FinFn> injections;       // one per diagram object, coalgebra morphisms
  std::vector<int> offsets;            // raw coproduct offset per object
  Partition partition;                 // over raw coproduct indices, normalized
  std::vector<int> raw_to_apex;        // raw index -> apex carrier index
  std::vector<std::pair<int, int>> apex_to_raw; // apex index -> (object, local) witness
};

/// Carrier colimit with the unique induced structure making every injection a
/// coalgebra morphism. Edge functions are checked to be coalgebra morphisms.
CoalgColimit colim_coalgebras(const CoalgebraDiagram& d, std::uint64_t cap = default_cap(),
                              bool check_edges = true);

/// Shared assembly step: apex, injections and induced structure from an
/// already-computed partition of the raw coproduct (offsets per object).
CoalgColimit assemble_coalg_colimit(const std::vector<Coalgebra>& objects, Partition partition,
                                    std::uint64_t cap);

// ---- Lambek-style iso extraction -------------------------------------------

/// Verifies (i) h is a coalgebra morphism (FC,Fc) -> (C,c) and (ii) identity
/// is the only coalgebra endomorphism of (C,c) (exhaustive, cap-guarded);
/// then checks h o c = id and c o h = id and returns h as the inverse.
FinFn lambek_check(const Coalgebra& c, const FinFn& h, std::uint64_t cap = default_cap());

struct InitialityTester {
  Coalgebra coalg;
  Algebra algebra; // the inverse structure

  /// hylo into b, verified to be the unique algebra morphism by brute force.
  FinFn run(const Algebra& b, std::uint64_t cap = default_cap()) const;
};

/// For a recursive coalgebra with bijective structure, the inverse as an
/// algebra plus an initiality tester. Throws NotBijectiveError / NotRecursiveError.
InitialityTester initial_from_iso(const Coalgebra& c, std::uint64_t cap = default_cap());

/// Renames the carrier to the canonical ordinal {0..n-1}; returns the
/// renamed coalgebra with the section e and retraction m (e o m = id).
struct CanonicalSplit {
  Coalgebra canonical;
  FinFn e; // ordinal -> original carrier
  FinFn m; // original carrier -> ordinal
};
CanonicalSplit split_to_canonical(const Coalgebra& c);

// ---- unfolding oracle -------------------------------------------------------

/// Unfolds every state of a recursive coalgebra into the term pool
/// (memoized along the topological order). Throws NotRecursiveError.
std::vector<TermId> unfold_all(TermPool& pool, const Coalgebra& c);

TermId unfold(TermPool& pool, const Coalgebra& c, std::string_view state);

// ---- morphism enumeration kernels ------------------------------------------

/// Preimage buckets of a destination coalgebra's structure map, keyed by raw
/// FElem index over its carrier; shared across searches with many sources.
class MorphismSearchIndex {
public:
  MorphismSearchIndex() = default;
  explicit MorphismSearchIndex(const Coalgebra& dst);
  const std::vector<int>& bucket(std::uint64_t raw) const;
  const Coalgebra& dst() const { return *dst_; }

  /// Raw code of an FElem over the destination carrier.
  std::uint64_t raw_of(const FElem& e) const;
  /// Raw code of the image of e under a table into the destination carrier.
  std::uint64_t raw_of_mapped(const FElem& e, const std::vector<int>& table) const;

private:
  const Coalgebra* dst_ = nullptr;
  int n_ = 0;
  std::uint64_t raw_size_ = 0;
  std::vector<std::vector<int>> buckets_;
  std::vector<std::uint64_t> op_offset_;
  std::vector<int> empty_;
};

/// Enumerates all coalgebra morphisms src -> dst, calling cb with the value
/// table. Constraint-guided search along the topological order when src is
/// recursive; exhaustive filter otherwise (cap-guarded). `allowed` optionally
/// restricts candidate targets per source state. Deterministic order.
void for_each_coalgebra_morphism(const Coalgebra& src, const RecResult& src_rec,
                                 const MorphismSearchIndex& dst_index,
                                 const std::function<void(const std::vector<int>&)>& cb,
                                 const std::vector<std::vector<int>>* allowed = nullptr,
                                 std::uint64_t naive_cap = default_cap());

/// All morphisms, sorted lexicographically by value table.
std::vector<FinFn> coalgebra_morphisms(const Coalgebra& src, const Coalgebra& dst,
                                       const std::vector<std::vector<int>>* allowed = nullptr,
                                       std::uint64_t cap = default_cap());

/// Serial reference: filters all |dst|^|src| functions. Kept for testing the
/// guided search. Sorted lexicographically.
std::vector<FinFn> coalgebra_morphisms_naive(const Coalgebra& src, const Coalgebra& dst,
                                             std::uint64_t cap = default_cap());

} // namespace unchained
