#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "unchained/coalgebra.hpp"
#include "unchained/construction.hpp"
#include "unchained/error.hpp"
#include "unchained/finset.hpp"

namespace unchained {

/// A commuting triangle (P, p, i, p'): p = F(pi_i) o p' with P an ordinal,
/// p: P -> F(A_n) and p': P -> F(X_i).
struct Triangle {
  FinSet p_obj;
  FinFn p;
  int object = -1;
  FinFn p_prime;
};

/// A triangle's induced coalgebra on P + X_i with its canonical morphism
/// inj = [p, alpha o pi_i] into (F A_n, F alpha).
struct EObject {
  Triangle triangle;
  Coproduct cop;    // P + X_i
  Coalgebra coalg;  // structure F(inr) o [p', x_i]
  FinFn inj;        // P + X_i -> F(A_n)
  bool s_object = false;
};

struct MakeTrianglesOptions {
  std::uint64_t cap = default_cap();
  /// Attempt the merge search for same-object triangle pairs and record outcomes.
  bool report_merges = false;
};

struct TriangleMerge {
  int object = -1;    // shared i of the two triangles
  int t1 = -1, t2 = -1;
  bool merged = false;
  int via_object = -1; // j with F(Df) equating the pair, when merged
};

struct MakeTrianglesResult {
  std::vector<Triangle> triangles;
  std::vector<TriangleMerge> merges;
};

/// All (i, p') with F(pi_i) o p' = p, by exhaustive per-element preimage
/// search. Throws NoTriangleError (naming a failing element of P) when none
/// exists for any diagram object.
MakeTrianglesResult make_triangles(const InitialTruncation& t, const FinSet& P, const FinFn& p,
                                   const MakeTrianglesOptions& opts = {});

/// Builds the coalgebra on P + X_i and its injection, asserting
/// recursiveness and the coalgebra-morphism property (bug sentinels).
EObject build_E_object(const InitialTruncation& t, const Triangle& tr,
                       std::uint64_t cap = default_cap());

struct EnumerateEOptions {
  std::uint64_t cap = default_cap();
  /// Insert the proof-required objects s_i = (X_i, alpha o pi_i, i, x_i).
  bool include_s_objects = true;
  /// Check that every diagram edge lifts to an E-morphism id_P + Df.
  bool verify_lifted = true;
};

/// The E-diagram over a sample of the slice: all triangles per slice object,
/// with hom-sets given by all coalgebra morphisms h with inj_t2 o h = inj_t1.
class EDiagram {
public:
  EDiagram(const InitialTruncation& t, std::vector<std::pair<FinSet, FinFn>> slice,
           const EnumerateEOptions& opts);
  EDiagram(const EDiagram&) = delete;
  EDiagram& operator=(const EDiagram&) = delete;
  EDiagram(EDiagram&&) = default;
  EDiagram& operator=(EDiagram&&) = default;

  int size() const { return static_cast<int>(objects_.size()); }
  const EObject& object(int i) const { return objects_[static_cast<std::size_t>(i)]; }
  const std::vector<EObject>& objects() const { return objects_; }
  const Coalgebra& fa_coalgebra() const { return fa_coalg_; }
  const FObj& fA() const { return fA_; }

  /// Streams hom(t1, t2) = all coalgebra morphisms compatible with inj.
  void for_each_hom(int t1, int t2, const std::function<void(const std::vector<int>&)>& cb) const;
  std::vector<FinFn> homs(int t1, int t2) const;

  // slice grouping: objects sharing (P, p)
  int group_count() const { return static_cast<int>(groups_.size()); }
  const std::vector<int>& group_members(int g) const { return groups_[static_cast<std::size_t>(g)]; }
  int group_of(int object) const { return object_group_[static_cast<std::size_t>(object)]; }
  /// (P, p) for a group.
  const std::pair<FinSet, FinFn>& group_key(int g) const { return group_keys_[static_cast<std::size_t>(g)]; }
  /// Groups that carry every triangle of their slice object (not s-inserted).
  bool group_complete(int g) const { return group_complete_[static_cast<std::size_t>(g)] != 0; }
  /// E-object index of s_i for a diagram object, -1 when absent.
  int s_object_of(int diagram_object) const {
    return s_object_of_[static_cast<std::size_t>(diagram_object)];
  }
  bool has_s_objects() const { return has_s_objects_; }

  /// Every diagram edge f: i -> j lifts to the E-morphism id_P + Df.
  bool lifted_morphisms_verified() const { return lifted_verified_; }
  int lifted_morphisms_checked() const { return lifted_checked_; }

  /// Data needed to rebuild the s-object for a diagram object on demand.
  const std::shared_ptr<const FinrecDiagram>& diagram() const { return diagram_; }
  const FinFn& alpha_pi(int diagram_object) const {
    return alpha_pi_[static_cast<std::size_t>(diagram_object)];
  }

private:
  friend struct EDiagramAccess;
  FObj fA_;
  Coalgebra fa_coalg_;
  std::shared_ptr<const FinrecDiagram> diagram_;
  std::vector<FinFn> alpha_pi_; // alpha o pi_i per diagram object
  std::vector<EObject> objects_;
  std::vector<RecResult> rec_;
  std::vector<MorphismSearchIndex> idx_;
  std::vector<std::vector<int>> groups_;
  std::vector<std::pair<FinSet, FinFn>> group_keys_;
  std::vector<char> group_complete_;
  std::vector<int> object_group_;
  std::vector<int> s_object_of_;
  bool has_s_objects_ = false;
  bool lifted_verified_ = false;
  int lifted_checked_ = 0;
};

EDiagram enumerate_E(const InitialTruncation& t, std::vector<std::pair<FinSet, FinFn>> slice,
                     const EnumerateEOptions& opts = {});

/// All (ordinal(k), p: k -> F A_n) with k <= slice_bound.
std::vector<std::pair<FinSet, FinFn>> full_slice(const InitialTruncation& t, int slice_bound,
                                                 std::uint64_t cap = default_cap());

/// A cocone over the E-diagram: one leg per E-object into a common apex.
struct ECocone {
  FinSet apex;
  std::vector<FinFn> legs;
};

struct ReducedCocone {
  std::vector<FinFn> legs; // one per group: P -> K, defined as k_t o inl
  struct IndependenceFailure {
    int group;
    int t1, t2; // E-objects over the same (P,p) with k_t1 o inl != k_t2 o inl
  };
  std::vector<IndependenceFailure> independence_failures;
  struct SliceFailure {
    int g1, g2; // groups joined by a slice morphism violating the cocone law
  };
  std::vector<SliceFailure> slice_failures;
  bool independent() const { return independence_failures.empty(); }
  bool slice_cocone() const { return slice_failures.empty(); }
};

/// Restriction of an E-cocone to the slice: k_bar(P,p) = k_t o inl for the
/// first triangle over (P,p); verifies independence of the triangle choice
/// and the slice cocone laws (failures reported, not thrown).
ReducedCocone reduce_cocone(const EDiagram& ed, const ECocone& k);

struct LiftCheckResult {
  bool slice_morphism = false; // v o p = k_bar(P,p) for all slice objects
  bool e_morphism = false;     // v o inj_t = k_t for all E-objects
  std::string detail;
};

/// The two cocone-morphism conditions for v: F(A_n) -> K. They are
/// equivalent once every diagram object in use has its s-object; missing
/// s-objects are inserted on the fly with legs derived through the
/// codiagonal. A disagreement is reported as a bug sentinel in `detail`.
LiftCheckResult lift_cocone_morphism_check(const EDiagram& ed, const ECocone& k, const FinFn& v);

struct EColimitOptions {
  std::uint64_t cap = default_cap();
  /// Also diagnose whether the functor preserves the truncation colimit
  /// (feasible only when the diagram's hom-sets are small).
  bool diagnose_preservation = false;
};

struct EColimitResult {
  enum class Verdict { Bijective, InjectiveOnly, NotInjective };
  Verdict verdict = Verdict::NotInjective;
  EDiagram ed;
  std::vector<int> offsets;      // raw coproduct offsets per E-object
  Partition partition;           // over the raw coproduct of E-carriers
  std::vector<int> raw_to_class; // raw -> colimit class id (dense, 0..n-1)
  int class_count = 0;
  std::vector<int> class_to_fa;  // canonical comparison map colim E -> F(A_n)
  std::optional<bool> functor_preserves_colimit;

  EColimitResult(EDiagram e) : ed(std::move(e)) {}
};

/// Materializes the E-diagram over the full slice up to slice_bound, computes
/// the carrier colimit, and compares it with F(A_n) via the canonical
/// mediating map.
EColimitResult iterate_colimit_check(const InitialTruncation& t, int slice_bound,
                                     const EColimitOptions& opts = {});

} // namespace unchained
