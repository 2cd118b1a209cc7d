#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unchained/coalgebra.hpp"
#include "unchained/error.hpp"
#include "unchained/finset.hpp"
#include "unchained/functor.hpp"
#include "unchained/term.hpp"

namespace unchained {

/// The full diagram of enumerated recursive coalgebras on ordinal carriers:
/// objects plus hom-sets realized literally as the filter of all functions.
/// Hom-sets are streamed on demand; per-object search data is precomputed.
class FinrecDiagram {
public:
  FinrecDiagram(Signature sig, std::vector<Coalgebra> objects);
  FinrecDiagram(const FinrecDiagram&) = delete;
  FinrecDiagram& operator=(const FinrecDiagram&) = delete;
  FinrecDiagram(FinrecDiagram&&) = default;
  FinrecDiagram& operator=(FinrecDiagram&&) = default;

  const Signature& sig() const { return sig_; }
  int size() const { return static_cast<int>(objects_.size()); }
  const Coalgebra& object(int i) const { return objects_[static_cast<std::size_t>(i)]; }
  const std::vector<Coalgebra>& objects() const { return objects_; }
  const RecResult& rec(int i) const { return rec_[static_cast<std::size_t>(i)]; }

  /// Streams every coalgebra morphism src -> dst (deterministic order).
  void for_each_hom(int src, int dst,
                    const std::function<void(const std::vector<int>&)>& cb) const;

  /// Materialized hom-set, sorted lexicographically.
  std::vector<FinFn> homs(int src, int dst) const;

private:
  Signature sig_;
  std::vector<Coalgebra> objects_;
  std::vector<RecResult> rec_;
  std::vector<MorphismSearchIndex> idx_;
};

/// Exactly all recursive structure maps on carriers {0..k-1}, k <= bound,
/// in ascending (k, structure index) order.
std::vector<Coalgebra> enumerate_finrec(const Signature& sig, int bound,
                                        std::uint64_t cap = default_cap());

struct TruncationOptions {
  std::uint64_t cap = default_cap();
  /// Performance-only: keep one representative per isomorphism class
  /// (canonical-form key by permutation minimization).
  bool dedup_isomorphic = false;
};

/// Truncated colimit of all enumerated recursive coalgebras: the carrier A_n
/// with the induced structure alpha (verified injective) and one verified
/// coalgebra-morphism injection per diagram object.
struct InitialTruncation {
  Signature sig;
  int bound = 0;
  std::shared_ptr<const FinrecDiagram> diagram;

  FinSet carrier; // A_n
  FObj fA;        // F(A_n)
  FinFn alpha;    // A_n -> F(A_n), injective
  std::vector<FinFn> injections;

  std::vector<int> offsets;                     // raw coproduct offset per object
  Partition partition;                          // over raw coproduct indices
  std::vector<int> raw_to_apex;                 // raw -> carrier index
  std::vector<std::pair<int, int>> apex_to_raw; // carrier index -> (object, local)

  Coalgebra as_coalgebra() const;    // (A_n, alpha)
  Coalgebra fa_coalgebra() const;    // (F A_n, F alpha)
  int raw_index(int object, int local) const {
    return offsets[static_cast<std::size_t>(object)] + local;
  }
};

InitialTruncation build_truncation(const Signature& sig, int bound,
                                   const TruncationOptions& opts = {});

/// Catamorphism: evaluates every pool term by the algebra (children first).
std::vector<int> cata_all(const TermPool& pool, const Algebra& a);
int cata(const TermPool& pool, const Algebra& a, TermId t);

/// Compares the colimit partition of a truncation with the partition induced
/// by term equality of unfoldings.
struct OraclePartitionResult {
  bool agree = false;
  int colimit_classes = 0;
  int term_classes = 0;
  TermPool pool;
  std::vector<TermId> raw_terms;  // per raw coproduct element
  std::vector<TermId> class_term; // per apex element, when agree
  std::string mismatch;           // first witnessed disagreement

  explicit OraclePartitionResult(Signature sig) : pool(std::move(sig)) {}
};

OraclePartitionResult oracle_partition(const InitialTruncation& t);

/// Truncation + oracle comparison in one step.
OraclePartitionResult oracle_partition(const Signature& sig, int bound,
                                       const TruncationOptions& opts = {});

/// The mediating map A_n -> B induced by the per-object hylomorphisms into b.
/// Verifies the hylomorphisms are constant on colimit classes (equivalently,
/// form a cocone); a failure is an implementation bug and throws NotACoconeError.
FinFn universal_fold(const InitialTruncation& t, const Algebra& b);

struct FactorResult {
  int object = -1;
  FinFn factor;
  bool uniqueness_verified = false;
};

struct FactorOptions {
  bool verify_unique = true;
  std::uint64_t cap = default_cap();
};

/// Factors a coalgebra morphism h: (B,beta) -> (A_n,alpha) through a colimit
/// injection: returns (j, h') with pi_j o h' = h and h' a coalgebra morphism.
/// Optionally verifies each pi_i is the unique coalgebra morphism
/// (X_i,x_i) -> (A_n,alpha) by brute force. Throws NoFactorizationError.
FactorResult factor_coalg_hom(const InitialTruncation& t, const Coalgebra& b, const FinFn& h,
                              const FactorOptions& opts = {});

struct MainTheoremOptions {
  int slice_bound = 1;
  std::uint64_t cap = default_cap();
};

struct MainTheoremResult {
  enum class Status { Bijective, Inconclusive };
  Status status = Status::Inconclusive;
  bool alpha_injective = false;
  bool alpha_surjective = false;
  int carrier_size = 0;
  int fa_size = 0;
  std::string detail;
  std::shared_ptr<InitialTruncation> truncation;
  std::optional<InitialityTester> tester; // present when bijective
};

/// End-to-end check: builds the truncation, tests alpha for bijectivity,
/// derives the inverse from the functor-applied colimit comparison, runs the
/// Lambek-style verification, and returns an initiality tester.
MainTheoremResult main_theorem_check(const Signature& sig, int bound,
                                     const MainTheoremOptions& opts = {});

} // namespace unchained
