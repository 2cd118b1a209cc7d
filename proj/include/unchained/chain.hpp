#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unchained/coalgebra.hpp"
#include "unchained/error.hpp"
#include "unchained/functor.hpp"
#include "unchained/term.hpp"

namespace unchained {

/// The finite prefix of the chain  0 -> F0 -> F^2 0 -> ... : stages W_0..W_k
/// with connecting maps w_{i,i+1} = F^i(!) and per-stage decoders. Every
/// stage carries its coalgebra structure, so F is applied once more than
/// there are stage transitions.
struct ChainData {
  Signature sig;
  std::vector<FinSet> stages; // W_0 = empty, W_{i+1} = F(W_i); k+1 entries
  std::vector<FObj> fobjs;    // fobjs[i] = F applied to W_i; k+1 entries
  std::vector<FinFn> links;   // links[i]: W_i -> F(W_i) = W_{i+1}; k+1 entries

  int steps() const { return static_cast<int>(stages.size()) - 1; }

  /// Stage i read as a coalgebra W_i -> F(W_i) (the link, decoded).
  Coalgebra stage_coalgebra(int i) const;
};

ChainData build_chain(const Signature& sig, int steps, std::uint64_t cap = default_cap());

struct ChainAnalysisOptions {
  std::uint64_t cap = default_cap();
  /// Cross-check stage terms against the truncated colimit with this bound;
  /// <0 picks the largest stage-term DAG size, capped at 3.
  std::optional<int> truncation_bound;
  bool check_truncation = true;
};

struct ChainReport {
  std::vector<int> sizes;
  std::vector<bool> stage_recursive;
  std::vector<bool> link_injective;
  std::optional<int> converges_at; // first k with links[k] bijective
  bool term_counts_match = false;  // |W_k| = #terms of depth < k
  std::vector<int> term_counts;
  bool initial_algebra_verified = false; // only on convergence
  int initial_algebra_size = 0;
  // stage-term containment in the truncated colimit
  bool truncation_checked = false;
  int truncation_bound_used = 0;
  int truncation_terms_checked = 0;
  bool truncation_contains_stage_terms = false;
};

ChainReport analyze_chain(const ChainData& cd, const ChainAnalysisOptions& opts = {});

} // namespace unchained
