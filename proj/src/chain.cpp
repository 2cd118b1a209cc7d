#include "unchained/chain.hpp"

#include <algorithm>

#include "unchained/construction.hpp"

namespace unchained {

ChainData build_chain(const Signature& sig, int steps, std::uint64_t cap) {
  if (steps < 0) throw InvalidValueError("steps must be >= 0");
  ChainData cd;
  cd.sig = sig;
  cd.stages.push_back(FinSet{}); // W_0 = empty set
  for (int i = 0; i <= steps; ++i) {
    cd.fobjs.push_back(apply_obj(sig, cd.stages.back(), cap)); // F(W_i)
    if (i < steps) cd.stages.push_back(cd.fobjs.back().carrier());
    if (i == 0) {
      cd.links.emplace_back(cd.stages[0], cd.fobjs[0].carrier(), std::vector<int>{});
    } else {
      // w_{i,i+1} = F(w_{i-1,i})
      cd.links.push_back(apply_fn(cd.fobjs[static_cast<std::size_t>(i) - 1],
                                  cd.fobjs[static_cast<std::size_t>(i)],
                                  cd.links[static_cast<std::size_t>(i) - 1]));
    }
  }
  return cd;
}

Coalgebra ChainData::stage_coalgebra(int i) const {
  if (i < 0 || i > steps()) throw InvalidValueError("no such stage");
  const FObj& f = fobjs[static_cast<std::size_t>(i)];
  const FinFn& link = links[static_cast<std::size_t>(i)];
  std::vector<FElem> st(static_cast<std::size_t>(stages[static_cast<std::size_t>(i)].size()));
  for (int v = 0; v < stages[static_cast<std::size_t>(i)].size(); ++v)
    st[static_cast<std::size_t>(v)] = f.decode(link(v));
  return Coalgebra{sig, stages[static_cast<std::size_t>(i)], std::move(st)};
}

ChainReport analyze_chain(const ChainData& cd, const ChainAnalysisOptions& opts) {
  ChainReport rep;
  for (const FinSet& s : cd.stages) rep.sizes.push_back(s.size());

  TermPool pool(cd.sig);
  std::vector<std::vector<TermId>> stage_terms;
  for (int i = 0; i <= cd.steps(); ++i) {
    Coalgebra c = cd.stage_coalgebra(i);
    RecResult r = is_recursive(c);
    rep.stage_recursive.push_back(r.recursive);
    rep.link_injective.push_back(cd.links[static_cast<std::size_t>(i)].is_injective());
    if (!rep.converges_at && cd.links[static_cast<std::size_t>(i)].is_bijective())
      rep.converges_at = i;
    stage_terms.push_back(r.recursive ? unfold_all(pool, c) : std::vector<TermId>{});
  }

  // links preserve unfoldings, so stage term sets are nested; stage k
  // realizes exactly the terms of depth < k, each exactly once
  auto levels = enumerate_terms_by_depth(pool, cd.steps(), opts.cap);
  for (const auto& level : levels)
    rep.term_counts.push_back(static_cast<int>(level.size()));
  rep.term_counts_match = true;
  for (std::size_t k = 0; k < cd.stages.size() && k < levels.size(); ++k)
    if (cd.stages[k].size() != static_cast<int>(levels[k].size())) rep.term_counts_match = false;
  for (int k = 0; k <= cd.steps(); ++k) {
    std::vector<TermId> realized = stage_terms[static_cast<std::size_t>(k)];
    std::sort(realized.begin(), realized.end());
    bool injective = std::adjacent_find(realized.begin(), realized.end()) == realized.end();
    std::vector<TermId> expected = levels[static_cast<std::size_t>(k)];
    std::sort(expected.begin(), expected.end());
    if (!injective || realized != expected) rep.term_counts_match = false;
  }

  if (rep.converges_at) {
    InitialityTester tester = initial_from_iso(cd.stage_coalgebra(*rep.converges_at), opts.cap);
    rep.initial_algebra_verified = true;
    rep.initial_algebra_size = tester.algebra.carrier.size();
  }

  if (opts.check_truncation && cd.steps() > 0) {
    int bound = opts.truncation_bound.value_or(-1);
    int max_dag = 0;
    for (const auto& ts : stage_terms)
      for (TermId t : ts) max_dag = std::max(max_dag, pool.dag_size(t));
    if (bound < 0) bound = std::min(max_dag, 3);
    rep.truncation_bound_used = bound;
    OraclePartitionResult oc = oracle_partition(cd.sig, bound, TruncationOptions{opts.cap, false});
    // realized terms of the truncation, keyed by canonical string
    std::vector<std::string> realized;
    for (TermId t : oc.class_term) realized.push_back(oc.pool.to_string(t));
    std::sort(realized.begin(), realized.end());
    rep.truncation_contains_stage_terms = true;
    for (const auto& ts : stage_terms)
      for (TermId t : ts) {
        if (pool.dag_size(t) > bound) continue; // not representable at this bound
        ++rep.truncation_terms_checked;
        if (!std::binary_search(realized.begin(), realized.end(), pool.to_string(t)))
          rep.truncation_contains_stage_terms = false;
      }
    rep.truncation_checked = true;
  }
  return rep;
}

} // namespace unchained
