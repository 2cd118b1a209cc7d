#include "doctest.h"

#include "helpers.hpp"
#include "unchained/chain.hpp"

using namespace unchained;
using namespace testutil;

TEST_CASE("chain sizes follow the size recurrence") {
  // cherry: a_0 = 0, a_{k+1} = 1 + a_k^2
  ChainData cd = build_chain(cherry_sig(), 4);
  std::vector<int> sizes;
  for (const auto& s : cd.stages) sizes.push_back(s.size());
  CHECK(sizes == std::vector<int>{0, 1, 2, 5, 26});

  // constants-only: F is constant after the first step
  ChainData ck = build_chain(constants_sig(3), 2);
  CHECK(ck.stages[0].size() == 0);
  CHECK(ck.stages[1].size() == 3);
  CHECK(ck.stages[2].size() == 3);

  // successor: a_{k+1} = 1 + a_k
  ChainData cs = build_chain(successor_sig(), 3);
  std::vector<int> ssizes;
  for (const auto& s : cs.stages) ssizes.push_back(s.size());
  CHECK(ssizes == std::vector<int>{0, 1, 2, 3});

  // powerset: 0, 1, 2, 4
  ChainData cp = build_chain(Signature::powerset(), 3);
  CHECK(cp.stages[3].size() == 4);
}

TEST_CASE("chain stages are recursive; links preserve unfoldings") {
  ChainData cd = build_chain(cherry_sig(), 4);
  TermPool pool(cherry_sig());
  for (int k = 0; k <= cd.steps(); ++k) {
    Coalgebra stage = cd.stage_coalgebra(k);
    CHECK(is_recursive(stage).recursive);
    CHECK(cd.links[static_cast<std::size_t>(k)].is_injective());
    if (k + 1 <= cd.steps()) {
      Coalgebra next = cd.stage_coalgebra(k + 1);
      auto tk = unfold_all(pool, stage);
      auto tn = unfold_all(pool, next);
      for (int v = 0; v < stage.carrier.size(); ++v)
        CHECK(tk[static_cast<std::size_t>(v)] ==
              tn[static_cast<std::size_t>(cd.links[static_cast<std::size_t>(k)](v))]);
    }
  }
}

TEST_CASE("chain analysis: convergent cases") {
  // constants-only: converges at k = 1, initial algebra of size 3
  ChainReport r = analyze_chain(build_chain(constants_sig(3), 3));
  CHECK(r.converges_at == 1);
  CHECK(r.initial_algebra_verified);
  CHECK(r.initial_algebra_size == 3);
  CHECK(r.term_counts_match);

  // empty signature: converges immediately with the empty algebra
  ChainReport re = analyze_chain(build_chain(Signature::polynomial({}), 2));
  CHECK(re.converges_at == 0);
  CHECK(re.initial_algebra_size == 0);
}

TEST_CASE("chain analysis: cherry prefix") {
  ChainAnalysisOptions opts;
  opts.truncation_bound = 3;
  ChainReport r = analyze_chain(build_chain(cherry_sig(), 4), opts);
  CHECK(!r.converges_at.has_value());
  for (bool rec : r.stage_recursive) CHECK(rec);
  for (bool inj : r.link_injective) CHECK(inj);
  CHECK(r.term_counts_match);
  CHECK(r.term_counts == std::vector<int>{0, 1, 2, 5, 26});
  CHECK(r.truncation_checked);
  CHECK(r.truncation_contains_stage_terms);
  CHECK(r.truncation_terms_checked > 0);
}
