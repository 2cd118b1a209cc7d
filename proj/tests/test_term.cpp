#include "doctest.h"

#include "helpers.hpp"
#include "unchained/term.hpp"

using namespace unchained;
using namespace testutil;

TEST_CASE("hash consing shares structurally equal terms") {
  TermPool pool(cherry_sig());
  TermId l1 = pool.intern(0, {});
  TermId l2 = pool.intern(0, {});
  CHECK(l1 == l2);
  TermId n1 = pool.intern(1, {l1, l1});
  TermId n2 = pool.intern(1, {l2, l2});
  CHECK(n1 == n2);
  CHECK(pool.depth(l1) == 0);
  CHECK(pool.depth(n1) == 1);
  CHECK(pool.to_string(n1) == "node(leaf,leaf)");

  TermId deep = pool.intern(1, {n1, l1});
  CHECK(pool.dag_size(deep) == 3);
  CHECK(pool.dag_size(pool.intern(1, {n1, n1})) == 3);
}

TEST_CASE("powerset terms are canonical sets") {
  TermPool pool(Signature::powerset());
  TermId empty = pool.intern(FElem::kSubset, {});
  TermId s1 = pool.intern(FElem::kSubset, {empty});
  TermId again = pool.intern(FElem::kSubset, {empty, empty});
  CHECK(s1 == again); // duplicates collapse
  CHECK(pool.to_string(s1) == "{{}}");
  CHECK(pool.depth(s1) == 1);
}

TEST_CASE("term enumeration counts match the functor recurrence") {
  // binary trees: a_0 = 0, a_{k+1} = 1 + a_k^2 -> 0,1,2,5,26
  TermPool pool(cherry_sig());
  auto levels = enumerate_terms_by_depth(pool, 4);
  REQUIRE(levels.size() == 5);
  CHECK(levels[0].size() == 0);
  CHECK(levels[1].size() == 1);
  CHECK(levels[2].size() == 2);
  CHECK(levels[3].size() == 5);
  CHECK(levels[4].size() == 26);
  // levels are nested and depth-bounded
  for (std::size_t d = 0; d + 1 < levels.size(); ++d)
    for (TermId t : levels[d]) {
      CHECK(pool.depth(t) < static_cast<int>(d));
      CHECK(std::find(levels[d + 1].begin(), levels[d + 1].end(), t) != levels[d + 1].end());
    }

  TermPool spool(successor_sig());
  auto slev = enumerate_terms_by_depth(spool, 3);
  CHECK(slev[1].size() == 1);
  CHECK(slev[2].size() == 2);
  CHECK(slev[3].size() == 3);

  TermPool ppool(Signature::powerset());
  auto plev = enumerate_terms_by_depth(ppool, 4);
  CHECK(plev[1].size() == 1);
  CHECK(plev[2].size() == 2);
  CHECK(plev[3].size() == 4);
  CHECK(plev[4].size() == 16);
}
