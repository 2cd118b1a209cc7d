#include "doctest.h"

#include <map>
#include <random>

#include "helpers.hpp"
#include "unchained/coalgebra.hpp"

using namespace unchained;
using namespace testutil;

namespace {

/// Independent oracle for the six-state example: evaluates the defining
/// recursive equations of the height function directly on state names.
int fig2_height_oracle(const std::string& state) {
  std::map<std::string, int> h;
  h["x"] = h["y"] = h["z"] = 0;
  h["u"] = 1 + std::max(h["x"], h["x"]);
  h["w"] = 1 + std::max(h["z"], h["y"]);
  h["v"] = 1 + std::max(h["y"], h["w"]);
  return h.at(state);
}

} // namespace

TEST_CASE("recursiveness decision with certificates") {
  Coalgebra fig2 = fig2_coalgebra();
  RecResult r = is_recursive(fig2);
  CHECK(r.recursive);
  CHECK(r.topo.size() == 6);
  // topological order puts dependencies first
  std::vector<int> pos(6);
  for (std::size_t i = 0; i < r.topo.size(); ++i) pos[static_cast<std::size_t>(r.topo[i])] = static_cast<int>(i);
  for (int v = 0; v < 6; ++v)
    for (int a : fig2.structure[static_cast<std::size_t>(v)].args)
      CHECK(pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(v)]);

  // self-loop
  FinSet one = FinSet::from_names({"x"});
  Coalgebra loop = make_coalgebra(cherry_sig(), one, {FElem{1, {0, 0}}});
  RecResult rl = is_recursive(loop);
  CHECK(!rl.recursive);
  CHECK(cycle_names(loop, rl) == std::vector<std::string>{"x"});

  // well-founded relation a R b as a powerset coalgebra: c(b)={a}, c(a)={}
  FinSet ab = FinSet::from_names({"a", "b"});
  Coalgebra wf = make_coalgebra(Signature::powerset(), ab,
                                {FElem{FElem::kSubset, {}}, FElem{FElem::kSubset, {0}}});
  CHECK(is_recursive(wf).recursive);
}

TEST_CASE("hylo against the hand-evaluated height table") {
  Coalgebra fig2 = fig2_coalgebra();
  Algebra height = height_algebra(3);
  FinFn h = hylo(fig2, height);
  for (const std::string& s : {"x", "y", "z", "u", "w", "v"})
    CHECK(h.apply_name(s) == std::to_string(fig2_height_oracle(s)));
  CHECK(h.apply_name("v") == "2");
  CHECK(is_coalg_to_alg_morphism(h, fig2, height));

  // perturbing one value breaks the pentagon
  std::vector<int> t = h.table();
  t[static_cast<std::size_t>(fig2.carrier.index_of("u"))] = height.carrier.index_of("3");
  CHECK(!is_coalg_to_alg_morphism(FinFn(fig2.carrier, height.carrier, t), fig2, height));

  // identity is a coalgebra morphism on any coalgebra
  CHECK(is_coalgebra_morphism(FinFn::identity(fig2.carrier), fig2, fig2));

  // empty carrier: hylo is the empty function
  Coalgebra empty = make_coalgebra(cherry_sig(), FinSet{}, {});
  CHECK(hylo(empty, height).dom().empty());
}

TEST_CASE("hylo requires recursiveness") {
  FinSet one = FinSet::from_names({"x"});
  Coalgebra loop = make_coalgebra(cherry_sig(), one, {FElem{1, {0, 0}}});
  CHECK_THROWS_AS(hylo(loop, height_algebra(2)), NotRecursiveError);
}

TEST_CASE("brute-force solution counts") {
  Algebra height1 = height_algebra(1); // carrier {0,1}
  Coalgebra fig2 = fig2_coalgebra();
  auto sols = brute_force_solutions(fig2, height1);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0] == hylo(fig2, height1));

  FinSet one = FinSet::from_names({"x"});
  Coalgebra loop = make_coalgebra(cherry_sig(), one, {FElem{1, {0, 0}}});
  // parity-flavored algebra admits no solution for the self-loop
  Algebra flip = make_algebra_by(cherry_sig(), FinSet::ordinal(2), [](const FElem& e) {
    return e.op == 0 ? 0 : 1 - e.args[0];
  });
  CHECK(brute_force_solutions(loop, flip).empty());
  // first-projection algebra admits two
  Algebra proj = make_algebra_by(cherry_sig(), FinSet::ordinal(2), [](const FElem& e) {
    return e.op == 0 ? 0 : e.args[0];
  });
  CHECK(brute_force_solutions(loop, proj).size() == 2);

  Coalgebra empty = make_coalgebra(cherry_sig(), FinSet{}, {});
  CHECK(brute_force_solutions(empty, height1).size() == 1);
}

TEST_CASE("decision procedure agrees with uniqueness, small exhaustive slice") {
  // cherry coalgebras with carrier <= 2, algebras with carrier <= 2:
  // recursive iff every algebra admits exactly one solution
  auto algebras = all_algebras(cherry_sig(), 1);
  auto alg2 = all_algebras(cherry_sig(), 2);
  algebras.insert(algebras.end(), alg2.begin(), alg2.end());
  for (int n = 0; n <= 2; ++n) {
    for (const Coalgebra& c : all_coalgebras(cherry_sig(), n)) {
      bool rec = is_recursive(c).recursive;
      bool unique_everywhere = true;
      for (const Algebra& a : algebras)
        if (brute_force_solutions(c, a).size() != 1) {
          unique_everywhere = false;
          break;
        }
      CHECK(rec == unique_everywhere);
    }
  }
}

TEST_CASE("iterate preserves recursiveness and cyclicity") {
  // empty coalgebra for cherry: F(empty) has one state, still recursive
  Coalgebra empty = make_coalgebra(cherry_sig(), FinSet{}, {});
  Coalgebra it0 = iterate(empty);
  CHECK(it0.carrier.size() == 1);
  CHECK(is_recursive(it0).recursive);

  Coalgebra fig2 = fig2_coalgebra();
  Coalgebra it2 = iterate(fig2);
  CHECK(it2.carrier.size() == 37); // 1 + 6^2
  CHECK(is_recursive(it2).recursive);

  FinSet one = FinSet::from_names({"x"});
  Coalgebra loop = make_coalgebra(cherry_sig(), one, {FElem{1, {0, 0}}});
  CHECK(!is_recursive(iterate(loop)).recursive);

  // exhaustive at carrier <= 2 over cherry
  for (int n = 0; n <= 2; ++n)
    for (const Coalgebra& c : all_coalgebras(cherry_sig(), n))
      CHECK(is_recursive(iterate(c)).recursive == is_recursive(c).recursive);
}

TEST_CASE("sandwich transfer") {
  Coalgebra fig2 = fig2_coalgebra();
  Coalgebra fr = iterate(fig2);
  FObj f = apply_obj(cherry_sig(), fig2.carrier);

  // g = id: recursive coalgebras are closed under application of the functor
  FinFn h = coalgebra_structure_fn(fig2, f);
  SandwichReport rep = sandwich_transfer(fig2, fr, h, FinFn::identity(fr.carrier));
  CHECK(rep.r_recursive);
  CHECK(rep.b_recursive);

  // the split-quotient construction: h = m, g = c o e
  CanonicalSplit split = split_to_canonical(fig2);
  FinFn g = compose(coalgebra_structure_fn(fig2, f), split.e);
  SandwichReport rep2 = sandwich_transfer(fig2, split.canonical, split.m, g);
  CHECK(rep2.b_recursive);

  // a random non-morphism h fails the hypothesis check
  std::vector<int> bad(static_cast<std::size_t>(fr.carrier.size()), 0);
  CHECK_THROWS_AS(
      sandwich_transfer(fig2, fr, FinFn(fig2.carrier, fr.carrier, std::vector<int>(6, 0)),
                        FinFn(fr.carrier, fr.carrier, bad)),
      HypothesisError);
}

TEST_CASE("colimits of coalgebra diagrams") {
  Coalgebra fig2 = fig2_coalgebra();

  // single node
  CoalgColimit single = colim_coalgebras(CoalgebraDiagram{{fig2}, {}});
  CHECK(single.coalg.carrier.size() == 6);
  CHECK(is_recursive(single.coalg).recursive);
  CHECK(is_coalgebra_morphism(single.injections[0], fig2, single.coalg));

  // two disjoint recursive coalgebras: coproduct, recursive
  FinSet one = FinSet::from_names({"x"});
  Coalgebra leaf1 = make_coalgebra(cherry_sig(), one, {FElem{0, {}}});
  CoalgColimit cop = colim_coalgebras(CoalgebraDiagram{{fig2, leaf1}, {}});
  CHECK(cop.coalg.carrier.size() == 7);
  CHECK(is_recursive(cop.coalg).recursive);

  // a chain of inclusions collapses onto its top
  Signature s = successor_sig();
  FinSet c1 = FinSet::ordinal(1);
  FinSet c2 = FinSet::ordinal(2);
  Coalgebra x1 = make_coalgebra(s, c1, {FElem{0, {}}});
  Coalgebra x2 = make_coalgebra(s, c2, {FElem{0, {}}, FElem{1, {0}}});
  CoalgebraDiagram chain{{x1, x2}, {CoalgebraDiagram::Edge{0, 1, FinFn(c1, c2, {0})}}};
  CoalgColimit top = colim_coalgebras(chain);
  CHECK(top.coalg.carrier.size() == 2);
  for (std::size_t i = 0; i < top.injections.size(); ++i)
    CHECK(is_coalgebra_morphism(top.injections[i], chain.objects[i], top.coalg));

  // non-morphism edges are rejected
  CoalgebraDiagram bad{{x1, x2}, {CoalgebraDiagram::Edge{0, 1, FinFn(c1, c2, {1})}}};
  CHECK_THROWS_AS(colim_coalgebras(bad), MorphismCheckError);
}

TEST_CASE("lambek check") {
  // constants-only functor: a bijective structure has a verified inverse
  Signature k3 = constants_sig(3);
  FinSet abc = FinSet::from_names({"a", "b", "c"});
  Coalgebra c = make_coalgebra(k3, abc, {FElem{0, {}}, FElem{1, {}}, FElem{2, {}}});
  FObj f = apply_obj(k3, abc);
  FinFn structure = coalgebra_structure_fn(c, f);
  FinFn h = *structure.try_inverse();
  FinFn inv = lambek_check(c, h);
  CHECK(compose(inv, structure) == FinFn::identity(abc));

  // a nonidentity automorphism defeats uniqueness
  Signature k1 = constants_sig(1);
  FinSet ab = FinSet::from_names({"a", "b"});
  Coalgebra amb = make_coalgebra(k1, ab, {FElem{0, {}}, FElem{0, {}}});
  FObj f1 = apply_obj(k1, ab);
  // h: F(C) = {c1} -> C, c1 -> a; it is a coalgebra morphism
  FinFn h1(f1.carrier(), ab, {0});
  CHECK_THROWS_AS(lambek_check(amb, h1), MorphismCheckError);

  // non-morphism h is rejected up front
  Coalgebra fig2 = fig2_coalgebra();
  FObj f2 = apply_obj(cherry_sig(), fig2.carrier);
  FObj ff2 = apply_obj(cherry_sig(), apply_obj(cherry_sig(), fig2.carrier).carrier());
  std::vector<int> constant(static_cast<std::size_t>(f2.carrier().size()),
                            fig2.carrier.index_of("x"));
  CHECK_THROWS_AS(lambek_check(fig2, FinFn(f2.carrier(), fig2.carrier, constant)),
                  MorphismCheckError);
}

TEST_CASE("lambek success agrees with the literal structure inverse") {
  Signature k3 = constants_sig(3);
  FinSet abc = FinSet::from_names({"a", "b", "c"});
  Coalgebra c = make_coalgebra(k3, abc, {FElem{0, {}}, FElem{1, {}}, FElem{2, {}}});
  FObj f = apply_obj(k3, abc);
  FinFn structure = coalgebra_structure_fn(c, f);
  FinFn h = lambek_check(c, *structure.try_inverse());
  auto inv = structure.try_inverse();
  REQUIRE(inv.has_value());
  CHECK(*inv == h);
}

TEST_CASE("colimits of generated recursive diagrams stay recursive") {
  // random small diagrams of recursive coalgebras with morphism edges
  std::mt19937_64 rng(77);
  std::vector<Coalgebra> pool;
  for (const Coalgebra& c : all_coalgebras(successor_sig(), 2))
    if (is_recursive(c).recursive) pool.push_back(c);
  for (const Coalgebra& c : all_coalgebras(successor_sig(), 1))
    if (is_recursive(c).recursive) pool.push_back(c);
  for (int trial = 0; trial < 25; ++trial) {
    CoalgebraDiagram d;
    int nobj = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nobj; ++i)
      d.objects.push_back(pool[static_cast<std::size_t>(rng() % pool.size())]);
    for (int i = 0; i < nobj; ++i)
      for (int j = 0; j < nobj; ++j) {
        auto homs = coalgebra_morphisms(d.objects[static_cast<std::size_t>(i)],
                                        d.objects[static_cast<std::size_t>(j)]);
        if (!homs.empty() && rng() % 2 == 0)
          d.edges.push_back(CoalgebraDiagram::Edge{
              i, j, homs[static_cast<std::size_t>(rng() % homs.size())]});
      }
    CoalgColimit col = colim_coalgebras(d);
    CHECK(is_recursive(col.coalg).recursive);
    for (std::size_t i = 0; i < col.injections.size(); ++i)
      CHECK(is_coalgebra_morphism(col.injections[i], d.objects[i], col.coalg));
  }
}

TEST_CASE("initial algebra from an isomorphic structure") {
  Signature k3 = constants_sig(3);
  FinSet abc = FinSet::from_names({"a", "b", "c"});
  Coalgebra c = make_coalgebra(k3, abc, {FElem{0, {}}, FElem{1, {}}, FElem{2, {}}});
  InitialityTester tester = initial_from_iso(c);

  // against itself: identity
  CHECK(tester.run(tester.algebra) == FinFn::identity(abc));

  // against a two-element algebra: the evident map, verified unique
  Algebra b = make_algebra_by(k3, FinSet::ordinal(2),
                              [](const FElem& e) { return e.op == 2 ? 1 : 0; });
  FinFn u = tester.run(b);
  CHECK(u.apply_name("a") == "0");
  CHECK(u.apply_name("b") == "0");
  CHECK(u.apply_name("c") == "1");

  // bijectivity is required
  Signature k1 = constants_sig(1);
  FinSet ab = FinSet::from_names({"a", "b"});
  Coalgebra amb = make_coalgebra(k1, ab, {FElem{0, {}}, FElem{0, {}}});
  CHECK_THROWS_AS(initial_from_iso(amb), NotBijectiveError);
}

TEST_CASE("split to canonical carriers") {
  Coalgebra fig2 = fig2_coalgebra();
  CanonicalSplit s = split_to_canonical(fig2);
  CHECK(s.canonical.carrier == FinSet::ordinal(6));
  CHECK(compose(s.e, s.m) == FinFn::identity(fig2.carrier));
  CHECK(is_recursive(s.canonical).recursive);
  CHECK(is_coalgebra_morphism(s.m, fig2, s.canonical));
  CHECK(is_coalgebra_morphism(s.e, s.canonical, fig2));

  // idempotent on ordinal carriers
  CanonicalSplit again = split_to_canonical(s.canonical);
  CHECK(again.canonical.carrier == s.canonical.carrier);
  CHECK(again.canonical.structure == s.canonical.structure);

  Coalgebra empty = make_coalgebra(cherry_sig(), FinSet{}, {});
  CHECK(split_to_canonical(empty).canonical.carrier.empty());
}

TEST_CASE("unfolding") {
  Coalgebra fig2 = fig2_coalgebra();
  TermPool pool(cherry_sig());
  CHECK(pool.to_string(unfold(pool, fig2, "v")) == "node(leaf,node(leaf,leaf))");
  CHECK(pool.to_string(unfold(pool, fig2, "x")) == "leaf");

  // unfolding is invariant under coalgebra morphisms
  auto objects = all_coalgebras(successor_sig(), 2);
  TermPool spool(successor_sig());
  for (const Coalgebra& a : objects) {
    if (!is_recursive(a).recursive) continue;
    auto ua = unfold_all(spool, a);
    for (const Coalgebra& b : objects) {
      if (!is_recursive(b).recursive) continue;
      auto ub = unfold_all(spool, b);
      for (const FinFn& h : coalgebra_morphisms(a, b))
        for (int v = 0; v < a.carrier.size(); ++v)
          CHECK(ua[static_cast<std::size_t>(v)] == ub[static_cast<std::size_t>(h(v))]);
    }
  }
}

TEST_CASE("hylo always satisfies its defining equation") {
  std::mt19937_64 rng(123);
  std::vector<Signature> sigs = {cherry_sig(), successor_sig(), Signature::powerset()};
  for (const Signature& sig : sigs) {
    for (int trial = 0; trial < 30; ++trial) {
      int n = static_cast<int>(rng() % 5);
      FinSet carrier = FinSet::ordinal(n);
      FObj f = apply_obj(sig, carrier);
      std::vector<FElem> st;
      for (int i = 0; i < n; ++i)
        st.push_back(f.decode(static_cast<int>(rng() % static_cast<std::uint64_t>(f.carrier().size()))));
      Coalgebra c{sig, carrier, std::move(st)};
      if (!is_recursive(c).recursive) continue;
      int m = 1 + static_cast<int>(rng() % 3);
      FinSet acarrier = FinSet::ordinal(m);
      FObj fa = apply_obj(sig, acarrier);
      std::vector<int> table(static_cast<std::size_t>(fa.carrier().size()));
      for (auto& v : table) v = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
      Algebra a{sig, acarrier, fa, std::move(table)};
      CHECK(is_coalg_to_alg_morphism(hylo(c, a), c, a));
    }
  }
}

TEST_CASE("cap guards and signature checks on the solution search") {
  Coalgebra fig2 = fig2_coalgebra();
  CHECK_THROWS_AS(brute_force_solutions(fig2, height_algebra(3), 100), SizeCapError);
  Algebra wrong_sig = make_algebra_by(successor_sig(), FinSet::ordinal(2),
                                      [](const FElem&) { return 0; });
  CHECK_THROWS_AS(hylo(fig2, wrong_sig), DomainMismatchError);
}

TEST_CASE("guided morphism search agrees with the naive filter") {
  std::mt19937_64 rng(5);
  std::vector<Signature> sigs = {cherry_sig(), successor_sig(), Signature::powerset()};
  for (const Signature& sig : sigs) {
    for (int trial = 0; trial < 40; ++trial) {
      int n = static_cast<int>(rng() % 4);
      int m = static_cast<int>(rng() % 4);
      auto pick = [&](int sz) {
        FinSet carrier = FinSet::ordinal(sz);
        FObj f = apply_obj(sig, carrier);
        std::vector<FElem> st;
        for (int i = 0; i < sz; ++i)
          st.push_back(f.decode(static_cast<int>(rng() % static_cast<std::uint64_t>(f.carrier().size()))));
        return Coalgebra{sig, carrier, std::move(st)};
      };
      Coalgebra a = pick(n), b = pick(m);
      CHECK(coalgebra_morphisms(a, b) == coalgebra_morphisms_naive(a, b));
    }
  }
}
