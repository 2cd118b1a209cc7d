// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "unchained/chain.hpp"
#include "unchained/coalgebra.hpp"
#include "unchained/construction.hpp"
#include "unchained/examples.hpp"
#include "unchained/iterate.hpp"
#include "unchained/parallel.hpp"

using namespace unchained;

namespace {

int g_failures = 0;

void run(int number, const std::string& name, const std::function<void()>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (error.empty()) {
    std::printf("[PASS] %2d %-58s (%.2fs)\n", number, name.c_str(), secs);
  } else {
    std::printf("[FAIL] %2d %-58s (%.2fs)\n           %s\n", number, name.c_str(), secs,
                error.c_str());
    ++g_failures;
  }
  std::fflush(stdout);
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

std::vector<Coalgebra> all_coalgebras(const Signature& sig, int n) {
  FinSet carrier = FinSet::ordinal(n);
  FObj f = apply_obj(sig, carrier);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(f.carrier().size());
  std::vector<Coalgebra> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<FElem> st(static_cast<std::size_t>(n));
    std::uint64_t rest = idx;
    for (int i = 0; i < n; ++i) {
      st[static_cast<std::size_t>(i)] =
          f.decode(static_cast<int>(rest % static_cast<std::uint64_t>(f.carrier().size())));
      rest /= static_cast<std::uint64_t>(f.carrier().size());
    }
    out.push_back(Coalgebra{sig, carrier, std::move(st)});
  }
  return out;
}

std::vector<Algebra> all_algebras(const Signature& sig, int m) {
  FinSet carrier = FinSet::ordinal(m);
  FObj f = apply_obj(sig, carrier);
  const int fs = f.carrier().size();
  std::uint64_t total = 1;
  for (int i = 0; i < fs; ++i) total *= static_cast<std::uint64_t>(m);
  if (m == 0 && fs > 0) total = 0;
  std::vector<Algebra> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<int> table(static_cast<std::size_t>(fs));
    std::uint64_t rest = idx;
    for (int i = 0; i < fs; ++i) {
      table[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(m));
      rest /= static_cast<std::uint64_t>(m);
    }
    out.push_back(Algebra{sig, carrier, f, std::move(table)});
  }
  return out;
}

// criterion 1: recursiveness <=> unique solutions, exhaustively at small scale
void criterion1() {
  Signature cherry = examples::cherry();
  std::vector<Algebra> algebras;
  for (int m = 1; m <= 2; ++m)
    for (Algebra& a : all_algebras(cherry, m)) algebras.push_back(std::move(a));
  require(algebras.size() == 33, "expected 1 + 32 algebras");
  int checked = 0;
  for (int n = 0; n <= 3; ++n) {
    for (const Coalgebra& c : all_coalgebras(cherry, n)) {
      bool rec = is_recursive(c).recursive;
      bool unique_everywhere = true;
      for (const Algebra& a : algebras)
        if (brute_force_solutions(c, a).size() != 1) {
          unique_everywhere = false;
          break;
        }
      require(rec == unique_everywhere,
              "disagreement on a coalgebra with carrier " + std::to_string(n));
      if (!rec) {
        // diagnosis: some algebra admits zero or several solutions
        bool witnessed = false;
        for (const Algebra& a : algebras)
          if (brute_force_solutions(c, a).size() != 1) witnessed = true;
        require(witnessed, "cyclic coalgebra without a witnessing algebra");
      }
      ++checked;
    }
  }
  require(checked == 1 + 2 + 25 + 1000, "expected 1028 coalgebras");
}

// criterion 2: the six-state example against the height algebra
void criterion2() {
  examples::HeightExample ex = examples::height_example();
  FinFn h = hylo(ex.coalg, ex.algebra);
  std::map<std::string, std::string> expected{{"x", "0"}, {"y", "0"}, {"z", "0"},
                                              {"u", "1"}, {"w", "1"}, {"v", "2"}};
  for (const auto& [state, value] : expected)
    require(h.apply_name(state) == value, "h(" + state + ") != " + value);
  require(is_coalg_to_alg_morphism(h, ex.coalg, ex.algebra), "pentagon fails");
}

// criterion 3: divide-and-conquer sort equals the reference sort on all
// lists of length <= 5 over a 3-letter alphabet
void criterion3() {
  examples::QuicksortExample qs = examples::quicksort_example(3, 5, 500000);
  FinFn sorted = hylo(qs.divide, qs.merge);
  int count = 0;
  for (int i = 0; i < qs.lists.size(); ++i) {
    std::vector<int> letters = examples::list_letters(qs.lists.name(i));
    std::vector<int> reference = letters;
    std::sort(reference.begin(), reference.end());
    require(sorted.apply_name(qs.lists.name(i)) == examples::list_name(reference),
            "mismatch on " + qs.lists.name(i));
    ++count;
  }
  require(count == 364, "expected 364 lists");
}

// criterion 4: chain sizes 0,1,2,5,26; recursive stages; stage terms =
// terms of depth < k
void criterion4() {
  ChainData cd = build_chain(examples::cherry(), 4);
  std::vector<int> sizes;
  for (const auto& s : cd.stages) sizes.push_back(s.size());
  require(sizes == std::vector<int>{0, 1, 2, 5, 26}, "chain sizes differ");
  ChainAnalysisOptions opts;
  opts.check_truncation = false;
  ChainReport rep = analyze_chain(cd, opts);
  for (bool rec : rep.stage_recursive) require(rec, "non-recursive stage");
  require(rep.term_counts_match, "stage terms differ from depth-bounded terms");
  require(!rep.converges_at.has_value(), "unexpected convergence");
}

// criterion 5: colimit partition equals the unfolding partition
void criterion5() {
  for (int bound = 0; bound <= 3; ++bound) {
    OraclePartitionResult rs = oracle_partition(examples::successor(), bound);
    require(rs.agree, "successor bound " + std::to_string(bound) + ": " + rs.mismatch);
    OraclePartitionResult rc = oracle_partition(examples::cherry(), bound);
    require(rc.agree, "cherry bound " + std::to_string(bound) + ": " + rc.mismatch);
  }
}

// criterion 6: |A_n| = n for the successor functor; alpha injective for all
// tested signatures and bounds
void criterion6() {
  for (int n = 1; n <= 5; ++n) {
    InitialTruncation t = build_truncation(examples::successor(), n);
    require(t.carrier.size() == n,
            "successor |A_" + std::to_string(n) + "| = " + std::to_string(t.carrier.size()));
    require(t.alpha.is_injective(), "alpha not injective");
  }
  std::vector<std::pair<Signature, int>> tested = {
      {examples::cherry(), 3},
      {examples::constants(3), 4},
      {Signature::polynomial({}), 4},
      {Signature::powerset(), 3},
      {Signature::polynomial({{"z", 0}, {"a", 1}, {"b", 1}}), 2},
  };
  for (const auto& [sig, maxb] : tested)
    for (int n = 0; n <= maxb; ++n)
      require(build_truncation(sig, n).alpha.is_injective(), "alpha not injective");
}

// criterion 7: universal_fold = cata o unfold pointwise, >= 20 combinations
void criterion7() {
  struct Case {
    Signature sig;
    int bound;
    Algebra algebra;
  };
  std::vector<Case> cases;
  Signature succ = examples::successor();
  Signature cherry = examples::cherry();
  Signature k3 = examples::constants(3);
  Algebra parity = make_algebra_by(succ, FinSet::ordinal(2),
                                   [](const FElem& e) { return e.op == 0 ? 0 : 1 - e.args[0]; });
  Algebra mod3 = make_algebra_by(succ, FinSet::ordinal(3), [](const FElem& e) {
    return e.op == 0 ? 0 : (e.args[0] + 1) % 3;
  });
  for (int b = 1; b <= 4; ++b) {
    cases.push_back({succ, b, parity});
    cases.push_back({succ, b, mod3});
  }
  Algebra height3 = make_algebra_by(cherry, FinSet::ordinal(4), [](const FElem& e) {
    return e.op == 0 ? 0 : std::min(1 + std::max(e.args[0], e.args[1]), 3);
  });
  Algebra height1 = make_algebra_by(cherry, FinSet::ordinal(2), [](const FElem& e) {
    return e.op == 0 ? 0 : std::min(1 + std::max(e.args[0], e.args[1]), 1);
  });
  for (int b = 1; b <= 3; ++b) {
    cases.push_back({cherry, b, height3});
    cases.push_back({cherry, b, height1});
  }
  Algebra pick = make_algebra_by(k3, FinSet::ordinal(2),
                                 [](const FElem& e) { return e.op == 2 ? 1 : 0; });
  Algebra single = make_algebra_by(k3, FinSet::ordinal(1), [](const FElem&) { return 0; });
  for (int b = 1; b <= 3; ++b) {
    cases.push_back({k3, b, pick});
    cases.push_back({k3, b, single});
  }
  Algebra psize = make_algebra_by(Signature::powerset(), FinSet::ordinal(2), [](const FElem& e) {
    return static_cast<int>(e.args.size()) % 2;
  });
  for (int b = 1; b <= 2; ++b) cases.push_back({Signature::powerset(), b, psize});

  require(cases.size() >= 20, "need at least 20 combinations");
  for (const Case& c : cases) {
    InitialTruncation t = build_truncation(c.sig, c.bound);
    OraclePartitionResult oc = oracle_partition(t);
    require(oc.agree, "oracle disagrees: " + oc.mismatch);
    FinFn fold = universal_fold(t, c.algebra);
    std::vector<int> values = cata_all(oc.pool, c.algebra);
    for (std::size_t raw = 0; raw < oc.raw_terms.size(); ++raw)
      require(fold(t.raw_to_apex[raw]) ==
                  values[static_cast<std::size_t>(oc.raw_terms[raw])],
              "fold differs from catamorphism after unfolding");
  }
}

// criterion 8: convergent end-to-end for the constants-only signature
void criterion8() {
  Signature k3 = examples::constants(3);
  MainTheoremResult r = main_theorem_check(k3, 3);
  require(r.status == MainTheoremResult::Status::Bijective, "expected a bijective alpha");
  require(r.carrier_size == 3, "expected an initial algebra of size 3");
  require(r.tester.has_value(), "missing initiality tester");
  int tested = 0;
  for (int m = 1; m <= 2; ++m)
    for (const Algebra& b : all_algebras(k3, m)) {
      FinFn u = r.tester->run(b); // throws unless unique
      require(is_algebra_morphism(u, r.tester->algebra, b), "not an algebra morphism");
      ++tested;
    }
  require(tested == 1 + 8, "expected 9 algebras");
}

// criterion 9: the E-construction invariants on a convergent instance
void criterion9() {
  InitialTruncation t = build_truncation(examples::constants(3), 3);
  EColimitResult ec = iterate_colimit_check(t, 1);
  const EDiagram& ed = ec.ed;
  require(ed.size() > 0, "empty E-diagram");
  // recursiveness and inj checks rerun explicitly (also asserted on build)
  Coalgebra fa = ed.fa_coalgebra();
  for (int i = 0; i < ed.size(); ++i) {
    require(is_recursive(ed.object(i).coalg).recursive, "E(t) not recursive");
    require(is_coalgebra_morphism(ed.object(i).inj, ed.object(i).coalg, fa),
            "inj_t not a coalgebra morphism");
  }
  require(ed.lifted_morphisms_verified(), "lifted morphisms unverified");

  // the colimit cocone reduces without independence failures
  FinSet classes = FinSet::ordinal(ec.class_count);
  ECocone k{classes, {}};
  for (int i = 0; i < ed.size(); ++i) {
    const EObject& e = ed.object(i);
    std::vector<int> tbl(static_cast<std::size_t>(e.coalg.carrier.size()));
    for (int x = 0; x < e.coalg.carrier.size(); ++x)
      tbl[static_cast<std::size_t>(x)] = ec.raw_to_class[static_cast<std::size_t>(
          ec.offsets[static_cast<std::size_t>(i)] + x)];
    k.legs.emplace_back(e.coalg.carrier, classes, std::move(tbl));
  }
  ReducedCocone red = reduce_cocone(ed, k);
  require(red.independent(), "independence failure on the colimit cocone");
  require(red.slice_cocone(), "reduced legs fail the slice cocone laws");

  // the two cocone-morphism conditions agree for randomized v
  std::mt19937_64 rng(20240813);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> tbl(static_cast<std::size_t>(ed.fA().carrier().size()));
    for (auto& x : tbl) x = static_cast<int>(rng() % static_cast<std::uint64_t>(classes.size()));
    FinFn v(ed.fA().carrier(), classes, std::move(tbl));
    LiftCheckResult res = lift_cocone_morphism_check(ed, k, v);
    require(res.slice_morphism == res.e_morphism, "cocone-morphism conditions disagree");
    require(res.detail.empty(), res.detail);
  }
}

// criterion 10: colim E compared with F(A_n) at convergent instances
void criterion10() {
  InitialTruncation tk = build_truncation(examples::constants(3), 3);
  EColimitResult ek = iterate_colimit_check(tk, 1);
  require(ek.verdict == EColimitResult::Verdict::Bijective, "constants: not bijective");

  InitialTruncation te = build_truncation(Signature::polynomial({}), 1);
  EColimitResult ee = iterate_colimit_check(te, 1);
  require(ee.verdict == EColimitResult::Verdict::Bijective, "empty signature: not bijective");
}

} // namespace

int main() {
  std::printf("acceptance suite (threads: %d)\n", par::max_threads());
  run(1, "decision procedure agrees with solution uniqueness", criterion1);
  run(2, "six-state height regression", criterion2);
  run(3, "divide-and-conquer sort on all lists <= 5 over 3 letters", criterion3);
  run(4, "chain sizes, recursiveness, depth-bounded terms", criterion4);
  run(5, "truncated colimit equals the unfolding oracle", criterion5);
  run(6, "|A_n| = n for successor; alpha injective everywhere", criterion6);
  run(7, "universal fold equals catamorphism after unfolding", criterion7);
  run(8, "convergent end-to-end initial algebra (3 constants)", criterion8);
  run(9, "E-construction: recursive objects, cocone reduction, lifting", criterion9);
  run(10, "colim E isomorphic to F(A_n) at convergent instances", criterion10);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
