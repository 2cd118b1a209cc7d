#include "unchained/construction.hpp"

#include <algorithm>
#include <numeric>

#include "unchained/parallel.hpp"

namespace unchained {

FinrecDiagram::FinrecDiagram(Signature sig, std::vector<Coalgebra> objects)
    : sig_(std::move(sig)), objects_(std::move(objects)) {
  rec_.reserve(objects_.size());
  for (const Coalgebra& c : objects_) {
    if (c.sig != sig_) throw DomainMismatchError("diagram object over a different signature");
    rec_.push_back(is_recursive(c));
    if (!rec_.back().recursive)
      throw InvalidValueError("diagram object is not recursive");
  }
  idx_.reserve(objects_.size());
  for (const Coalgebra& c : objects_) idx_.emplace_back(c);
}

void FinrecDiagram::for_each_hom(int src, int dst,
                                 const std::function<void(const std::vector<int>&)>& cb) const {
  for_each_coalgebra_morphism(objects_[static_cast<std::size_t>(src)],
                              rec_[static_cast<std::size_t>(src)],
                              idx_[static_cast<std::size_t>(dst)], cb);
}

std::vector<FinFn> FinrecDiagram::homs(int src, int dst) const {
  std::vector<std::vector<int>> tables;
  for_each_hom(src, dst, [&](const std::vector<int>& t) { tables.push_back(t); });
  std::sort(tables.begin(), tables.end());
  std::vector<FinFn> out;
  out.reserve(tables.size());
  for (auto& t : tables)
    out.emplace_back(objects_[static_cast<std::size_t>(src)].carrier,
                     objects_[static_cast<std::size_t>(dst)].carrier, std::move(t));
  return out;
}

namespace {

/// Acyclicity of a successor relation given as per-state argument lists.
bool acyclic(const std::vector<std::vector<int>>& succ) {
  const int n = static_cast<int>(succ.size());
  thread_local std::vector<char> color;
  thread_local std::vector<std::pair<int, std::size_t>> stack;
  color.assign(static_cast<std::size_t>(n), 0); // 0 white, 1 gray, 2 black
  for (int s = 0; s < n; ++s) {
    if (color[static_cast<std::size_t>(s)] != 0) continue;
    stack.clear();
    stack.emplace_back(s, 0);
    color[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      const auto& vs = succ[static_cast<std::size_t>(v)];
      if (i < vs.size()) {
        int u = vs[i++];
        if (color[static_cast<std::size_t>(u)] == 1) return false;
        if (color[static_cast<std::size_t>(u)] == 0) {
          color[static_cast<std::size_t>(u)] = 1;
          stack.emplace_back(u, 0);
        }
      } else {
        color[static_cast<std::size_t>(v)] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

std::uint64_t pow_capped(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    r *= base;
    if (base == 0) return exp == 0 ? 1 : 0;
  }
  return r;
}

} // namespace

std::vector<Coalgebra> enumerate_finrec(const Signature& sig, int bound, std::uint64_t cap) {
  if (bound < 0) throw InvalidValueError("bound must be >= 0");
  std::vector<Coalgebra> out;
  for (int k = 0; k <= bound; ++k) {
    FinSet carrier = FinSet::ordinal(k);
    FObj f = apply_obj(sig, carrier, cap);
    const int fsize = f.carrier().size();

    // structure space: one F-element per state
    std::uint64_t total = pow_capped(static_cast<std::uint64_t>(fsize), k, cap);
    check_cap(total, cap);
    if (fsize == 0 && k > 0) continue; // no structure maps on a nonempty carrier

    // per F-element successor lists, shared across candidates
    std::vector<std::vector<int>> succ_of(static_cast<std::size_t>(fsize));
    for (int i = 0; i < fsize; ++i) {
      auto args = f.decode(i).args;
      std::sort(args.begin(), args.end());
      args.erase(std::unique(args.begin(), args.end()), args.end());
      succ_of[static_cast<std::size_t>(i)] = std::move(args);
    }

    std::vector<std::uint64_t> hits = par::filter_indices(total, [&](std::uint64_t idx) {
      thread_local std::vector<std::vector<int>> succ;
      succ.assign(static_cast<std::size_t>(k), {});
      std::uint64_t rest = idx;
      for (int v = 0; v < k; ++v) {
        succ[static_cast<std::size_t>(v)] =
            succ_of[static_cast<std::size_t>(rest % static_cast<std::uint64_t>(fsize))];
        rest /= static_cast<std::uint64_t>(fsize);
      }
      return acyclic(succ);
    });

    for (std::uint64_t idx : hits) {
      std::vector<FElem> st(static_cast<std::size_t>(k));
      std::uint64_t rest = idx;
      for (int v = 0; v < k; ++v) {
        st[static_cast<std::size_t>(v)] =
            f.decode(static_cast<int>(rest % static_cast<std::uint64_t>(fsize)));
        rest /= static_cast<std::uint64_t>(fsize);
      }
      out.push_back(Coalgebra{sig, carrier, std::move(st)});
    }
  }
  return out;
}

namespace {

/// Canonical key: least relabeled raw-structure vector over all carrier
/// permutations. Used only for the optional isomorphism dedup.
std::vector<std::uint64_t> canonical_key(const Coalgebra& c, const FObj& f) {
  const int n = c.carrier.size();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint64_t> best;
  do {
    std::vector<std::uint64_t> key(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      FElem relabeled = map_felem_table(perm, c.structure[static_cast<std::size_t>(v)]);
      key[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = f.raw_index(relabeled);
    }
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (n == 0) best = {};
  return best;
}

} // namespace

InitialTruncation build_truncation(const Signature& sig, int bound,
                                   const TruncationOptions& opts) {
  std::vector<Coalgebra> objects = enumerate_finrec(sig, bound, opts.cap);
  if (opts.dedup_isomorphic) {
    std::vector<Coalgebra> kept;
    std::vector<std::pair<int, std::vector<std::uint64_t>>> seen; // (carrier size, key)
    for (Coalgebra& c : objects) {
      FObj f = apply_obj(sig, c.carrier, opts.cap);
      auto key = std::make_pair(c.carrier.size(), canonical_key(c, f));
      if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
        seen.push_back(std::move(key));
        kept.push_back(std::move(c));
      }
    }
    objects = std::move(kept);
  }

  auto diagram = std::make_shared<FinrecDiagram>(sig, std::move(objects));
  const int nobj = diagram->size();

  std::vector<int> offsets(static_cast<std::size_t>(nobj) + 1, 0);
  for (int i = 0; i < nobj; ++i)
    offsets[static_cast<std::size_t>(i) + 1] =
        offsets[static_cast<std::size_t>(i)] + diagram->object(i).carrier.size();
  const int total = offsets.back();
  check_cap(static_cast<std::uint64_t>(total), opts.cap);

  // quotient by x ~ h(x) for every morphism h between any two objects;
  // morphisms are streamed per source object, unions merged under a lock
  Partition partition(total);
  par::parallel_for(static_cast<std::uint64_t>(nobj), [&](std::uint64_t iu) {
    const int i = static_cast<int>(iu);
    std::vector<std::pair<int, int>> buffer;
    buffer.reserve(1 << 16);
    auto flush = [&] {
#ifdef _OPENMP
#pragma omp critical(unchained_truncation_union)
#endif
      {
        for (auto [a, b] : buffer) partition.unite(a, b);
      }
      buffer.clear();
    };
    const int off_i = offsets[static_cast<std::size_t>(i)];
    const int size_i = diagram->object(i).carrier.size();
    for (int j = 0; j < nobj; ++j) {
      const int off_j = offsets[static_cast<std::size_t>(j)];
      diagram->for_each_hom(i, j, [&](const std::vector<int>& t) {
        for (int v = 0; v < size_i; ++v)
          buffer.emplace_back(off_i + v, off_j + t[static_cast<std::size_t>(v)]);
        if (buffer.size() >= (1u << 16)) flush();
      });
    }
    flush();
  });
  partition.normalize();

  CoalgColimit colim = assemble_coalg_colimit(diagram->objects(), std::move(partition), opts.cap);

  InitialTruncation t;
  t.sig = sig;
  t.bound = bound;
  t.diagram = diagram;
  t.carrier = colim.coalg.carrier;
  t.fA = apply_obj(sig, t.carrier, opts.cap);
  t.alpha = coalgebra_structure_fn(colim.coalg, t.fA);
  t.injections = std::move(colim.injections);
  t.offsets = std::move(colim.offsets);
  t.partition = std::move(colim.partition);
  t.raw_to_apex = std::move(colim.raw_to_apex);
  t.apex_to_raw = std::move(colim.apex_to_raw);

  if (!t.alpha.is_injective())
    throw VerificationError("induced structure alpha is not injective");
  for (int i = 0; i < nobj; ++i)
    if (!is_coalgebra_morphism(t.injections[static_cast<std::size_t>(i)], diagram->object(i),
                               colim.coalg))
      throw VerificationError("colimit injection is not a coalgebra morphism");
  return t;
}

Coalgebra InitialTruncation::as_coalgebra() const {
  std::vector<FElem> st(static_cast<std::size_t>(carrier.size()));
  for (int i = 0; i < carrier.size(); ++i) st[static_cast<std::size_t>(i)] = fA.decode(alpha(i));
  return Coalgebra{sig, carrier, std::move(st)};
}

Coalgebra InitialTruncation::fa_coalgebra() const {
  std::vector<FElem> st(static_cast<std::size_t>(fA.carrier().size()));
  for (int i = 0; i < fA.carrier().size(); ++i)
    st[static_cast<std::size_t>(i)] = map_felem(alpha, fA.decode(i));
  return Coalgebra{sig, fA.carrier(), std::move(st)};
}

std::vector<int> cata_all(const TermPool& pool, const Algebra& a) {
  std::vector<int> val(static_cast<std::size_t>(pool.node_count()));
  for (TermId t = 0; t < pool.node_count(); ++t) {
    // children are interned before parents, so ascending ids evaluate bottom-up
    FElem e;
    e.op = pool.op_of(t);
    e.args.reserve(pool.children_of(t).size());
    for (TermId c : pool.children_of(t)) e.args.push_back(val[static_cast<std::size_t>(c)]);
    if (e.op == FElem::kSubset) {
      std::sort(e.args.begin(), e.args.end());
      e.args.erase(std::unique(e.args.begin(), e.args.end()), e.args.end());
    }
    val[static_cast<std::size_t>(t)] = a.eval(e);
  }
  return val;
}

int cata(const TermPool& pool, const Algebra& a, TermId t) {
  return cata_all(pool, a)[static_cast<std::size_t>(t)];
}

OraclePartitionResult oracle_partition(const InitialTruncation& t) {
  OraclePartitionResult res(t.sig);
  res.colimit_classes = t.carrier.size();

  const FinrecDiagram& d = *t.diagram;
  res.raw_terms.assign(static_cast<std::size_t>(t.partition.size()), -1);
  for (int i = 0; i < d.size(); ++i) {
    std::vector<TermId> terms = unfold_all(res.pool, d.object(i));
    for (int v = 0; v < d.object(i).carrier.size(); ++v)
      res.raw_terms[static_cast<std::size_t>(t.raw_index(i, v))] =
          terms[static_cast<std::size_t>(v)];
  }

  res.class_term.assign(static_cast<std::size_t>(t.carrier.size()), -1);
  std::vector<int> term_class(static_cast<std::size_t>(res.pool.node_count()), -1);
  res.agree = true;
  std::vector<char> term_seen(static_cast<std::size_t>(res.pool.node_count()), 0);
  for (std::size_t raw = 0; raw < res.raw_terms.size(); ++raw) {
    int cls = t.raw_to_apex[raw];
    TermId tid = res.raw_terms[raw];
    if (!term_seen[static_cast<std::size_t>(tid)]) {
      term_seen[static_cast<std::size_t>(tid)] = 1;
      ++res.term_classes;
    }
    TermId& ct = res.class_term[static_cast<std::size_t>(cls)];
    if (ct == -1)
      ct = tid;
    else if (ct != tid && res.agree) {
      res.agree = false;
      res.mismatch = "colimit class " + t.carrier.name(cls) + " contains distinct unfoldings " +
                     res.pool.to_string(ct) + " and " + res.pool.to_string(tid);
    }
    int& tc = term_class[static_cast<std::size_t>(tid)];
    if (tc == -1)
      tc = cls;
    else if (tc != cls && res.agree) {
      res.agree = false;
      res.mismatch = "unfolding " + res.pool.to_string(tid) + " appears in distinct classes " +
                     t.carrier.name(tc) + " and " + t.carrier.name(cls);
    }
  }
  return res;
}

OraclePartitionResult oracle_partition(const Signature& sig, int bound,
                                       const TruncationOptions& opts) {
  return oracle_partition(build_truncation(sig, bound, opts));
}

FinFn universal_fold(const InitialTruncation& t, const Algebra& b) {
  if (b.sig != t.sig) throw DomainMismatchError("algebra over a different signature");
  const FinrecDiagram& d = *t.diagram;
  std::vector<int> v(static_cast<std::size_t>(t.carrier.size()), -1);
  for (int i = 0; i < d.size(); ++i) {
    FinFn hi = hylo(d.object(i), b);
    const FinFn& inj = t.injections[static_cast<std::size_t>(i)];
    for (int x = 0; x < d.object(i).carrier.size(); ++x) {
      int cls = inj(x);
      int val = hi(x);
      int& slot = v[static_cast<std::size_t>(cls)];
      if (slot == -1)
        slot = val;
      else if (slot != val)
        throw NotACoconeError("hylomorphisms disagree on colimit class " + t.carrier.name(cls));
    }
  }
  for (int i = 0; i < t.carrier.size(); ++i)
    if (v[static_cast<std::size_t>(i)] == -1)
      throw VerificationError("colimit class without witness");
  return FinFn(t.carrier, b.carrier, std::move(v));
}

FactorResult factor_coalg_hom(const InitialTruncation& t, const Coalgebra& b, const FinFn& h,
                              const FactorOptions& opts) {
  Coalgebra a_coalg = t.as_coalgebra();
  if (auto fail = coalgebra_morphism_failure(h, b, a_coalg))
    throw MorphismCheckError("h is not a coalgebra morphism into (A, alpha); fails at " + *fail);

  const FinrecDiagram& d = *t.diagram;
  FactorResult res;
  bool found = false;
  for (int j = 0; j < d.size() && !found; ++j) {
    const FinFn& pi = t.injections[static_cast<std::size_t>(j)];
    std::vector<std::vector<int>> allowed(static_cast<std::size_t>(b.carrier.size()));
    bool feasible = true;
    for (int v = 0; v < b.carrier.size() && feasible; ++v) {
      for (int y = 0; y < d.object(j).carrier.size(); ++y)
        if (pi(y) == h(v)) allowed[static_cast<std::size_t>(v)].push_back(y);
      feasible = !allowed[static_cast<std::size_t>(v)].empty();
    }
    if (!feasible) continue;
    auto sols = coalgebra_morphisms(b, d.object(j), &allowed, opts.cap);
    if (!sols.empty()) {
      res.object = j;
      res.factor = sols.front();
      found = true;
    }
  }
  if (!found)
    throw NoFactorizationError(
        "no coalgebra morphism factorization through any colimit injection (truncation too small)");

  if (opts.verify_unique) {
    for (int i = 0; i < d.size(); ++i) {
      auto sols = coalgebra_morphisms(d.object(i), a_coalg, nullptr, opts.cap);
      if (sols.size() != 1 || sols.front() != t.injections[static_cast<std::size_t>(i)])
        throw VerificationError("colimit injection is not the unique coalgebra morphism from object " +
                                std::to_string(i));
    }
    res.uniqueness_verified = true;
  }
  return res;
}

} // namespace unchained
