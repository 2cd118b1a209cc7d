#include "unchained/coalgebra.hpp"

#include <algorithm>
#include <numeric>

#include "unchained/parallel.hpp"

namespace unchained {

Coalgebra make_coalgebra(Signature sig, FinSet carrier, std::vector<FElem> structure) {
  if (static_cast<int>(structure.size()) != carrier.size())
    throw InvalidValueError("coalgebra structure must be total on the carrier");
  const int n = carrier.size();
  for (auto& e : structure) {
    if (sig.is_powerset()) {
      if (e.op != FElem::kSubset) throw InvalidValueError("expected subset structure value");
      std::sort(e.args.begin(), e.args.end());
      e.args.erase(std::unique(e.args.begin(), e.args.end()), e.args.end());
    } else {
      if (e.op < 0 || e.op >= sig.op_count()) throw InvalidValueError("unknown operation in structure");
      if (static_cast<int>(e.args.size()) != sig.op(e.op).arity)
        throw InvalidValueError("arity mismatch in structure");
    }
    for (int a : e.args)
      if (a < 0 || a >= n) throw InvalidValueError("structure argument outside carrier");
  }
  return Coalgebra{std::move(sig), std::move(carrier), std::move(structure)};
}

FinFn coalgebra_structure_fn(const Coalgebra& c, const FObj& fobj) {
  std::vector<int> t(static_cast<std::size_t>(c.carrier.size()));
  for (int i = 0; i < c.carrier.size(); ++i)
    t[static_cast<std::size_t>(i)] = fobj.encode(c.structure[static_cast<std::size_t>(i)]);
  return FinFn(c.carrier, fobj.carrier(), std::move(t));
}

Algebra make_algebra(Signature sig, FinSet carrier, std::vector<int> structure_table,
                     std::uint64_t cap) {
  FObj f = apply_obj(sig, carrier, cap);
  if (structure_table.size() != static_cast<std::size_t>(f.carrier().size()))
    throw InvalidValueError("algebra structure must be total on F(carrier)");
  for (int v : structure_table)
    if (v < 0 || v >= carrier.size()) throw InvalidValueError("algebra value outside carrier");
  return Algebra{std::move(sig), std::move(carrier), std::move(f), std::move(structure_table)};
}

Algebra make_algebra_by(Signature sig, FinSet carrier, const std::function<int(const FElem&)>& eval,
                        std::uint64_t cap) {
  FObj f = apply_obj(sig, carrier, cap);
  std::vector<int> table(static_cast<std::size_t>(f.carrier().size()));
  for (int i = 0; i < f.carrier().size(); ++i) {
    int v = eval(f.decode(i));
    if (v < 0 || v >= carrier.size()) throw InvalidValueError("algebra value outside carrier");
    table[static_cast<std::size_t>(i)] = v;
  }
  return Algebra{std::move(sig), std::move(carrier), std::move(f), std::move(table)};
}

std::vector<std::vector<int>> successor_graph(const Coalgebra& c) {
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(c.carrier.size()));
  for (int v = 0; v < c.carrier.size(); ++v) {
    auto& s = succ[static_cast<std::size_t>(v)];
    s = c.structure[static_cast<std::size_t>(v)].args;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return succ;
}

RecResult is_recursive(const Coalgebra& c) {
  const int n = c.carrier.size();
  auto succ = successor_graph(c);
  RecResult res;
  res.topo.reserve(static_cast<std::size_t>(n));
  enum : char { White, Gray, Black };
  std::vector<char> color(static_cast<std::size_t>(n), White);
  std::vector<std::pair<int, std::size_t>> stack; // (state, next child index)
  for (int s = 0; s < n; ++s) {
    if (color[static_cast<std::size_t>(s)] != White) continue;
    stack.clear();
    stack.emplace_back(s, 0);
    color[static_cast<std::size_t>(s)] = Gray;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      const auto& vs = succ[static_cast<std::size_t>(v)];
      if (i < vs.size()) {
        int u = vs[i++];
        if (color[static_cast<std::size_t>(u)] == Gray) {
          // cycle: path from u's stack frame to the top, then back to u
          res.recursive = false;
          std::size_t start = 0;
          while (stack[start].first != u) ++start;
          for (std::size_t k = start; k < stack.size(); ++k) res.cycle.push_back(stack[k].first);
          return res;
        }
        if (color[static_cast<std::size_t>(u)] == White) {
          color[static_cast<std::size_t>(u)] = Gray;
          stack.emplace_back(u, 0);
        }
      } else {
        color[static_cast<std::size_t>(v)] = Black;
        res.topo.push_back(v);
        stack.pop_back();
      }
    }
  }
  res.recursive = true;
  return res;
}

std::vector<std::string> cycle_names(const Coalgebra& c, const RecResult& r) {
  std::vector<std::string> out;
  out.reserve(r.cycle.size());
  for (int v : r.cycle) out.push_back(c.carrier.name(v));
  return out;
}

namespace {

void require_same_sig(const Signature& a, const Signature& b) {
  if (a != b) throw DomainMismatchError("signature mismatch");
}

} // namespace

bool is_coalgebra_morphism(const FinFn& h, const Coalgebra& src, const Coalgebra& dst) {
  return !coalgebra_morphism_failure(h, src, dst).has_value();
}

std::optional<std::string> coalgebra_morphism_failure(const FinFn& h, const Coalgebra& src,
                                                      const Coalgebra& dst) {
  require_same_sig(src.sig, dst.sig);
  if (h.dom() != src.carrier || h.cod() != dst.carrier)
    throw DomainMismatchError("morphism carriers do not match");
  for (int v = 0; v < src.carrier.size(); ++v) {
    FElem lhs = dst.structure[static_cast<std::size_t>(h(v))];
    FElem rhs = map_felem(h, src.structure[static_cast<std::size_t>(v)]);
    if (!(lhs == rhs)) return src.carrier.name(v);
  }
  return std::nullopt;
}

bool is_algebra_morphism(const FinFn& h, const Algebra& src, const Algebra& dst) {
  require_same_sig(src.sig, dst.sig);
  if (h.dom() != src.carrier || h.cod() != dst.carrier)
    throw DomainMismatchError("morphism carriers do not match");
  for (int i = 0; i < src.fcarrier.carrier().size(); ++i) {
    const FElem& e = src.fcarrier.decode(i);
    if (h(src.structure[static_cast<std::size_t>(i)]) != dst.eval(map_felem(h, e))) return false;
  }
  return true;
}

bool is_coalg_to_alg_morphism(const FinFn& s, const Coalgebra& c, const Algebra& a) {
  require_same_sig(c.sig, a.sig);
  if (s.dom() != c.carrier || s.cod() != a.carrier)
    throw DomainMismatchError("morphism carriers do not match");
  for (int v = 0; v < c.carrier.size(); ++v)
    if (s(v) != a.eval(map_felem(s, c.structure[static_cast<std::size_t>(v)]))) return false;
  return true;
}

FinFn hylo(const Coalgebra& c, const Algebra& a) {
  require_same_sig(c.sig, a.sig);
  RecResult rec = is_recursive(c);
  if (!rec.recursive) throw NotRecursiveError(cycle_names(c, rec));
  std::vector<int> h(static_cast<std::size_t>(c.carrier.size()), -1);
  for (int v : rec.topo)
    h[static_cast<std::size_t>(v)] = a.eval(map_felem_table(h, c.structure[static_cast<std::size_t>(v)]));
  return FinFn(c.carrier, a.carrier, std::move(h));
}

std::vector<FinFn> brute_force_solutions(const Coalgebra& c, const Algebra& a, std::uint64_t cap) {
  require_same_sig(c.sig, a.sig);
  const int n = c.carrier.size();
  const int m = a.carrier.size();
  if (m == 0 && n > 0) return {};
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (m != 0 && total > cap / static_cast<std::uint64_t>(m)) throw SizeCapError(cap + 1, cap);
    total *= static_cast<std::uint64_t>(m);
  }
  check_cap(total, cap);

  auto decode_table = [&](std::uint64_t idx) {
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      t[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::uint64_t>(m));
      idx /= static_cast<std::uint64_t>(m);
    }
    return t;
  };

  std::vector<std::uint64_t> hits = par::filter_indices(total, [&](std::uint64_t idx) {
    thread_local std::vector<int> t;
    t.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      t[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::uint64_t>(m));
      idx /= static_cast<std::uint64_t>(m);
    }
    for (int v = 0; v < n; ++v)
      if (t[static_cast<std::size_t>(v)] !=
          a.structure[static_cast<std::size_t>(
              a.fcarrier.encode_mapped(c.structure[static_cast<std::size_t>(v)], t))])
        return false;
    return true;
  });

  std::vector<FinFn> out;
  out.reserve(hits.size());
  for (std::uint64_t idx : hits) out.emplace_back(c.carrier, a.carrier, decode_table(idx));
  std::sort(out.begin(), out.end(),
            [](const FinFn& x, const FinFn& y) { return x.table() < y.table(); });
  return out;
}

Coalgebra iterate(const Coalgebra& c, std::uint64_t cap) {
  FObj f = apply_obj(c.sig, c.carrier, cap);
  std::vector<int> enc(static_cast<std::size_t>(c.carrier.size()));
  for (int v = 0; v < c.carrier.size(); ++v)
    enc[static_cast<std::size_t>(v)] = f.encode(c.structure[static_cast<std::size_t>(v)]);
  std::vector<FElem> structure(static_cast<std::size_t>(f.carrier().size()));
  for (int i = 0; i < f.carrier().size(); ++i)
    structure[static_cast<std::size_t>(i)] = map_felem_table(enc, f.decode(i));
  return Coalgebra{c.sig, f.carrier(), std::move(structure)};
}

SandwichReport sandwich_transfer(const Coalgebra& r, const Coalgebra& b, const FinFn& h,
                                 const FinFn& g, std::uint64_t cap) {
  require_same_sig(r.sig, b.sig);
  Coalgebra fr = iterate(r, cap);
  if (auto fail = coalgebra_morphism_failure(h, r, b))
    throw HypothesisError("h is not a coalgebra morphism (R,r)->(B,b); fails at " + *fail);
  if (auto fail = coalgebra_morphism_failure(g, b, fr))
    throw HypothesisError("g is not a coalgebra morphism (B,b)->(FR,Fr); fails at " + *fail);
  // b = Fh o g, pointwise over B
  FObj fr_obj = apply_obj(r.sig, r.carrier, cap);
  for (int v = 0; v < b.carrier.size(); ++v) {
    FElem lhs = b.structure[static_cast<std::size_t>(v)];
    FElem rhs = map_felem(h, fr_obj.decode(g(v)));
    if (!(lhs == rhs))
      throw HypothesisError("b != Fh o g at " + b.carrier.name(v));
  }
  SandwichReport rep;
  rep.r_recursive = is_recursive(r).recursive;
  if (rep.r_recursive) {
    rep.b_recursive = is_recursive(b).recursive;
    if (!rep.b_recursive)
      throw VerificationError("sandwich hypotheses hold and (R,r) is recursive, "
                              "but (B,b) is not: implementation bug");
  } else {
    rep.b_recursive = is_recursive(b).recursive;
  }
  return rep;
}

CoalgColimit assemble_coalg_colimit(const std::vector<Coalgebra>& objects, Partition partition,
                                    std::uint64_t cap) {
  if (objects.empty()) throw InvalidValueError("colimit of an empty diagram of coalgebras");
  const Signature& sig = objects.front().sig;
  for (const auto& o : objects) require_same_sig(sig, o.sig);

  std::vector<int> offsets(objects.size() + 1, 0);
  for (std::size_t i = 0; i < objects.size(); ++i)
    offsets[i + 1] = offsets[i] + objects[i].carrier.size();
  const int total = offsets.back();
  if (partition.size() != total) throw InvalidValueError("partition does not match coproduct");
  partition.normalize();

  // apex carrier: class representatives named "<object>:<element>"
  std::vector<int> reps = partition.representatives();
  std::vector<std::string> names;
  names.reserve(reps.size());
  auto locate = [&](int raw) {
    int obj = static_cast<int>(std::upper_bound(offsets.begin(), offsets.end(), raw) -
                               offsets.begin()) - 1;
    return std::pair<int, int>(obj, raw - offsets[static_cast<std::size_t>(obj)]);
  };
  for (int r : reps) {
    auto [obj, local] = locate(r);
    names.push_back(std::to_string(obj) + ":" + objects[static_cast<std::size_t>(obj)].carrier.name(local));
  }
  FinSet apex = FinSet::from_names(std::move(names));
  check_cap(static_cast<std::uint64_t>(apex.size()), cap);

  std::vector<int> rep_to_apex(static_cast<std::size_t>(total), -1);
  std::vector<std::pair<int, int>> apex_to_raw(static_cast<std::size_t>(apex.size()));
  for (int r : reps) {
    auto [obj, local] = locate(r);
    int idx = apex.index_of(std::to_string(obj) + ":" +
                            objects[static_cast<std::size_t>(obj)].carrier.name(local));
    rep_to_apex[static_cast<std::size_t>(r)] = idx;
    apex_to_raw[static_cast<std::size_t>(idx)] = {obj, local};
  }
  std::vector<int> raw_to_apex(static_cast<std::size_t>(total));
  for (int raw = 0; raw < total; ++raw)
    raw_to_apex[static_cast<std::size_t>(raw)] =
        rep_to_apex[static_cast<std::size_t>(partition.find(raw))];

  std::vector<FinFn> injections;
  injections.reserve(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    std::vector<int> t(static_cast<std::size_t>(objects[i].carrier.size()));
    for (int v = 0; v < objects[i].carrier.size(); ++v)
      t[static_cast<std::size_t>(v)] = raw_to_apex[static_cast<std::size_t>(offsets[i] + v)];
    injections.emplace_back(objects[i].carrier, apex, std::move(t));
  }

  // induced structure: unique map making every injection a coalgebra
  // morphism; consistency across class members is verified pointwise
  std::vector<FElem> structure(static_cast<std::size_t>(apex.size()));
  std::vector<char> defined(static_cast<std::size_t>(apex.size()), 0);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (int v = 0; v < objects[i].carrier.size(); ++v) {
      int cls = injections[i](v);
      FElem mapped = map_felem(injections[i], objects[i].structure[static_cast<std::size_t>(v)]);
      if (!defined[static_cast<std::size_t>(cls)]) {
        structure[static_cast<std::size_t>(cls)] = std::move(mapped);
        defined[static_cast<std::size_t>(cls)] = 1;
      } else if (!(structure[static_cast<std::size_t>(cls)] == mapped)) {
        throw VerificationError(
            "no coalgebra structure makes all injections morphisms (edges are "
            "not coalgebra morphisms?); conflict at class " + apex.name(cls));
      }
    }
  }
  for (int i = 0; i < apex.size(); ++i)
    if (!defined[static_cast<std::size_t>(i)])
      throw VerificationError("colimit class without witness");

  CoalgColimit out{Coalgebra{sig, apex, std::move(structure)},
                   std::move(injections),
                   std::move(offsets),
                   std::move(partition),
                   std::move(raw_to_apex),
                   std::move(apex_to_raw)};
  out.offsets.pop_back(); // keep one offset per object
  return out;
}

CoalgColimit colim_coalgebras(const CoalgebraDiagram& d, std::uint64_t cap, bool check_edges) {
  if (d.objects.empty()) throw InvalidValueError("colimit of an empty diagram of coalgebras");
  std::vector<int> offsets(d.objects.size() + 1, 0);
  for (std::size_t i = 0; i < d.objects.size(); ++i)
    offsets[i + 1] = offsets[i] + d.objects[i].carrier.size();
  check_cap(static_cast<std::uint64_t>(offsets.back()), cap);

  Partition p(offsets.back());
  for (std::size_t ei = 0; ei < d.edges.size(); ++ei) {
    const auto& e = d.edges[ei];
    if (e.src < 0 || e.src >= static_cast<int>(d.objects.size()) || e.dst < 0 ||
        e.dst >= static_cast<int>(d.objects.size()))
      throw InvalidValueError("edge endpoint out of range");
    const Coalgebra& src = d.objects[static_cast<std::size_t>(e.src)];
    const Coalgebra& dst = d.objects[static_cast<std::size_t>(e.dst)];
    if (e.fn.dom() != src.carrier || e.fn.cod() != dst.carrier)
      throw DomainMismatchError("edge function does not match node coalgebras");
    if (check_edges) {
      if (auto fail = coalgebra_morphism_failure(e.fn, src, dst))
        throw MorphismCheckError("diagram edge " + std::to_string(ei) +
                                 " is not a coalgebra morphism; fails at " + *fail);
    }
    for (int v = 0; v < src.carrier.size(); ++v)
      p.unite(offsets[static_cast<std::size_t>(e.src)] + v,
              offsets[static_cast<std::size_t>(e.dst)] + e.fn(v));
  }
  return assemble_coalg_colimit(d.objects, std::move(p), cap);
}

FinFn lambek_check(const Coalgebra& c, const FinFn& h, std::uint64_t cap) {
  Coalgebra fc = iterate(c, cap);
  if (h.dom() != fc.carrier || h.cod() != c.carrier)
    throw DomainMismatchError("lambek_check: h must map FC -> C");
  if (auto fail = coalgebra_morphism_failure(h, fc, c))
    throw MorphismCheckError("h is not a coalgebra morphism (FC,Fc)->(C,c); fails at " + *fail);

  // uniqueness of endomorphisms, by exhaustive search
  std::vector<FinFn> endos = coalgebra_morphisms_naive(c, c, cap);
  FinFn id = FinFn::identity(c.carrier);
  for (const FinFn& e : endos)
    if (e != id)
      throw MorphismCheckError("uniqueness failed: non-identity coalgebra endomorphism found");
  if (endos.empty()) throw VerificationError("identity endomorphism not found by search");

  FObj f = apply_obj(c.sig, c.carrier, cap);
  FinFn structure = coalgebra_structure_fn(c, f);
  if (compose(h, structure) != FinFn::identity(c.carrier))
    throw MorphismCheckError("h o c != id");
  if (compose(structure, h) != FinFn::identity(fc.carrier))
    throw MorphismCheckError("c o h != id");
  return h;
}

FinFn InitialityTester::run(const Algebra& b, std::uint64_t cap) const {
  FinFn h = hylo(coalg, b);
  if (!is_algebra_morphism(h, algebra, b))
    throw VerificationError("hylo is not an algebra morphism from the initial algebra");
  // uniqueness by brute force over all functions
  const int n = algebra.carrier.size();
  const int m = b.carrier.size();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (m == 0) {
      total = (n == 0) ? 1 : 0;
      break;
    }
    if (total > cap / static_cast<std::uint64_t>(m)) throw SizeCapError(cap + 1, cap);
    total *= static_cast<std::uint64_t>(m);
  }
  check_cap(total, cap);
  int found = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<int> t(static_cast<std::size_t>(n));
    std::uint64_t rest = idx;
    for (int i = 0; i < n; ++i) {
      t[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(m));
      rest /= static_cast<std::uint64_t>(m);
    }
    FinFn cand(algebra.carrier, b.carrier, std::move(t));
    if (is_algebra_morphism(cand, algebra, b)) {
      ++found;
      if (cand != h)
        throw VerificationError("distinct algebra morphism found; initiality fails");
    }
  }
  if (found != 1) throw VerificationError("expected exactly one algebra morphism");
  return h;
}

InitialityTester initial_from_iso(const Coalgebra& c, std::uint64_t cap) {
  RecResult rec = is_recursive(c);
  if (!rec.recursive) throw NotRecursiveError(cycle_names(c, rec));
  FObj f = apply_obj(c.sig, c.carrier, cap);
  FinFn structure = coalgebra_structure_fn(c, f);
  auto inv = structure.try_inverse();
  if (!inv) throw NotBijectiveError("coalgebra structure is not bijective");
  Algebra a{c.sig, c.carrier, f, inv->table()};
  return InitialityTester{c, std::move(a)};
}

CanonicalSplit split_to_canonical(const Coalgebra& c) {
  const int n = c.carrier.size();
  FinSet p = FinSet::ordinal(n);
  std::vector<int> iota(static_cast<std::size_t>(n));
  std::iota(iota.begin(), iota.end(), 0);
  FinFn e(p, c.carrier, iota);
  FinFn m(c.carrier, p, iota);
  // decimal ordinals sort numerically in shortlex order, so index i names "i"
  // and the relabeled structure reuses the original argument indices
  return CanonicalSplit{Coalgebra{c.sig, p, c.structure}, std::move(e), std::move(m)};
}

std::vector<TermId> unfold_all(TermPool& pool, const Coalgebra& c) {
  if (pool.sig() != c.sig) throw DomainMismatchError("term pool signature mismatch");
  RecResult rec = is_recursive(c);
  if (!rec.recursive) throw NotRecursiveError(cycle_names(c, rec));
  std::vector<TermId> t(static_cast<std::size_t>(c.carrier.size()), -1);
  for (int v : rec.topo) {
    const FElem& e = c.structure[static_cast<std::size_t>(v)];
    std::vector<TermId> children;
    children.reserve(e.args.size());
    for (int a : e.args) children.push_back(t[static_cast<std::size_t>(a)]);
    t[static_cast<std::size_t>(v)] = pool.intern(e.op, std::move(children));
  }
  return t;
}

TermId unfold(TermPool& pool, const Coalgebra& c, std::string_view state) {
  return unfold_all(pool, c)[static_cast<std::size_t>(c.carrier.index_of(state))];
}

MorphismSearchIndex::MorphismSearchIndex(const Coalgebra& dst) : dst_(&dst), n_(dst.carrier.size()) {
  raw_size_ = functor_size(dst.sig, n_, std::uint64_t(1) << 40);
  check_cap(raw_size_, std::uint64_t(1) << 22);
  buckets_.resize(static_cast<std::size_t>(raw_size_));
  if (!dst.sig.is_powerset()) {
    op_offset_.resize(static_cast<std::size_t>(dst.sig.op_count()) + 1, 0);
    std::uint64_t off = 0;
    for (int k = 0; k < dst.sig.op_count(); ++k) {
      op_offset_[static_cast<std::size_t>(k)] = off;
      std::uint64_t p = 1;
      for (int i = 0; i < dst.sig.op(k).arity; ++i) p *= static_cast<std::uint64_t>(n_);
      if (dst.sig.op(k).arity > 0 && n_ == 0) p = 0;
      off += p;
    }
    op_offset_[static_cast<std::size_t>(dst.sig.op_count())] = off;
  }
  for (int v = 0; v < n_; ++v)
    buckets_[static_cast<std::size_t>(raw_of(dst.structure[static_cast<std::size_t>(v)]))]
        .push_back(v);
}

std::uint64_t MorphismSearchIndex::raw_of(const FElem& e) const {
  if (dst_->sig.is_powerset()) {
    std::uint64_t mask = 0;
    for (int a : e.args) mask |= std::uint64_t(1) << a;
    return mask;
  }
  std::uint64_t idx = 0, mult = 1;
  for (int a : e.args) {
    idx += static_cast<std::uint64_t>(a) * mult;
    mult *= static_cast<std::uint64_t>(n_);
  }
  return op_offset_[static_cast<std::size_t>(e.op)] + idx;
}

std::uint64_t MorphismSearchIndex::raw_of_mapped(const FElem& e,
                                                 const std::vector<int>& table) const {
  if (dst_->sig.is_powerset()) {
    std::uint64_t mask = 0;
    for (int a : e.args) mask |= std::uint64_t(1) << table[static_cast<std::size_t>(a)];
    return mask;
  }
  std::uint64_t idx = 0, mult = 1;
  for (int a : e.args) {
    idx += static_cast<std::uint64_t>(table[static_cast<std::size_t>(a)]) * mult;
    mult *= static_cast<std::uint64_t>(n_);
  }
  return op_offset_[static_cast<std::size_t>(e.op)] + idx;
}

const std::vector<int>& MorphismSearchIndex::bucket(std::uint64_t raw) const {
  return buckets_[static_cast<std::size_t>(raw)];
}

void for_each_coalgebra_morphism(const Coalgebra& src, const RecResult& src_rec,
                                 const MorphismSearchIndex& dst_index,
                                 const std::function<void(const std::vector<int>&)>& cb,
                                 const std::vector<std::vector<int>>* allowed,
                                 std::uint64_t naive_cap) {
  const Coalgebra& dst = dst_index.dst();
  require_same_sig(src.sig, dst.sig);
  const int n = src.carrier.size();
  const int m = dst.carrier.size();

  std::vector<std::vector<char>> allowed_mask;
  if (allowed) {
    allowed_mask.assign(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(m), 0));
    for (int v = 0; v < n; ++v)
      for (int w : (*allowed)[static_cast<std::size_t>(v)])
        allowed_mask[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] = 1;
  }
  auto permitted = [&](int v, int w) {
    return !allowed || allowed_mask[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
  };

  if (!src_rec.recursive) {
    // cyclic source: exhaustive filter over all functions
    if (m == 0 && n > 0) return;
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
      if (m != 0 && total > naive_cap / static_cast<std::uint64_t>(m))
        throw SizeCapError(naive_cap + 1, naive_cap);
      total *= static_cast<std::uint64_t>(m);
    }
    check_cap(total, naive_cap);
    std::vector<int> t(static_cast<std::size_t>(n));
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rest = idx;
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        t[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(m));
        rest /= static_cast<std::uint64_t>(m);
        if (!permitted(i, t[static_cast<std::size_t>(i)])) ok = false;
      }
      if (!ok) continue;
      for (int v = 0; v < n && ok; ++v)
        ok = dst.structure[static_cast<std::size_t>(t[static_cast<std::size_t>(v)])] ==
             map_felem_table(t, src.structure[static_cast<std::size_t>(v)]);
      if (ok) cb(t);
    }
    return;
  }

  // guided search along the topological order: arguments are assigned before
  // their dependents, so each state's square is checked on assignment
  std::vector<int> h(static_cast<std::size_t>(n), -1);
  struct Frame {
    const std::vector<int>* cands;
    std::size_t next;
  };
  std::vector<Frame> frames(static_cast<std::size_t>(n));
  int pos = 0;
  auto candidates_at = [&](int p) -> const std::vector<int>* {
    int v = src_rec.topo[static_cast<std::size_t>(p)];
    // arguments were assigned earlier along the topological order
    return &dst_index.bucket(
        dst_index.raw_of_mapped(src.structure[static_cast<std::size_t>(v)], h));
  };

  if (n == 0) {
    cb(h);
    return;
  }
  frames[0] = Frame{candidates_at(0), 0};
  while (pos >= 0) {
    Frame& f = frames[static_cast<std::size_t>(pos)];
    int v = src_rec.topo[static_cast<std::size_t>(pos)];
    bool advanced = false;
    while (f.next < f.cands->size()) {
      int w = (*f.cands)[f.next++];
      if (!permitted(v, w)) continue;
      h[static_cast<std::size_t>(v)] = w;
      if (pos + 1 == n) {
        cb(h);
      } else {
        ++pos;
        frames[static_cast<std::size_t>(pos)] = Frame{candidates_at(pos), 0};
        advanced = true;
        break;
      }
    }
    if (!advanced && frames[static_cast<std::size_t>(pos)].next >=
                         frames[static_cast<std::size_t>(pos)].cands->size()) {
      h[static_cast<std::size_t>(v)] = -1;
      --pos;
    }
  }
}

std::vector<FinFn> coalgebra_morphisms(const Coalgebra& src, const Coalgebra& dst,
                                       const std::vector<std::vector<int>>* allowed,
                                       std::uint64_t cap) {
  RecResult rec = is_recursive(src);
  MorphismSearchIndex idx(dst);
  std::vector<std::vector<int>> tables;
  for_each_coalgebra_morphism(src, rec, idx,
                              [&](const std::vector<int>& t) { tables.push_back(t); }, allowed, cap);
  std::sort(tables.begin(), tables.end());
  std::vector<FinFn> out;
  out.reserve(tables.size());
  for (auto& t : tables) out.emplace_back(src.carrier, dst.carrier, std::move(t));
  return out;
}

std::vector<FinFn> coalgebra_morphisms_naive(const Coalgebra& src, const Coalgebra& dst,
                                             std::uint64_t cap) {
  require_same_sig(src.sig, dst.sig);
  const int n = src.carrier.size();
  const int m = dst.carrier.size();
  if (m == 0 && n > 0) return {};
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (m != 0 && total > cap / static_cast<std::uint64_t>(m)) throw SizeCapError(cap + 1, cap);
    total *= static_cast<std::uint64_t>(m);
  }
  check_cap(total, cap);

  // raw structure codes over the destination carrier avoid building FElems
  // in the inner loop
  MorphismSearchIndex dst_index(dst);
  std::vector<std::uint64_t> dst_raw(static_cast<std::size_t>(m));
  for (int w = 0; w < m; ++w)
    dst_raw[static_cast<std::size_t>(w)] =
        dst_index.raw_of(dst.structure[static_cast<std::size_t>(w)]);

  auto decode_table = [&](std::uint64_t idx) {
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      t[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::uint64_t>(m));
      idx /= static_cast<std::uint64_t>(m);
    }
    return t;
  };
  std::vector<std::uint64_t> hits = par::filter_indices(total, [&](std::uint64_t idx) {
    thread_local std::vector<int> t;
    t.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      t[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::uint64_t>(m));
      idx /= static_cast<std::uint64_t>(m);
    }
    for (int v = 0; v < n; ++v)
      if (dst_raw[static_cast<std::size_t>(t[static_cast<std::size_t>(v)])] !=
          dst_index.raw_of_mapped(src.structure[static_cast<std::size_t>(v)], t))
        return false;
    return true;
  });
  std::vector<std::vector<int>> tables;
  tables.reserve(hits.size());
  for (std::uint64_t idx : hits) tables.push_back(decode_table(idx));
  std::sort(tables.begin(), tables.end());
  std::vector<FinFn> out;
  out.reserve(tables.size());
  for (auto& t : tables) out.emplace_back(src.carrier, dst.carrier, std::move(t));
  return out;
}

} // namespace unchained
