#include "unchained/colimit.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace unchained {

void Diagram::validate() const {
  for (const auto& [id, s] : nodes) {
    (void)s;
    if (id.find(':') != std::string::npos)
      throw InvalidValueError("node id must not contain ':': " + id);
    if (id.empty()) throw InvalidValueError("empty node id");
  }
  std::set<std::string> edge_ids;
  for (const auto& e : edges) {
    if (!edge_ids.insert(e.id).second) throw InvalidValueError("duplicate edge id: " + e.id);
    auto s = nodes.find(e.src);
    auto t = nodes.find(e.dst);
    if (s == nodes.end()) throw InvalidValueError("edge source not a node: " + e.src);
    if (t == nodes.end()) throw InvalidValueError("edge target not a node: " + e.dst);
    if (e.fn.dom() != s->second || e.fn.cod() != t->second)
      throw DomainMismatchError("edge function does not match its endpoints: " + e.id);
  }
}

const FinSet& Diagram::node(const std::string& id) const {
  auto it = nodes.find(id);
  if (it == nodes.end()) throw InvalidValueError("unknown node: " + id);
  return it->second;
}

namespace {

struct CoproductIndex {
  std::vector<std::string> node_order;
  std::map<std::string, int> offset;
  int total = 0;

  explicit CoproductIndex(const Diagram& d) {
    for (const auto& [id, s] : d.nodes) {
      node_order.push_back(id);
      offset[id] = total;
      total += s.size();
    }
  }
  int raw(const std::string& node, int local) const { return offset.at(node) + local; }
};

} // namespace

ColimitData colimit(const Diagram& d, std::uint64_t cap) {
  d.validate();
  CoproductIndex ci(d);
  check_cap(static_cast<std::uint64_t>(ci.total), cap);

  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(ci.total));
  for (const auto& id : ci.node_order)
    for (const auto& n : d.nodes.at(id).names()) names.push_back(id + ":" + n);
  FinSet cop = FinSet::from_names(names);

  Partition p(ci.total);
  for (const auto& e : d.edges) {
    const FinSet& src = d.nodes.at(e.src);
    for (int v = 0; v < src.size(); ++v) p.unite(ci.raw(e.src, v), ci.raw(e.dst, e.fn(v)));
  }
  p.normalize();

  // apex named by class representatives; representative = least raw index,
  // which need not be least in the coproduct's name order, so rename by the
  // coproduct name of the least-name member for canonical output
  std::vector<int> raw_to_cop(static_cast<std::size_t>(ci.total));
  {
    int raw = 0;
    for (const auto& id : ci.node_order) {
      const FinSet& s = d.nodes.at(id);
      for (int v = 0; v < s.size(); ++v)
        raw_to_cop[static_cast<std::size_t>(raw++)] = cop.index_of(id + ":" + s.name(v));
    }
  }
  std::vector<int> class_name_idx(static_cast<std::size_t>(ci.total), -1);
  for (int raw = 0; raw < ci.total; ++raw) {
    int r = p.find(raw);
    int& best = class_name_idx[static_cast<std::size_t>(r)];
    int cand = raw_to_cop[static_cast<std::size_t>(raw)];
    if (best == -1 || cand < best) best = cand;
  }
  std::vector<std::string> apex_names;
  for (int raw : p.representatives())
    apex_names.push_back(cop.name(class_name_idx[static_cast<std::size_t>(raw)]));
  FinSet apex = FinSet::from_names(std::move(apex_names));

  std::map<std::string, FinFn> injections;
  for (const auto& id : ci.node_order) {
    const FinSet& s = d.nodes.at(id);
    std::vector<int> t(static_cast<std::size_t>(s.size()));
    for (int v = 0; v < s.size(); ++v) {
      int rep = p.find(ci.raw(id, v));
      t[static_cast<std::size_t>(v)] =
          apex.index_of(cop.name(class_name_idx[static_cast<std::size_t>(rep)]));
    }
    injections.emplace(id, FinFn(s, apex, std::move(t)));
  }

  // injections must form a cocone over the diagram
  for (const auto& e : d.edges)
    if (compose(injections.at(e.dst), e.fn) != injections.at(e.src))
      throw VerificationError("colimit injections fail the edge equation at " + e.id);

  // partition exposed over the canonically ordered coproduct
  Partition cop_part(cop.size());
  for (int raw = 0; raw < ci.total; ++raw) {
    int rep = p.find(raw);
    cop_part.unite(raw_to_cop[static_cast<std::size_t>(raw)],
                   raw_to_cop[static_cast<std::size_t>(rep)]);
  }
  cop_part.normalize();
  return ColimitData{std::move(apex), std::move(injections), cop,
                     SetPartition{cop, std::move(cop_part)}};
}

Cocone colimit_cocone(const ColimitData& c) {
  return Cocone{c.apex, c.injections};
}

FinFn mediate(const Diagram& d, const ColimitData& c, const Cocone& k) {
  d.validate();
  for (const auto& [id, s] : d.nodes) {
    auto it = k.legs.find(id);
    if (it == k.legs.end()) throw NotACoconeError("cocone missing a leg for node " + id);
    if (it->second.dom() != s || it->second.cod() != k.apex)
      throw DomainMismatchError("cocone leg does not match node " + id);
  }
  for (const auto& e : d.edges)
    if (compose(k.legs.at(e.dst), e.fn) != k.legs.at(e.src))
      throw NotACoconeError("legs fail the edge equation at edge " + e.id);

  std::vector<int> t(static_cast<std::size_t>(c.apex.size()), -1);
  for (const auto& [id, inj] : c.injections) {
    const FinFn& leg = k.legs.at(id);
    for (int v = 0; v < inj.dom().size(); ++v) {
      int cls = inj(v);
      int val = leg(v);
      if (t[static_cast<std::size_t>(cls)] == -1)
        t[static_cast<std::size_t>(cls)] = val;
      else if (t[static_cast<std::size_t>(cls)] != val)
        throw VerificationError("cocone legs disagree on a colimit class");
    }
  }
  for (int i = 0; i < c.apex.size(); ++i)
    if (t[static_cast<std::size_t>(i)] == -1)
      throw VerificationError("colimit class without witness");
  return FinFn(c.apex, k.apex, std::move(t));
}

namespace {

std::map<std::string, std::vector<const Diagram::Edge*>> edges_by_source(const Diagram& d) {
  std::map<std::string, std::vector<const Diagram::Edge*>> out;
  for (const auto& e : d.edges) out[e.src].push_back(&e);
  return out;
}

/// BFS over edge paths from a start node, tracking the images of a pair of
/// elements; finds the first composite equating them.
std::optional<FilteredColimitReport::Witness>
bfs_equating_path(const Diagram& d,
                  const std::map<std::string, std::vector<const Diagram::Edge*>>& adj,
                  const std::string& start, int x1, int x2, int path_cap) {
  struct State {
    std::string node;
    int a, b;
    std::vector<std::string> path;
  };
  if (path_cap < 0) path_cap = static_cast<int>(d.edges.size());
  std::deque<State> queue;
  std::set<std::tuple<std::string, int, int>> seen;
  queue.push_back(State{start, x1, x2, {}});
  seen.insert({start, x1, x2});
  while (!queue.empty()) {
    State s = std::move(queue.front());
    queue.pop_front();
    if (s.a == s.b)
      return FilteredColimitReport::Witness{start, "", "", s.path, s.node};
    if (static_cast<int>(s.path.size()) >= path_cap) continue;
    auto it = adj.find(s.node);
    if (it == adj.end()) continue;
    for (const Diagram::Edge* e : it->second) {
      State next{e->dst, e->fn(s.a), e->fn(s.b), s.path};
      next.path.push_back(e->id);
      if (seen.insert({next.node, next.a, next.b}).second) queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

} // namespace

FilteredColimitReport verify_filtered_characterization(const Diagram& d, const ColimitData& c) {
  FilteredColimitReport rep;
  // (1) joint surjectivity
  std::vector<char> hit(static_cast<std::size_t>(c.apex.size()), 0);
  for (const auto& [id, inj] : c.injections) {
    (void)id;
    for (int v = 0; v < inj.dom().size(); ++v) hit[static_cast<std::size_t>(inj(v))] = 1;
  }
  rep.joint_surjective = std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });

  // (2) pairs merged by the colimit must be merged inside the diagram
  rep.condition2 = true;
  auto adj = edges_by_source(d);
  for (const auto& [id, inj] : c.injections) {
    const FinSet& s = d.node(id);
    for (int a = 0; a < s.size(); ++a)
      for (int b = a + 1; b < s.size(); ++b) {
        if (inj(a) != inj(b)) continue;
        auto w = bfs_equating_path(d, adj, id, a, b, -1);
        if (w) {
          w->x1 = s.name(a);
          w->x2 = s.name(b);
          rep.witnesses.push_back(std::move(*w));
        } else {
          rep.condition2 = false;
          rep.failures.push_back(FilteredColimitReport::Failure{id, s.name(a), s.name(b)});
        }
      }
  }
  return rep;
}

std::pair<std::string, FinFn> factor_through(const Diagram& d, const ColimitData& c,
                                             const FinFn& f) {
  if (f.cod() != c.apex) throw DomainMismatchError("factor_through: codomain must be the apex");
  for (const auto& [id, inj] : c.injections) {
    const FinSet& di = d.node(id);
    std::vector<int> t(static_cast<std::size_t>(f.dom().size()), -1);
    bool ok = true;
    for (int v = 0; v < f.dom().size() && ok; ++v) {
      int target = f(v);
      // least preimage witness per element
      ok = false;
      for (int y = 0; y < di.size(); ++y)
        if (inj(y) == target) {
          t[static_cast<std::size_t>(v)] = y;
          ok = true;
          break;
        }
    }
    if (ok) return {id, FinFn(f.dom(), di, std::move(t))};
  }
  throw NoFactorizationError("no single node covers the image of f (diagram too small)");
}

std::pair<std::string, FinFn> merge_factorizations(const Diagram& d, const std::string& i,
                                                   const FinFn& f1, const FinFn& f2,
                                                   int path_cap) {
  const FinSet& di = d.node(i);
  if (f1.dom() != f2.dom() || f1.cod() != di || f2.cod() != di)
    throw DomainMismatchError("merge: factorizations must share domain and land in node " + i);
  if (path_cap < 0) path_cap = static_cast<int>(d.edges.size());

  struct State {
    std::string node;
    FinFn g; // composite D(path): D(i) -> node
    std::vector<std::string> path;
  };
  auto key = [](const State& s) {
    std::string k = s.node;
    for (int v : s.g.table()) k += "," + std::to_string(v);
    return k;
  };
  std::deque<State> queue;
  std::set<std::string> seen;
  State init{i, FinFn::identity(di), {}};
  seen.insert(key(init));
  queue.push_back(std::move(init));
  while (!queue.empty()) {
    State s = std::move(queue.front());
    queue.pop_front();
    if (compose(s.g, f1) == compose(s.g, f2)) return {s.node, s.g};
    if (static_cast<int>(s.path.size()) >= path_cap) continue;
    for (const auto& e : d.edges) {
      if (e.src != s.node) continue;
      State next{e.dst, compose(e.fn, s.g), s.path};
      next.path.push_back(e.id);
      if (seen.insert(key(next)).second) queue.push_back(std::move(next));
    }
  }
  throw NoMergeError("no edge path equalizes the factorizations (diagram not filtered enough)");
}

bool preserves_colimit_check(const Signature& f, const Diagram& d, const ColimitData& c,
                             std::uint64_t cap) {
  Diagram img;
  std::map<std::string, FObj> fobjs;
  for (const auto& [id, s] : d.nodes) {
    FObj fo = apply_obj(f, s, cap);
    img.nodes.emplace(id, fo.carrier());
    fobjs.emplace(id, std::move(fo));
  }
  for (const auto& e : d.edges)
    img.edges.push_back(Diagram::Edge{e.id, e.src, e.dst,
                                      apply_fn(fobjs.at(e.src), fobjs.at(e.dst), e.fn)});
  ColimitData img_colim = colimit(img, cap);

  FObj f_apex = apply_obj(f, c.apex, cap);
  Cocone k{f_apex.carrier(), {}};
  for (const auto& [id, inj] : c.injections)
    k.legs.emplace(id, apply_fn(fobjs.at(id), f_apex, inj));
  FinFn comparison = mediate(img, img_colim, k);
  return comparison.is_bijective();
}

std::pair<Diagram, Cocone> canonical_slice_diagram(const FinSet& x, int bound,
                                                   const SliceOptions& opts) {
  if (bound < 0) throw InvalidValueError("bound must be >= 0");
  Diagram d;
  Cocone k{x, {}};
  struct Obj {
    std::string id;
    FinSet p;
    std::vector<int> table;
  };
  std::vector<Obj> objs;
  const int n = x.size();
  std::uint64_t produced = 0;
  for (int sz = 0; sz <= bound; ++sz) {
    std::uint64_t count = 1;
    bool overflow = false;
    for (int i = 0; i < sz; ++i) {
      if (n == 0) {
        count = 0;
        break;
      }
      if (count > opts.cap / static_cast<std::uint64_t>(std::max(n, 1))) {
        overflow = true;
        break;
      }
      count *= static_cast<std::uint64_t>(n);
    }
    if (overflow) throw SizeCapError(opts.cap + 1, opts.cap);
    FinSet p = FinSet::ordinal(sz);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<int> t(static_cast<std::size_t>(sz));
      std::uint64_t rest = idx;
      std::string id = "p" + std::to_string(sz);
      for (int i = 0; i < sz; ++i) {
        t[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(n));
        rest /= static_cast<std::uint64_t>(n);
        id += (i ? "-" : "_") + std::to_string(t[static_cast<std::size_t>(i)]);
      }
      objs.push_back(Obj{std::move(id), p, std::move(t)});
      ++produced;
      if (opts.max_objects > 0 && produced >= static_cast<std::uint64_t>(opts.max_objects)) break;
    }
    if (opts.max_objects > 0 && produced >= static_cast<std::uint64_t>(opts.max_objects)) break;
    check_cap(produced, opts.cap);
  }
  for (const auto& o : objs) {
    d.nodes.emplace(o.id, o.p);
    k.legs.emplace(o.id, FinFn(o.p, x, o.table));
  }
  // edges: all commuting triangles h: (P,p) -> (Q,q) with q o h = p
  for (const auto& src : objs)
    for (const auto& dst : objs) {
      const int ps = src.p.size(), qs = dst.p.size();
      // enumerate all h: P -> Q with q(h(v)) = p(v); per-element choices
      std::vector<std::vector<int>> choices(static_cast<std::size_t>(ps));
      bool any = true;
      for (int v = 0; v < ps && any; ++v) {
        for (int w = 0; w < qs; ++w)
          if (dst.table[static_cast<std::size_t>(w)] == src.table[static_cast<std::size_t>(v)])
            choices[static_cast<std::size_t>(v)].push_back(w);
        any = !choices[static_cast<std::size_t>(v)].empty();
      }
      if (!any) continue;
      std::vector<int> pick(static_cast<std::size_t>(ps), 0);
      while (true) {
        std::vector<int> t(static_cast<std::size_t>(ps));
        std::string suffix;
        for (int v = 0; v < ps; ++v) {
          t[static_cast<std::size_t>(v)] =
              choices[static_cast<std::size_t>(v)][static_cast<std::size_t>(pick[static_cast<std::size_t>(v)])];
          suffix += "-" + std::to_string(t[static_cast<std::size_t>(v)]);
        }
        d.edges.push_back(Diagram::Edge{"h_" + src.id + "_" + dst.id + suffix, src.id, dst.id,
                                        FinFn(src.p, dst.p, t)});
        int v = 0;
        for (; v < ps; ++v) {
          if (++pick[static_cast<std::size_t>(v)] <
              static_cast<int>(choices[static_cast<std::size_t>(v)].size()))
            break;
          pick[static_cast<std::size_t>(v)] = 0;
        }
        if (v == ps) break;
      }
    }
  d.validate();
  // with bound >= |x| and no sampling the canonical cocone must be a colimit
  if (bound >= x.size() && opts.max_objects == 0) {
    ColimitData cd = colimit(d, opts.cap);
    if (!mediate(d, cd, k).is_bijective())
      throw VerificationError("canonical cocone is not a colimit despite bound >= |x|");
  }
  return {std::move(d), std::move(k)};
}

} // namespace unchained
