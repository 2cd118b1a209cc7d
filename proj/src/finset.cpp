#include "unchained/finset.hpp"

#include <algorithm>
#include <numeric>

namespace unchained {

std::shared_ptr<const FinSet::Data> FinSet::empty_data() {
  static const auto d = std::make_shared<const Data>();
  return d;
}

FinSet FinSet::from_names(std::vector<std::string> names) {
  auto d = std::make_shared<Data>();
  d->names = std::move(names);
  std::sort(d->names.begin(), d->names.end(),
            [](const std::string& a, const std::string& b) { return shortlex_less(a, b); });
  d->index.reserve(d->names.size());
  for (int i = 0; i < static_cast<int>(d->names.size()); ++i) {
    auto [it, fresh] = d->index.emplace(std::string_view(d->names[static_cast<std::size_t>(i)]), i);
    (void)it;
    if (!fresh)
      throw InvalidValueError("duplicate element name: " + d->names[static_cast<std::size_t>(i)]);
  }
  return FinSet(std::move(d));
}

FinSet FinSet::ordinal(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return from_names(std::move(names));
}

int FinSet::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw InvalidValueError("element not in set: " + std::string(name));
  return *i;
}

FinFn::FinFn(FinSet dom, FinSet cod, std::vector<int> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (static_cast<int>(table_.size()) != dom_.size())
    throw InvalidValueError("function table size does not match domain");
  for (int v : table_)
    if (v < 0 || v >= cod_.size())
      throw InvalidValueError("function value outside codomain");
}

FinFn FinFn::identity(const FinSet& x) {
  std::vector<int> t(static_cast<std::size_t>(x.size()));
  std::iota(t.begin(), t.end(), 0);
  return FinFn(x, x, std::move(t));
}

FinFn FinFn::from_pairs(const FinSet& dom, const FinSet& cod,
                        const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<int> t(static_cast<std::size_t>(dom.size()), -1);
  for (const auto& [a, b] : pairs) {
    int i = dom.index_of(a);
    if (t[static_cast<std::size_t>(i)] != -1)
      throw InvalidValueError("element mapped twice: " + a);
    t[static_cast<std::size_t>(i)] = cod.index_of(b);
  }
  for (int i = 0; i < dom.size(); ++i)
    if (t[static_cast<std::size_t>(i)] == -1)
      throw InvalidValueError("function not total, missing: " + dom.name(i));
  return FinFn(dom, cod, std::move(t));
}

bool FinFn::is_injective() const {
  std::vector<char> seen(static_cast<std::size_t>(cod_.size()), 0);
  for (int v : table_) {
    if (seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

bool FinFn::is_surjective() const {
  std::vector<char> seen(static_cast<std::size_t>(cod_.size()), 0);
  int hit = 0;
  for (int v : table_)
    if (!seen[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = 1;
      ++hit;
    }
  return hit == cod_.size();
}

std::optional<FinFn> FinFn::try_inverse() const {
  if (dom_.size() != cod_.size()) return std::nullopt;
  std::vector<int> inv(static_cast<std::size_t>(cod_.size()), -1);
  for (int i = 0; i < dom_.size(); ++i) {
    int v = table_[static_cast<std::size_t>(i)];
    if (inv[static_cast<std::size_t>(v)] != -1) return std::nullopt;
    inv[static_cast<std::size_t>(v)] = i;
  }
  return FinFn(cod_, dom_, std::move(inv));
}

FinFn compose(const FinFn& g, const FinFn& f) {
  if (f.cod() != g.dom())
    throw DomainMismatchError("compose: codomain of inner does not match domain of outer");
  std::vector<int> t(static_cast<std::size_t>(f.dom().size()));
  for (int i = 0; i < f.dom().size(); ++i) t[static_cast<std::size_t>(i)] = g(f(i));
  return FinFn(f.dom(), g.cod(), std::move(t));
}

Partition::Partition(int n) : parent_(static_cast<std::size_t>(n)) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int Partition::find(int a) const {
  int root = a;
  while (parent_[static_cast<std::size_t>(root)] != root)
    root = parent_[static_cast<std::size_t>(root)];
  while (parent_[static_cast<std::size_t>(a)] != root) {
    int next = parent_[static_cast<std::size_t>(a)];
    parent_[static_cast<std::size_t>(a)] = root;
    a = next;
  }
  return root;
}

bool Partition::unite(int a, int b) {
  int ra = find(a), rb = find(b);
  if (ra == rb) return false;
  // smaller index becomes the root, so roots stay canonical as we go
  if (rb < ra) std::swap(ra, rb);
  parent_[static_cast<std::size_t>(rb)] = ra;
  normalized_ = false;
  return true;
}

void Partition::normalize() {
  for (int i = 0; i < size(); ++i) {
    int r = find(i);
    // unite keeps the least index as root, so find(i) is already the least
    // member; flatten the forest completely.
    parent_[static_cast<std::size_t>(i)] = r;
  }
  normalized_ = true;
}

int Partition::class_count() const {
  int n = 0;
  for (int i = 0; i < size(); ++i)
    if (find(i) == i) ++n;
  return n;
}

std::vector<int> Partition::representatives() const {
  std::vector<int> reps;
  for (int i = 0; i < size(); ++i)
    if (find(i) == i) reps.push_back(i);
  return reps;
}

Coproduct coproduct(const FinSet& x, const FinSet& y) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(x.size() + y.size()));
  for (const auto& n : x.names()) names.push_back("L:" + n);
  for (const auto& n : y.names()) names.push_back("R:" + n);
  FinSet apex = FinSet::from_names(std::move(names));
  std::vector<int> tl(static_cast<std::size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i) tl[static_cast<std::size_t>(i)] = apex.index_of("L:" + x.name(i));
  std::vector<int> tr(static_cast<std::size_t>(y.size()));
  for (int i = 0; i < y.size(); ++i) tr[static_cast<std::size_t>(i)] = apex.index_of("R:" + y.name(i));
  return Coproduct{apex, FinFn(x, apex, std::move(tl)), FinFn(y, apex, std::move(tr))};
}

FinFn copair(const FinFn& f, const FinFn& g, const Coproduct& cop) {
  if (f.cod() != g.cod()) throw DomainMismatchError("copair: codomain mismatch");
  if (f.dom() != cop.inl.dom() || g.dom() != cop.inr.dom())
    throw DomainMismatchError("copair: functions do not match coproduct summands");
  std::vector<int> t(static_cast<std::size_t>(cop.apex.size()), -1);
  for (int i = 0; i < f.dom().size(); ++i) t[static_cast<std::size_t>(cop.inl(i))] = f(i);
  for (int i = 0; i < g.dom().size(); ++i) t[static_cast<std::size_t>(cop.inr(i))] = g(i);
  return FinFn(cop.apex, f.cod(), std::move(t));
}

std::pair<SetPartition, FinFn>
quotient(const FinSet& x, const std::vector<std::pair<std::string, std::string>>& pairs) {
  Partition p(x.size());
  for (const auto& [a, b] : pairs) p.unite(x.index_of(a), x.index_of(b));
  p.normalize();
  SetPartition sp{x, std::move(p)};
  FinFn proj = partition_projection(sp);
  return {std::move(sp), std::move(proj)};
}

FinFn partition_projection(const SetPartition& p) {
  std::vector<int> reps = p.classes.representatives();
  std::vector<std::string> names;
  names.reserve(reps.size());
  for (int r : reps) names.push_back(p.base.name(r));
  FinSet apex = FinSet::from_names(std::move(names));
  std::vector<int> t(static_cast<std::size_t>(p.base.size()));
  for (int i = 0; i < p.base.size(); ++i)
    t[static_cast<std::size_t>(i)] = apex.index_of(p.base.name(p.classes.find(i)));
  return FinFn(p.base, apex, std::move(t));
}

} // namespace unchained
