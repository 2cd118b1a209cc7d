#include "unchained/functor.hpp"

#include <algorithm>

namespace unchained {

Signature::Signature() {
  static const auto d = std::make_shared<const Data>();
  data_ = d;
}

Signature Signature::polynomial(std::vector<OpSym> ops) {
  auto d = std::make_shared<Data>();
  d->powerset = false;
  d->ops = std::move(ops);
  for (std::size_t i = 0; i < d->ops.size(); ++i) {
    if (d->ops[i].arity < 0) throw InvalidValueError("negative arity");
    for (std::size_t j = i + 1; j < d->ops.size(); ++j)
      if (d->ops[i].name == d->ops[j].name)
        throw InvalidValueError("duplicate operation name: " + d->ops[i].name);
  }
  return Signature(std::move(d));
}

Signature Signature::powerset() {
  static const auto d = [] {
    auto p = std::make_shared<Data>();
    p->powerset = true;
    return std::shared_ptr<const Data>(p);
  }();
  return Signature(d);
}

int Signature::op_index(std::string_view name) const {
  for (int i = 0; i < op_count(); ++i)
    if (data_->ops[static_cast<std::size_t>(i)].name == name) return i;
  throw InvalidValueError("unknown operation: " + std::string(name));
}

std::string felem_name(const Signature& sig, const FinSet& base, const FElem& e) {
  if (e.op == FElem::kSubset) {
    std::string s = "{";
    for (std::size_t i = 0; i < e.args.size(); ++i) {
      if (i) s += ",";
      s += base.name(e.args[i]);
    }
    s += "}";
    return s;
  }
  const OpSym& op = sig.op(e.op);
  if (op.arity == 0) return op.name;
  std::string s = op.name + "(";
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i) s += ",";
    s += base.name(e.args[i]);
  }
  s += ")";
  return s;
}

FElem map_felem(const FinFn& h, const FElem& e) { return map_felem_table(h.table(), e); }

FElem map_felem_table(const std::vector<int>& table, const FElem& e) {
  FElem out;
  out.op = e.op;
  out.args.reserve(e.args.size());
  for (int a : e.args) out.args.push_back(table[static_cast<std::size_t>(a)]);
  if (out.op == FElem::kSubset) {
    std::sort(out.args.begin(), out.args.end());
    out.args.erase(std::unique(out.args.begin(), out.args.end()), out.args.end());
  }
  return out;
}

std::uint64_t functor_size(const Signature& sig, int n, std::uint64_t cap) {
  const std::uint64_t limit = cap + 1;
  if (sig.is_powerset()) {
    if (n >= 63) return limit;
    std::uint64_t s = std::uint64_t(1) << n;
    return std::min(s, limit);
  }
  std::uint64_t total = 0;
  for (const OpSym& op : sig.ops()) {
    std::uint64_t p = 1;
    for (int i = 0; i < op.arity; ++i) {
      if (n == 0) {
        p = 0;
        break;
      }
      if (p > limit / static_cast<std::uint64_t>(n)) {
        p = limit;
        break;
      }
      p *= static_cast<std::uint64_t>(n);
    }
    total = std::min(total + p, limit);
    if (total >= limit) return limit;
  }
  return total;
}

FObj apply_obj(const Signature& sig, const FinSet& x, std::uint64_t cap) {
  const int n = x.size();
  std::uint64_t size = functor_size(sig, n, cap);
  check_cap(size, cap);

  FObj out;
  out.sig_ = sig;
  out.base_ = x;
  out.raw_size_ = size;

  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(size));
  std::vector<FElem> raw_elems;
  raw_elems.reserve(static_cast<std::size_t>(size));

  if (sig.is_powerset()) {
    for (std::uint64_t mask = 0; mask < size; ++mask) {
      FElem e;
      e.op = FElem::kSubset;
      for (int i = 0; i < n; ++i)
        if (mask & (std::uint64_t(1) << i)) e.args.push_back(i);
      names.push_back(felem_name(sig, x, e));
      raw_elems.push_back(std::move(e));
    }
  } else {
    out.op_offset_.resize(static_cast<std::size_t>(sig.op_count()) + 1, 0);
    for (int k = 0; k < sig.op_count(); ++k) {
      out.op_offset_[static_cast<std::size_t>(k)] = raw_elems.size();
      const int arity = sig.op(k).arity;
      std::uint64_t count = 1;
      for (int i = 0; i < arity; ++i) count *= static_cast<std::uint64_t>(n);
      if (arity > 0 && n == 0) count = 0;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        FElem e;
        e.op = k;
        e.args.resize(static_cast<std::size_t>(arity));
        std::uint64_t rest = idx;
        for (int i = 0; i < arity; ++i) {
          e.args[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(n));
          rest /= static_cast<std::uint64_t>(n);
        }
        names.push_back(felem_name(sig, x, e));
        raw_elems.push_back(std::move(e));
      }
    }
    out.op_offset_[static_cast<std::size_t>(sig.op_count())] = raw_elems.size();
  }

  out.carrier_ = FinSet::from_names(names);
  out.decode_.resize(raw_elems.size());
  out.raw_to_idx_.resize(raw_elems.size());
  for (std::size_t raw = 0; raw < raw_elems.size(); ++raw) {
    int idx = out.carrier_.index_of(names[raw]);
    out.raw_to_idx_[raw] = idx;
    out.decode_[static_cast<std::size_t>(idx)] = std::move(raw_elems[raw]);
  }
  return out;
}

std::uint64_t FObj::raw_index(const FElem& e) const {
  const int n = base_.size();
  if (sig_.is_powerset()) {
    if (e.op != FElem::kSubset) throw InvalidValueError("expected subset element");
    std::uint64_t mask = 0;
    for (int a : e.args) {
      if (a < 0 || a >= n) throw InvalidValueError("subset member outside base set");
      mask |= std::uint64_t(1) << a;
    }
    return mask;
  }
  if (e.op < 0 || e.op >= sig_.op_count()) throw InvalidValueError("unknown operation index");
  const int arity = sig_.op(e.op).arity;
  if (static_cast<int>(e.args.size()) != arity)
    throw InvalidValueError("arity mismatch for operation " + sig_.op(e.op).name);
  std::uint64_t idx = 0, mult = 1;
  for (int i = 0; i < arity; ++i) {
    int a = e.args[static_cast<std::size_t>(i)];
    if (a < 0 || a >= n) throw InvalidValueError("argument outside base set");
    idx += static_cast<std::uint64_t>(a) * mult;
    mult *= static_cast<std::uint64_t>(n);
  }
  return op_offset_[static_cast<std::size_t>(e.op)] + idx;
}

int FObj::encode(const FElem& e) const { return carrier_index_of_raw(raw_index(e)); }

FElem FObj::decode_raw(std::uint64_t raw) const {
  return decode_[static_cast<std::size_t>(carrier_index_of_raw(raw))];
}

FinFn apply_fn(const FObj& fdom, const FObj& fcod, const FinFn& h) {
  if (fdom.sig() != fcod.sig()) throw DomainMismatchError("apply_fn: signature mismatch");
  if (h.dom() != fdom.base() || h.cod() != fcod.base())
    throw DomainMismatchError("apply_fn: function does not match object actions");
  std::vector<int> t(static_cast<std::size_t>(fdom.carrier().size()));
  for (int i = 0; i < fdom.carrier().size(); ++i)
    t[static_cast<std::size_t>(i)] = fcod.encode(map_felem(h, fdom.decode(i)));
  return FinFn(fdom.carrier(), fcod.carrier(), std::move(t));
}

FinFn apply_fn(const Signature& sig, const FinFn& h, std::uint64_t cap) {
  FObj fdom = apply_obj(sig, h.dom(), cap);
  FObj fcod = apply_obj(sig, h.cod(), cap);
  return apply_fn(fdom, fcod, h);
}

} // namespace unchained
