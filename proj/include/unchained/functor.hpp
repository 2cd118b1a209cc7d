#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "unchained/error.hpp"
#include "unchained/finset.hpp"

namespace unchained {

struct OpSym {
  std::string name;
  int arity = 0;
  bool operator==(const OpSym&) const = default;
};

/// Presentation of a finitary endofunctor on finite sets: either a polynomial
/// (signature) functor  F X = Sum_op X^arity(op)  or the finite powerset.
class Signature {
public:
  /// The empty polynomial signature (constant empty-set functor).
  Signature();

  static Signature polynomial(std::vector<OpSym> ops);
  static Signature powerset();

  bool is_powerset() const { return data_->powerset; }
  int op_count() const { return static_cast<int>(data_->ops.size()); }
  const OpSym& op(int i) const { return data_->ops[static_cast<std::size_t>(i)]; }
  const std::vector<OpSym>& ops() const { return data_->ops; }
  int op_index(std::string_view name) const;

  bool operator==(const Signature& o) const {
    return data_ == o.data_ ||
           (data_->powerset == o.data_->powerset && data_->ops == o.data_->ops);
  }
  bool operator!=(const Signature& o) const { return !(*this == o); }

private:
  struct Data {
    bool powerset = false;
    std::vector<OpSym> ops;
  };
  explicit Signature(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// An element of F X: an operation applied to elements of X, or (for the
/// powerset functor) a subset of X. Args hold element indices into X;
/// powerset members are sorted and duplicate-free with op = kSubset.
struct FElem {
  static constexpr int kSubset = -1;
  int op = kSubset;
  std::vector<int> args;

  bool operator==(const FElem&) const = default;
};

/// Canonical string encoding: "op", "op(a,b,...)", or "{a,b}" with members in
/// base-set order.
std::string felem_name(const Signature& sig, const FinSet& base, const FElem& e);

/// Applies h: X -> Y to an FElem over X, yielding an FElem over Y
/// (pointwise on args; direct image, re-sorted, for subsets).
FElem map_felem(const FinFn& h, const FElem& e);

/// Like map_felem but with a raw index table (used on hot paths).
FElem map_felem_table(const std::vector<int>& table, const FElem& e);

/// The object action of a functor: the encoded set F X together with the
/// decode bijection and raw-index helpers for enumeration kernels.
class FObj {
public:
  FObj() = default;

  const Signature& sig() const { return sig_; }
  const FinSet& base() const { return base_; }
  /// The encoded apex F X, in canonical name order.
  const FinSet& carrier() const { return carrier_; }
  /// FElem for a carrier index.
  const FElem& decode(int i) const { return decode_[static_cast<std::size_t>(i)]; }
  const std::vector<FElem>& decodes() const { return decode_; }

  /// Carrier index of an FElem; throws InvalidValueError when malformed.
  int encode(const FElem& e) const;

  /// Raw enumeration index space (before canonical reordering):
  /// Sum_op |X|^arity for polynomial, 2^|X| for powerset.
  std::uint64_t raw_size() const { return raw_size_; }
  FElem decode_raw(std::uint64_t raw) const;
  std::uint64_t raw_index(const FElem& e) const;
  int carrier_index_of_raw(std::uint64_t raw) const {
    return raw_to_idx_[static_cast<std::size_t>(raw)];
  }

  /// Carrier index of the image of e under a table whose values lie in this
  /// object's base set, without materializing the mapped FElem (hot paths).
  int encode_mapped(const FElem& e, const std::vector<int>& table) const {
    const int n = base_.size();
    if (sig_.is_powerset()) {
      std::uint64_t mask = 0;
      for (int a : e.args) mask |= std::uint64_t(1) << table[static_cast<std::size_t>(a)];
      return carrier_index_of_raw(mask);
    }
    std::uint64_t idx = 0, mult = 1;
    for (int a : e.args) {
      idx += static_cast<std::uint64_t>(table[static_cast<std::size_t>(a)]) * mult;
      mult *= static_cast<std::uint64_t>(n);
    }
    return carrier_index_of_raw(op_offset_[static_cast<std::size_t>(e.op)] + idx);
  }

private:
  friend FObj apply_obj(const Signature&, const FinSet&, std::uint64_t);
  Signature sig_;
  FinSet base_;
  FinSet carrier_;
  std::vector<FElem> decode_;
  std::vector<int> raw_to_idx_;
  std::vector<std::uint64_t> op_offset_; // polynomial: raw offset per op
  std::uint64_t raw_size_ = 0;
};

/// Number of elements of F X for a base of size n, saturating at cap+1.
std::uint64_t functor_size(const Signature& sig, int n, std::uint64_t cap);

FObj apply_obj(const Signature& sig, const FinSet& x, std::uint64_t cap = default_cap());

/// The morphism action F h : F X -> F Y, given the two object actions.
FinFn apply_fn(const FObj& fdom, const FObj& fcod, const FinFn& h);

/// Convenience overload materializing both object actions.
FinFn apply_fn(const Signature& sig, const FinFn& h, std::uint64_t cap = default_cap());

} // namespace unchained
