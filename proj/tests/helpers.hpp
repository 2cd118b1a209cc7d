#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "unchained/coalgebra.hpp"
#include "unchained/finset.hpp"
#include "unchained/functor.hpp"

namespace testutil {

using namespace unchained;

inline Signature cherry_sig() { return Signature::polynomial({{"leaf", 0}, {"node", 2}}); }
inline Signature successor_sig() { return Signature::polynomial({{"z", 0}, {"s", 1}}); }
inline Signature constants_sig(int k) {
  std::vector<OpSym> ops;
  for (int i = 0; i < k; ++i) ops.push_back({"c" + std::to_string(i + 1), 0});
  return Signature::polynomial(std::move(ops));
}
inline Signature empty_sig() { return Signature::polynomial({}); }

/// The six-state example coalgebra: three leaves x,y,z and inner states
/// u -> (x,x), w -> (z,y), v -> (y,w).
inline Coalgebra fig2_coalgebra() {
  Signature sig = cherry_sig();
  FinSet carrier = FinSet::from_names({"u", "v", "w", "x", "y", "z"});
  auto leaf = [&] { return FElem{0, {}}; };
  auto node = [&](const std::string& a, const std::string& b) {
    return FElem{1, {carrier.index_of(a), carrier.index_of(b)}};
  };
  std::vector<FElem> st(6);
  st[static_cast<std::size_t>(carrier.index_of("x"))] = leaf();
  st[static_cast<std::size_t>(carrier.index_of("y"))] = leaf();
  st[static_cast<std::size_t>(carrier.index_of("z"))] = leaf();
  st[static_cast<std::size_t>(carrier.index_of("u"))] = node("x", "x");
  st[static_cast<std::size_t>(carrier.index_of("w"))] = node("z", "y");
  st[static_cast<std::size_t>(carrier.index_of("v"))] = node("y", "w");
  return make_coalgebra(sig, carrier, std::move(st));
}

/// Height algebra on {0..max_h}: leaf -> 0, node(k,n) -> 1+max(k,n),
/// saturated at max_h. Carrier names are the decimal values.
inline Algebra height_algebra(int max_h) {
  FinSet carrier = FinSet::ordinal(max_h + 1);
  return make_algebra_by(cherry_sig(), carrier, [&](const FElem& e) {
    if (e.op == 0) return 0;
    return std::min(1 + std::max(e.args[0], e.args[1]), max_h);
  });
}

/// All coalgebra structures over a signature on the ordinal carrier of size n.
inline std::vector<Coalgebra> all_coalgebras(const Signature& sig, int n) {
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

/// All algebra structures over a signature on the ordinal carrier of size m.
inline std::vector<Algebra> all_algebras(const Signature& sig, int m) {
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

inline FinFn random_fn(std::mt19937_64& rng, const FinSet& dom, const FinSet& cod) {
  std::vector<int> t(static_cast<std::size_t>(dom.size()));
  for (auto& v : t) v = static_cast<int>(rng() % static_cast<std::uint64_t>(cod.size()));
  return FinFn(dom, cod, std::move(t));
}

} // namespace testutil
