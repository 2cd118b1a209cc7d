#include "unchained/examples.hpp"

#include <algorithm>

namespace unchained::examples {

Signature cherry() { return Signature::polynomial({{"leaf", 0}, {"node", 2}}); }
Signature successor() { return Signature::polynomial({{"z", 0}, {"s", 1}}); }

Signature constants(int k) {
  std::vector<OpSym> ops;
  for (int i = 0; i < k; ++i) ops.push_back({"c" + std::to_string(i + 1), 0});
  return Signature::polynomial(std::move(ops));
}

HeightExample height_example() {
  Signature sig = cherry();
  FinSet carrier = FinSet::from_names({"u", "v", "w", "x", "y", "z"});
  auto node = [&](const char* a, const char* b) {
    return FElem{1, {carrier.index_of(a), carrier.index_of(b)}};
  };
  std::vector<FElem> st(6);
  st[static_cast<std::size_t>(carrier.index_of("x"))] = FElem{0, {}};
  st[static_cast<std::size_t>(carrier.index_of("y"))] = FElem{0, {}};
  st[static_cast<std::size_t>(carrier.index_of("z"))] = FElem{0, {}};
  st[static_cast<std::size_t>(carrier.index_of("u"))] = node("x", "x");
  st[static_cast<std::size_t>(carrier.index_of("w"))] = node("z", "y");
  st[static_cast<std::size_t>(carrier.index_of("v"))] = node("y", "w");

  const int max_h = 3;
  Algebra height = make_algebra_by(sig, FinSet::ordinal(max_h + 1), [&](const FElem& e) {
    if (e.op == 0) return 0;
    return std::min(1 + std::max(e.args[0], e.args[1]), max_h);
  });
  return HeightExample{make_coalgebra(sig, carrier, std::move(st)), std::move(height)};
}

std::string list_name(const std::vector<int>& letters) {
  if (letters.empty()) return "e";
  std::string s;
  for (int c : letters) s += std::to_string(c);
  return s;
}

std::vector<int> list_letters(const std::string& name) {
  std::vector<int> out;
  if (name == "e") return out;
  for (char ch : name) {
    if (ch < '1' || ch > '9') throw InvalidValueError("not a list name: " + name);
    out.push_back(ch - '0');
  }
  return out;
}

QuicksortExample quicksort_example(int alphabet, int max_len, std::uint64_t cap) {
  if (alphabet < 1 || alphabet > 9) throw InvalidValueError("alphabet size must be in 1..9");
  if (max_len < 0) throw InvalidValueError("max_len must be >= 0");

  std::vector<OpSym> ops{{"nil", 0}};
  for (int c = 1; c <= alphabet; ++c) ops.push_back({"piv" + std::to_string(c), 2});
  Signature sig = Signature::polynomial(std::move(ops));

  // all lists over {1..alphabet} of length <= max_len
  std::vector<std::vector<int>> lists{{}};
  for (std::size_t i = 0; i < lists.size(); ++i) {
    if (static_cast<int>(lists[i].size()) >= max_len) continue;
    for (int c = 1; c <= alphabet; ++c) {
      auto next = lists[i];
      next.push_back(c);
      lists.push_back(std::move(next));
    }
  }
  std::vector<std::string> names;
  names.reserve(lists.size());
  for (const auto& l : lists) names.push_back(list_name(l));
  FinSet carrier = FinSet::from_names(std::move(names));
  check_cap(static_cast<std::uint64_t>(carrier.size()), cap);

  // divide: e -> nil, cw -> piv_c(w_<=c, w_>c)
  std::vector<FElem> divide(static_cast<std::size_t>(carrier.size()));
  for (int i = 0; i < carrier.size(); ++i) {
    std::vector<int> l = list_letters(carrier.name(i));
    if (l.empty()) {
      divide[static_cast<std::size_t>(i)] = FElem{0, {}};
      continue;
    }
    int pivot = l.front();
    std::vector<int> le, gt;
    for (std::size_t j = 1; j < l.size(); ++j)
      (l[j] <= pivot ? le : gt).push_back(l[j]);
    divide[static_cast<std::size_t>(i)] =
        FElem{pivot, {carrier.index_of(list_name(le)), carrier.index_of(list_name(gt))}};
  }
  Coalgebra div_coalg = make_coalgebra(sig, carrier, std::move(divide));

  // merge: nil -> e, piv_c(w, v) -> w ++ [c] ++ v, truncated to max_len;
  // hylomorphism evaluation only reaches in-bound concatenations
  Algebra merge = make_algebra_by(
      sig, carrier,
      [&](const FElem& e) {
        if (e.op == 0) return carrier.index_of("e");
        std::vector<int> w = list_letters(carrier.name(e.args[0]));
        std::vector<int> v = list_letters(carrier.name(e.args[1]));
        std::vector<int> out = w;
        out.push_back(e.op); // op index of piv_c is c
        out.insert(out.end(), v.begin(), v.end());
        if (static_cast<int>(out.size()) > max_len) out.resize(static_cast<std::size_t>(max_len));
        return carrier.index_of(list_name(out));
      },
      cap);

  return QuicksortExample{sig, carrier, std::move(div_coalg), std::move(merge), alphabet, max_len};
}

WfRelationExample wf_relation_example() {
  FinSet carrier = FinSet::from_names({"a", "b", "c"});
  // a R b, b R c, a R c; predecessors: c(a) = {}, c(b) = {a}, c(c) = {a,b}
  std::vector<FElem> st(3);
  st[static_cast<std::size_t>(carrier.index_of("a"))] = FElem{FElem::kSubset, {}};
  st[static_cast<std::size_t>(carrier.index_of("b"))] = FElem{FElem::kSubset, {carrier.index_of("a")}};
  st[static_cast<std::size_t>(carrier.index_of("c"))] =
      FElem{FElem::kSubset, {carrier.index_of("a"), carrier.index_of("b")}};
  WfRelationExample ex{make_coalgebra(Signature::powerset(), carrier, std::move(st)),
                       {{"a", "b"}, {"b", "c"}, {"a", "c"}}};
  return ex;
}

} // namespace unchained::examples
