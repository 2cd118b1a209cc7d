#include "unchained/term.hpp"

#include <algorithm>

namespace unchained {

TermId TermPool::intern(int op, std::vector<TermId> children) {
  if (op == FElem::kSubset) {
    if (!sig_.is_powerset()) throw InvalidValueError("subset term over a polynomial signature");
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()), children.end());
  } else {
    if (sig_.is_powerset()) throw InvalidValueError("operation term over the powerset functor");
    if (static_cast<int>(children.size()) != sig_.op(op).arity)
      throw InvalidValueError("arity mismatch in term construction");
  }
  for (TermId c : children)
    if (c < 0 || c >= node_count()) throw InvalidValueError("child term not in pool");

  auto key = std::make_pair(op, children);
  auto it = intern_.find(key);
  if (it != intern_.end()) return it->second;

  int depth = 0;
  for (TermId c : children) depth = std::max(depth, 1 + nodes_[static_cast<std::size_t>(c)].depth);
  TermId id = static_cast<TermId>(nodes_.size());
  nodes_.push_back(Node{op, std::move(children), depth});
  intern_.emplace(std::move(key), id);
  return id;
}

int TermPool::dag_size(TermId t) const {
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<TermId> stack{t};
  int count = 0;
  while (!stack.empty()) {
    TermId cur = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(cur)]) continue;
    seen[static_cast<std::size_t>(cur)] = 1;
    ++count;
    for (TermId c : nodes_[static_cast<std::size_t>(cur)].children) stack.push_back(c);
  }
  return count;
}

std::string TermPool::to_string(TermId t) const {
  const Node& n = nodes_[static_cast<std::size_t>(t)];
  if (n.op == FElem::kSubset) {
    std::string s = "{";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) s += ",";
      s += to_string(n.children[i]);
    }
    return s + "}";
  }
  const OpSym& op = sig_.op(n.op);
  if (op.arity == 0) return op.name;
  std::string s = op.name + "(";
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) s += ",";
    s += to_string(n.children[i]);
  }
  return s + ")";
}

std::vector<std::vector<TermId>> enumerate_terms_by_depth(TermPool& pool, int max_depth,
                                                          std::uint64_t cap) {
  const Signature& sig = pool.sig();
  std::vector<std::vector<TermId>> levels;
  levels.emplace_back(); // depth < 0: nothing
  for (int d = 0; d < max_depth; ++d) {
    const std::vector<TermId>& prev = levels.back();
    const int n = static_cast<int>(prev.size());
    std::uint64_t next_size = functor_size(sig, n, cap);
    check_cap(next_size, cap);
    std::vector<TermId> next;
    next.reserve(static_cast<std::size_t>(next_size));
    if (sig.is_powerset()) {
      for (std::uint64_t mask = 0; mask < next_size; ++mask) {
        std::vector<TermId> members;
        for (int i = 0; i < n; ++i)
          if (mask & (std::uint64_t(1) << i)) members.push_back(prev[static_cast<std::size_t>(i)]);
        next.push_back(pool.intern(FElem::kSubset, std::move(members)));
      }
    } else {
      for (int k = 0; k < sig.op_count(); ++k) {
        const int arity = sig.op(k).arity;
        if (arity > 0 && n == 0) continue;
        std::uint64_t count = 1;
        for (int i = 0; i < arity; ++i) count *= static_cast<std::uint64_t>(n);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
          std::vector<TermId> children(static_cast<std::size_t>(arity));
          std::uint64_t rest = idx;
          for (int i = 0; i < arity; ++i) {
            children[static_cast<std::size_t>(i)] =
                prev[static_cast<std::size_t>(rest % static_cast<std::uint64_t>(n))];
            rest /= static_cast<std::uint64_t>(n);
          }
          next.push_back(pool.intern(k, std::move(children)));
        }
      }
    }
    // terms of depth < d+1 = F(terms of depth < d), deduplicated
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    levels.push_back(std::move(next));
  }
  return levels;
}

} // namespace unchained
