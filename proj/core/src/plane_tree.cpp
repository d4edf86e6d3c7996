#include "ptree/plane_tree.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ptree/errors.hpp"

namespace ptree {
namespace {

// CSR children layout indexed by rank: block of node p is
// child[offset[p] .. offset[p]+c_p), ranks ascending = plane order.
struct ChildrenCsr {
  std::vector<i64> offset;  // size n+1, offset[0] unused
  std::vector<i64> child;   // size n-1
};

ChildrenCsr build_children(i64 n, const std::vector<i64>& parents) {
  ChildrenCsr csr;
  csr.offset.assign(static_cast<std::size_t>(n) + 1, 0);
  for (i64 rank = 2; rank <= n; ++rank) {
    ++csr.offset[static_cast<std::size_t>(parents[static_cast<std::size_t>(rank - 1)])];
  }
  for (std::size_t i = 1; i < csr.offset.size(); ++i) csr.offset[i] += csr.offset[i - 1];
  csr.child.assign(static_cast<std::size_t>(n > 0 ? n - 1 : 0), 0);
  for (i64 rank = n; rank >= 2; --rank) {
    i64 pr = parents[static_cast<std::size_t>(rank - 1)];
    csr.child[static_cast<std::size_t>(--csr.offset[static_cast<std::size_t>(pr)])] = rank;
  }
  return csr;
}

}  // namespace

PlaneTree PlaneTree::from_child_counts(std::vector<i64> counts) {
  if (counts.empty()) throw validation_error("tree must have at least one node");
  i64 sum = 0;
  const i64 n = static_cast<i64>(counts.size());
  for (i64 k = 0; k < n; ++k) {
    if (counts[static_cast<std::size_t>(k)] < 0) {
      throw validation_error("child counts must be non-negative");
    }
    sum += counts[static_cast<std::size_t>(k)] - 1;
    if (k + 1 < n && sum < 0) {
      throw validation_error("invalid excursion: prefix sum drops below 0 at position " +
                             std::to_string(k + 1));
    }
  }
  if (sum != -1) {
    throw validation_error("invalid excursion: final sum is " + std::to_string(sum) +
                           ", expected -1");
  }
  return PlaneTree(std::move(counts));
}

void PlaneTree::check_rank(NodeId u) const {
  if (u.rank < 1 || u.rank > node_count()) {
    throw validation_error("node rank " + std::to_string(u.rank) + " out of range [1, " +
                           std::to_string(node_count()) + "]");
  }
}

LatticePath PlaneTree::lukasiewicz() const {
  LatticePath p;
  p.kind = PathKind::lukasiewicz;
  p.values.reserve(child_counts_.size() + 1);
  i64 s = 0;
  p.values.push_back(s);
  for (i64 c : child_counts_) {
    s += c - 1;
    p.values.push_back(s);
  }
  return p;
}

LatticePath PlaneTree::height() const {
  LatticePath p;
  p.kind = PathKind::height;
  p.values.reserve(child_counts_.size());
  std::vector<i64> pending;  // unvisited-children counters along the current path
  i64 depth = 0;
  for (std::size_t k = 0; k < child_counts_.size(); ++k) {
    if (k > 0) --pending.back();  // this node fills a slot of the stack top
    p.values.push_back(depth);
    i64 c = child_counts_[k];
    if (c > 0) {
      pending.push_back(c);
      ++depth;
    } else {
      while (!pending.empty() && pending.back() == 0) {
        pending.pop_back();
        --depth;
      }
    }
  }
  return p;
}

const std::vector<i64>& PlaneTree::parents() const {
  if (const auto* cached = parent_cache_.load(std::memory_order_acquire)) {
    return *cached;
  }
  auto* built = new std::vector<i64>(child_counts_.size(), 0);
  std::vector<i64> stack;      // ranks with unclaimed children
  std::vector<i64> remaining;  // how many children each still claims
  for (i64 rank = 1; rank <= node_count(); ++rank) {
    if (rank > 1) {
      (*built)[static_cast<std::size_t>(rank - 1)] = stack.back();
      if (--remaining.back() == 0) {
        stack.pop_back();
        remaining.pop_back();
      }
    }
    i64 c = child_counts_[static_cast<std::size_t>(rank - 1)];
    if (c > 0) {
      stack.push_back(rank);
      remaining.push_back(c);
    }
  }
  const std::vector<i64>* expected = nullptr;
  if (!parent_cache_.compare_exchange_strong(expected, built, std::memory_order_acq_rel,
                                             std::memory_order_acquire)) {
    delete built;
    return *expected;
  }
  return *built;
}

LatticePath PlaneTree::contour() const {
  LatticePath p;
  p.kind = PathKind::contour;
  const i64 n = node_count();
  if (n == 1) {
    p.values = {0};
    return p;
  }
  auto csr = build_children(n, parents());
  p.values.reserve(static_cast<std::size_t>(2 * (n - 1) + 1));
  std::vector<i64> cursor(static_cast<std::size_t>(n), 0);
  i64 node = 1;
  i64 depth = 0;
  p.values.push_back(0);
  while (true) {
    i64 c = child_counts_[static_cast<std::size_t>(node - 1)];
    i64& cur = cursor[static_cast<std::size_t>(node - 1)];
    if (cur < c) {
      node = csr.child[static_cast<std::size_t>(csr.offset[static_cast<std::size_t>(node)] + cur)];
      ++cur;
      ++depth;
    } else {
      if (node == 1) break;
      node = parents()[static_cast<std::size_t>(node - 1)];
      --depth;
    }
    p.values.push_back(depth);
  }
  return p;
}

PlaneTree PlaneTree::mirror() const {
  const i64 n = node_count();
  auto csr = build_children(n, parents());
  // Depth-first emit visiting children right-to-left: pushing them in plane
  // order makes the stack pop them reversed.
  std::vector<i64> counts;
  counts.reserve(static_cast<std::size_t>(n));
  std::vector<i64> stack{1};
  while (!stack.empty()) {
    i64 node = stack.back();
    stack.pop_back();
    i64 c = child_counts_[static_cast<std::size_t>(node - 1)];
    counts.push_back(c);
    i64 base = csr.offset[static_cast<std::size_t>(node)];
    for (i64 k = 0; k < c; ++k) {
      stack.push_back(csr.child[static_cast<std::size_t>(base + k)]);
    }
  }
  return PlaneTree(std::move(counts));
}

i64 PlaneTree::depth(NodeId u) const {
  check_rank(u);
  const auto& par = parents();
  i64 d = 0;
  for (i64 r = u.rank; r != 1; r = par[static_cast<std::size_t>(r - 1)]) ++d;
  return d;
}

NodeId PlaneTree::parent(NodeId u) const {
  check_rank(u);
  if (u.rank == 1) throw validation_error("the root has no parent");
  return NodeId{parents()[static_cast<std::size_t>(u.rank - 1)]};
}

NodeId PlaneTree::lca(NodeId u, NodeId v) const {
  check_rank(u);
  check_rank(v);
  const auto& par = parents();
  i64 du = depth(u);
  i64 dv = depth(v);
  i64 a = u.rank;
  i64 b = v.rank;
  while (du > dv) {
    a = par[static_cast<std::size_t>(a - 1)];
    --du;
  }
  while (dv > du) {
    b = par[static_cast<std::size_t>(b - 1)];
    --dv;
  }
  while (a != b) {
    a = par[static_cast<std::size_t>(a - 1)];
    b = par[static_cast<std::size_t>(b - 1)];
  }
  return NodeId{a};
}

i64 PlaneTree::distance(NodeId u, NodeId v) const {
  NodeId w = lca(u, v);
  return depth(u) + depth(v) - 2 * depth(w);
}

DegreeSequence PlaneTree::degree_sequence() const {
  i64 delta = 0;
  for (i64 c : child_counts_) delta = std::max(delta, c);
  std::vector<i64> counts(static_cast<std::size_t>(delta) + 1, 0);
  for (i64 c : child_counts_) ++counts[static_cast<std::size_t>(c)];
  return DegreeSequence::validate(std::move(counts));
}

}  // namespace ptree
