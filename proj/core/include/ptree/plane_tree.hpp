#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "ptree/degree_sequence.hpp"
#include "ptree/numeric.hpp"

namespace ptree {

// Nodes are addressed by their 1-based rank in depth-first (lexicographic)
// order; words over N are never stored.
struct NodeId {
  i64 rank = 0;
  friend bool operator==(NodeId a, NodeId b) { return a.rank == b.rank; }
  friend auto operator<=>(NodeId a, NodeId b) { return a.rank <=> b.rank; }
};

enum class PathKind { height, contour, lukasiewicz };

// Integer-valued path sampled at integral times 0..span; consumers interpolate
// linearly in between.
struct LatticePath {
  PathKind kind = PathKind::height;
  std::vector<i64> values;
  i64 span() const { return static_cast<i64>(values.size()) - 1; }
};

// Plane tree stored as the depth-first sequence of child counts, equivalently
// the increments (+1 each) of its Lukasiewicz path. This is the single source
// of truth; everything else is derived.
class PlaneTree {
 public:
  // Validates the excursion condition: partial sums of (c_k - 1) stay >= 0
  // before the end and reach exactly -1 at the end.
  static PlaneTree from_child_counts(std::vector<i64> counts);

  PlaneTree(const PlaneTree& other) : child_counts_(other.child_counts_) {}
  PlaneTree(PlaneTree&& other) noexcept
      : child_counts_(std::move(other.child_counts_)),
        parent_cache_(other.parent_cache_.exchange(nullptr)) {}
  PlaneTree& operator=(const PlaneTree& other) {
    if (this != &other) {
      child_counts_ = other.child_counts_;
      reset_cache();
    }
    return *this;
  }
  PlaneTree& operator=(PlaneTree&& other) noexcept {
    if (this != &other) {
      child_counts_ = std::move(other.child_counts_);
      reset_cache();
      parent_cache_.store(other.parent_cache_.exchange(nullptr));
    }
    return *this;
  }
  ~PlaneTree() { reset_cache(); }

  i64 node_count() const { return static_cast<i64>(child_counts_.size()); }
  const std::vector<i64>& child_counts() const { return child_counts_; }
  i64 child_count(NodeId u) const {
    check_rank(u);
    return child_counts_[static_cast<std::size_t>(u.rank - 1)];
  }

  LatticePath lukasiewicz() const;  // length n+1, ends at -1
  LatticePath height() const;       // length n, H(i) = depth of node with rank i+1
  LatticePath contour() const;      // length 2(n-1)+1 for n >= 2, single 0 for n = 1

  // Flip the order of the children of every node.
  PlaneTree mirror() const;

  i64 depth(NodeId u) const;
  NodeId parent(NodeId u) const;  // error on the root
  NodeId lca(NodeId u, NodeId v) const;
  i64 distance(NodeId u, NodeId v) const;

  DegreeSequence degree_sequence() const;

  // Parent rank per node (0 for the root); built on first use and published
  // once, so concurrent readers always see a fully built array.
  const std::vector<i64>& parents() const;

  friend bool operator==(const PlaneTree& a, const PlaneTree& b) {
    return a.child_counts_ == b.child_counts_;
  }
  friend bool operator<(const PlaneTree& a, const PlaneTree& b) {
    return a.child_counts_ < b.child_counts_;
  }

 private:
  explicit PlaneTree(std::vector<i64> counts) : child_counts_(std::move(counts)) {}
  void check_rank(NodeId u) const;
  void reset_cache() {
    delete parent_cache_.exchange(nullptr);
  }

  std::vector<i64> child_counts_;
  mutable std::atomic<const std::vector<i64>*> parent_cache_{nullptr};
};

}  // namespace ptree
