#include "ptree/coalescent.hpp"

#include <algorithm>
#include <string>

#include "ptree/errors.hpp"

namespace ptree {
namespace {

struct Slot {
  i64 particle;
  i64 index;  // position among the particle's ordered slots
};

// Union-find over particles with the tree root tracked per cluster.
class Clusters {
 public:
  explicit Clusters(i64 n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    for (i64 i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
  }

  i64 find(i64 p) {
    i64 r = p;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(p)] != r) {
      i64 next = parent_[static_cast<std::size_t>(p)];
      parent_[static_cast<std::size_t>(p)] = r;
      p = next;
    }
    return r;
  }

  // Merge the cluster of `absorbed` into the cluster of `keep`.
  void unite(i64 keep, i64 absorbed) {
    i64 a = find(keep);
    i64 b = find(absorbed);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
  }

  i64 size_of(i64 p) { return size_[static_cast<std::size_t>(find(p))]; }

 private:
  std::vector<i64> parent_;
  std::vector<i64> size_;
};

struct MergeResult {
  std::vector<std::vector<i64>> slot_child;  // per particle, per slot (0-based)
  std::vector<i64> parent;                   // particle parent, 0-based, -1 for root
  i64 root = 0;                              // 0-based
};

// Runs the n-1 merge steps on particles 0..n-1 with the given degrees.
MergeResult run_coalescent(const std::vector<i64>& degrees, Rng& rng, CoalescentTrace* trace) {
  const i64 n = static_cast<i64>(degrees.size());
  MergeResult result;
  result.slot_child.resize(static_cast<std::size_t>(n));
  result.parent.assign(static_cast<std::size_t>(n), -1);

  std::vector<Slot> free_slots;
  free_slots.reserve(static_cast<std::size_t>(n - 1));
  for (i64 p = 0; p < n; ++p) {
    result.slot_child[static_cast<std::size_t>(p)].assign(
        static_cast<std::size_t>(degrees[static_cast<std::size_t>(p)]), -1);
    for (i64 k = 0; k < degrees[static_cast<std::size_t>(p)]; ++k) {
      free_slots.push_back(Slot{p, k});
    }
  }

  Clusters clusters(n);
  // registry of tree roots, one per cluster, with positions for swap-remove
  std::vector<i64> registry(static_cast<std::size_t>(n));
  std::vector<i64> registry_pos(static_cast<std::size_t>(n));
  for (i64 p = 0; p < n; ++p) {
    registry[static_cast<std::size_t>(p)] = p;
    registry_pos[static_cast<std::size_t>(p)] = p;
  }
  std::vector<i64> tree_root(static_cast<std::size_t>(n));
  for (i64 p = 0; p < n; ++p) tree_root[static_cast<std::size_t>(p)] = p;

  std::map<i64, i64> histogram;
  if (trace) {
    histogram[1] = n;
    trace->step_histograms.clear();
    trace->step_histograms.push_back(histogram);
  }

  for (i64 step = 0; step < n - 1; ++step) {
    // Uniform free slot, swap-removed.
    std::size_t si = static_cast<std::size_t>(rng.below(free_slots.size()));
    Slot slot = free_slots[si];
    free_slots[si] = free_slots.back();
    free_slots.pop_back();

    i64 owner_rep = clusters.find(slot.particle);
    // Uniform other cluster; rejecting the owner's costs O(1) retries.
    i64 other_root;
    do {
      other_root = registry[static_cast<std::size_t>(rng.below(registry.size()))];
    } while (clusters.find(other_root) == owner_rep);

    if (trace) {
      i64 sa = clusters.size_of(slot.particle);
      i64 sb = clusters.size_of(other_root);
      if (--histogram[sa] == 0) histogram.erase(sa);
      if (--histogram[sb] == 0) histogram.erase(sb);
      ++histogram[sa + sb];
    }

    result.slot_child[static_cast<std::size_t>(slot.particle)]
                     [static_cast<std::size_t>(slot.index)] = other_root;
    result.parent[static_cast<std::size_t>(other_root)] = slot.particle;
    i64 keep_root = tree_root[static_cast<std::size_t>(owner_rep)];
    clusters.unite(slot.particle, other_root);
    tree_root[static_cast<std::size_t>(clusters.find(slot.particle))] = keep_root;

    // Drop the absorbed cluster's root from the registry.
    i64 pos = registry_pos[static_cast<std::size_t>(other_root)];
    i64 moved = registry.back();
    registry[static_cast<std::size_t>(pos)] = moved;
    registry_pos[static_cast<std::size_t>(moved)] = pos;
    registry.pop_back();

    if (trace) trace->step_histograms.push_back(histogram);
  }
  result.root = tree_root[static_cast<std::size_t>(clusters.find(0))];
  return result;
}

void check_degrees(const std::vector<i64>& degrees) {
  if (degrees.empty()) throw validation_error("need at least one particle");
  i64 sum = 0;
  for (i64 d : degrees) {
    if (d < 0) throw validation_error("degrees must be non-negative");
    sum += d;
  }
  if (sum != static_cast<i64>(degrees.size()) - 1) {
    throw validation_error("degree sum must be n - 1, got " + std::to_string(sum));
  }
}

}  // namespace

LabelledTree coalesce_labelled(const std::vector<i64>& degrees, RngSeed seed,
                               CoalescentTrace* trace) {
  check_degrees(degrees);
  Rng rng(seed);
  // Uniform random degree assignment via an explicit permutation.
  std::vector<i64> assigned = degrees;
  rng.shuffle(assigned);
  MergeResult merged = run_coalescent(assigned, rng, trace);
  LabelledTree out;
  out.parent.resize(degrees.size());
  for (std::size_t p = 0; p < degrees.size(); ++p) {
    out.parent[p] = merged.parent[p] + 1;  // 0 marks the root
  }
  out.root = merged.root + 1;
  return out;
}

PlaneTree coalesce_plane(const DegreeSequence& s, RngSeed seed, CoalescentTrace* trace) {
  if (!s.is_tree()) throw validation_error("coalesce_plane requires a tree sequence (r = 1)");
  Rng rng(seed);
  // Canonical labelling: particle i carries the i-th smallest degree. Equal
  // degrees make the particles interchangeable, so no permutation is needed.
  std::vector<i64> degrees = s.degree_multiset();
  MergeResult merged = run_coalescent(degrees, rng, trace);
  // Read the plane tree off the ordered slots.
  std::vector<i64> counts;
  counts.reserve(degrees.size());
  std::vector<i64> stack{merged.root};
  while (!stack.empty()) {
    i64 p = stack.back();
    stack.pop_back();
    const auto& slots = merged.slot_child[static_cast<std::size_t>(p)];
    counts.push_back(static_cast<i64>(slots.size()));
    for (std::size_t k = slots.size(); k-- > 0;) {
      stack.push_back(slots[k]);
    }
  }
  return PlaneTree::from_child_counts(std::move(counts));
}

Rational labelled_tree_probability(const DegreeSequence& s) {
  if (!s.is_tree()) throw validation_error("labelled_tree_probability requires a tree sequence");
  const i64 n = s.size();
  BigInt num = 1;
  for (std::size_t i = 0; i < s.counts().size(); ++i) {
    num *= ipow(factorial(static_cast<i64>(i)), s.counts()[i]);
    num *= factorial(s.counts()[i]);
  }
  BigInt den = factorial(n - 1) * factorial(n);
  return Rational(num, den);
}

PlaneTree to_plane_tree_by_label_order(const LabelledTree& t) {
  const i64 n = t.size();
  if (n == 0) throw validation_error("empty labelled tree");
  std::vector<std::vector<i64>> children(static_cast<std::size_t>(n));
  for (i64 v = 1; v <= n; ++v) {
    i64 p = t.parent[static_cast<std::size_t>(v - 1)];
    if (p != 0) children[static_cast<std::size_t>(p - 1)].push_back(v);
  }
  std::vector<i64> counts;
  counts.reserve(static_cast<std::size_t>(n));
  std::vector<i64> stack{t.root};
  while (!stack.empty()) {
    i64 v = stack.back();
    stack.pop_back();
    auto& kids = children[static_cast<std::size_t>(v - 1)];
    counts.push_back(static_cast<i64>(kids.size()));
    for (std::size_t k = kids.size(); k-- > 0;) stack.push_back(kids[k]);
  }
  return PlaneTree::from_child_counts(std::move(counts));
}

}  // namespace ptree
