#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ptree/degree_sequence.hpp"
#include "ptree/numeric.hpp"
#include "ptree/plane_tree.hpp"
#include "ptree/stats.hpp"

namespace ptree {

struct MarkedTree {
  PlaneTree tree;
  NodeId mark;
};

// Complete list of plane trees with degree sequence s, sorted lexicographically
// by child-count sequence. Ground truth for the samplers and the exact laws.
struct TreeCatalogue {
  DegreeSequence degseq;
  std::vector<PlaneTree> trees;
};

inline constexpr i64 kDefaultEnumerationCap = 12;

// Backtracking over Lukasiewicz excursions constrained by the remaining degree
// multiset; complete, duplicate-free, and independent of the cycle lemma.
TreeCatalogue enumerate_trees(const DegreeSequence& s, i64 max_size = kDefaultEnumerationCap);

std::vector<MarkedTree> enumerate_marked(const DegreeSequence& s,
                                         i64 max_size = kDefaultEnumerationCap);

// All ordered forests (r trees) with degree sequence s, r >= 1.
std::vector<std::vector<PlaneTree>> enumerate_forests(const DegreeSequence& s,
                                                      i64 max_size = kDefaultEnumerationCap);

// Every valid tree degree sequence with |s| <= max_size, as count vectors.
std::vector<std::vector<i64>> enumerate_tree_sequences(i64 max_size);

// Index of t in the catalogue (which is sorted), if present.
std::optional<std::size_t> find_tree(const TreeCatalogue& catalogue, const PlaneTree& t);

// Exact pmf of an integer statistic under the uniform law on `items`.
template <class Item, class Fn>
std::map<i64, Rational> exact_law(const std::vector<Item>& items, Fn&& statistic) {
  std::map<i64, i64> counts;
  for (const auto& item : items) ++counts[statistic(item)];
  std::map<i64, Rational> pmf;
  for (const auto& [value, count] : counts) {
    pmf.emplace(value, Rational(count, static_cast<i64>(items.size())));
  }
  return pmf;
}

}  // namespace ptree
