#include "ptree/oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "ptree/errors.hpp"

namespace ptree {
namespace {

void check_cap(const DegreeSequence& s, i64 max_size) {
  if (s.size() > max_size) {
    throw validation_error("enumeration cap exceeded: |s| = " + std::to_string(s.size()) +
                           " > " + std::to_string(max_size));
  }
}

// Enumerates, in lexicographic order, all arrangements of the degree multiset
// whose walk first hits -roots exactly at the last step. With roots = 1 these
// are precisely the Lukasiewicz excursions of trees.
void backtrack(std::vector<i64>& remaining, i64 placed, i64 n, i64 roots, i64 sum,
               std::vector<i64>& prefix, const std::function<void(const std::vector<i64>&)>& emit) {
  if (placed == n) {
    emit(prefix);
    return;
  }
  for (std::size_t d = 0; d < remaining.size(); ++d) {
    if (remaining[d] == 0) continue;
    i64 next = sum + static_cast<i64>(d) - 1;
    // The walk may touch -j only at the step completing the j-th tree and must
    // stay above -roots before the final step.
    bool last = placed + 1 == n;
    if (last) {
      if (next != -roots) continue;
    } else {
      if (next <= -roots) continue;
    }
    --remaining[d];
    prefix.push_back(static_cast<i64>(d));
    backtrack(remaining, placed + 1, n, roots, next, prefix, emit);
    prefix.pop_back();
    ++remaining[d];
  }
}

}  // namespace

TreeCatalogue enumerate_trees(const DegreeSequence& s, i64 max_size) {
  if (!s.is_tree()) throw validation_error("enumerate_trees requires a tree sequence (r = 1)");
  check_cap(s, max_size);
  TreeCatalogue catalogue{s, {}};
  std::vector<i64> remaining = s.counts();
  std::vector<i64> prefix;
  backtrack(remaining, 0, s.size(), 1, 0, prefix, [&](const std::vector<i64>& counts) {
    catalogue.trees.push_back(PlaneTree::from_child_counts(counts));
  });
  return catalogue;
}

std::vector<MarkedTree> enumerate_marked(const DegreeSequence& s, i64 max_size) {
  TreeCatalogue catalogue = enumerate_trees(s, max_size);
  std::vector<MarkedTree> marked;
  marked.reserve(catalogue.trees.size() * static_cast<std::size_t>(s.size()));
  for (const auto& t : catalogue.trees) {
    for (i64 rank = 1; rank <= s.size(); ++rank) {
      marked.push_back(MarkedTree{t, NodeId{rank}});
    }
  }
  return marked;
}

std::vector<std::vector<PlaneTree>> enumerate_forests(const DegreeSequence& s, i64 max_size) {
  check_cap(s, max_size);
  std::vector<std::vector<PlaneTree>> forests;
  std::vector<i64> remaining = s.counts();
  std::vector<i64> prefix;
  const i64 roots = s.roots();
  backtrack(remaining, 0, s.size(), roots, 0, prefix, [&](const std::vector<i64>& counts) {
    // Split the forest walk at the first hits of -1, ..., -roots.
    std::vector<PlaneTree> forest;
    i64 sum = 0;
    i64 low = 0;
    std::size_t start = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      sum += counts[k] - 1;
      if (sum < low) {
        low = sum;
        forest.push_back(PlaneTree::from_child_counts(
            std::vector<i64>(counts.begin() + static_cast<std::ptrdiff_t>(start),
                             counts.begin() + static_cast<std::ptrdiff_t>(k + 1))));
        start = k + 1;
      }
    }
    forests.push_back(std::move(forest));
  });
  return forests;
}

std::vector<std::vector<i64>> enumerate_tree_sequences(i64 max_size) {
  // A tree sequence of size n is a partition of n-1 into parts >= 1 read as
  // degree counts, with n_0 = n - (number of parts).
  std::vector<std::vector<i64>> sequences;
  for (i64 n = 1; n <= max_size; ++n) {
    std::vector<i64> parts;
    // Enumerate partitions of n-1 with non-increasing parts.
    auto rec = [&](auto&& self, i64 left, i64 max_part) -> void {
      if (left == 0) {
        i64 delta = parts.empty() ? 0 : parts.front();
        std::vector<i64> counts(static_cast<std::size_t>(delta) + 1, 0);
        counts[0] = n - static_cast<i64>(parts.size());
        for (i64 p : parts) ++counts[static_cast<std::size_t>(p)];
        sequences.push_back(std::move(counts));
        return;
      }
      for (i64 p = std::min(left, max_part); p >= 1; --p) {
        parts.push_back(p);
        self(self, left - p, p);
        parts.pop_back();
      }
    };
    rec(rec, n - 1, n - 1);
  }
  return sequences;
}

std::optional<std::size_t> find_tree(const TreeCatalogue& catalogue, const PlaneTree& t) {
  auto it = std::lower_bound(catalogue.trees.begin(), catalogue.trees.end(), t);
  if (it == catalogue.trees.end() || !(*it == t)) return std::nullopt;
  return static_cast<std::size_t>(it - catalogue.trees.begin());
}

}  // namespace ptree
