#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "ptree/coalescent.hpp"
#include "ptree/errors.hpp"
#include "ptree/oracle.hpp"

using namespace ptree;

namespace {

// All rooted labelled trees on {1..n} by brute force over parent maps,
// bucketed by degree sequence. Independent of the coalescent code path.
std::map<std::vector<i64>, i64> labelled_tree_counts(i64 n) {
  std::map<std::vector<i64>, i64> counts;
  std::vector<i64> parent(static_cast<std::size_t>(n), 0);
  auto is_tree_rooted_at = [&](i64 root) {
    for (i64 v = 1; v <= n; ++v) {
      i64 cur = v;
      i64 hops = 0;
      while (cur != root) {
        cur = parent[static_cast<std::size_t>(cur - 1)];
        if (cur == 0 || ++hops > n) return false;
      }
    }
    return true;
  };
  auto record = [&](i64 root) {
    std::vector<i64> child_count(static_cast<std::size_t>(n), 0);
    for (i64 v = 1; v <= n; ++v) {
      if (v == root) continue;
      ++child_count[static_cast<std::size_t>(parent[static_cast<std::size_t>(v - 1)] - 1)];
    }
    i64 delta = *std::max_element(child_count.begin(), child_count.end());
    std::vector<i64> histogram(static_cast<std::size_t>(delta) + 1, 0);
    for (i64 c : child_count) ++histogram[static_cast<std::size_t>(c)];
    while (histogram.size() > 1 && histogram.back() == 0) histogram.pop_back();
    ++counts[histogram];
  };
  auto rec = [&](auto&& self, i64 root, i64 v) -> void {
    if (v > n) {
      if (is_tree_rooted_at(root)) record(root);
      return;
    }
    if (v == root) {
      self(self, root, v + 1);
      return;
    }
    for (i64 p = 1; p <= n; ++p) {
      if (p == v) continue;
      parent[static_cast<std::size_t>(v - 1)] = p;
      self(self, root, v + 1);
    }
    parent[static_cast<std::size_t>(v - 1)] = 0;
  };
  for (i64 root = 1; root <= n; ++root) rec(rec, root, 1);
  return counts;
}

std::string labelled_key(const LabelledTree& t) {
  std::string key = std::to_string(t.root) + ":";
  for (i64 p : t.parent) key += std::to_string(p) + ",";
  return key;
}

}  // namespace

TEST_CASE("degenerate coalescents") {
  LabelledTree single = coalesce_labelled({0}, RngSeed{1});
  CHECK(single.size() == 1);
  CHECK(single.root == 1);
  CHECK(single.parent == std::vector<i64>{0});

  CHECK(coalesce_plane(DegreeSequence::validate({1}), RngSeed{1}) ==
        PlaneTree::from_child_counts({0}));
  CHECK(coalesce_plane(DegreeSequence::validate({2, 0, 1}), RngSeed{5}) ==
        PlaneTree::from_child_counts({2, 0, 0}));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(coalesce_labelled({1, 1}, RngSeed{1}), validation_error);  // sum != n-1
  CHECK_THROWS_AS(coalesce_labelled({}, RngSeed{1}), validation_error);
  CHECK_THROWS_AS(coalesce_labelled({-1, 2}, RngSeed{1}), validation_error);
  CHECK_THROWS_AS(coalesce_plane(DegreeSequence::validate({2, 1}), RngSeed{1}),
                  validation_error);
}

TEST_CASE("labelled coalescent on three particles: uniform over the 3 centred trees") {
  std::map<std::string, i64> counts;
  for (i64 k = 0; k < 30000; ++k) {
    LabelledTree t =
        coalesce_labelled({2, 0, 0}, derive_seed(RngSeed{44}, static_cast<std::uint64_t>(k)));
    ++counts[labelled_key(t)];
  }
  REQUIRE(counts.size() == 3);
  std::vector<i64> observed;
  for (const auto& [key, c] : counts) observed.push_back(c);
  CHECK(chi_square_uniformity(observed, 1e-3).pass);
}

TEST_CASE("labelled_tree_probability matches brute-force counts up to n = 6") {
  for (i64 n = 1; n <= 6; ++n) {
    auto brutal = labelled_tree_counts(n);
    BigInt total = 0;
    for (const auto& [histogram, count] : brutal) {
      DegreeSequence s = DegreeSequence::validate(histogram);
      Rational p = labelled_tree_probability(s);
      CHECK(Rational(1) / p == Rational(count));
      total += count;
    }
    // Cayley: n^(n-1) rooted labelled trees in total.
    CHECK(total == ipow(BigInt(n), n - 1));
  }
  CHECK(labelled_tree_probability(DegreeSequence::validate({2, 0, 1})) == Rational(1, 3));
  CHECK(labelled_tree_probability(DegreeSequence::validate({1})) == 1);
}

TEST_CASE("coalesce_plane is uniform on the (3,1,2) catalogue") {
  DegreeSequence s = DegreeSequence::validate({3, 1, 2});
  TreeCatalogue catalogue = enumerate_trees(s);
  std::vector<i64> observed(catalogue.trees.size(), 0);
  for (i64 k = 0; k < 20000; ++k) {
    PlaneTree t = coalesce_plane(s, derive_seed(RngSeed{123}, static_cast<std::uint64_t>(k)));
    auto idx = find_tree(catalogue, t);
    REQUIRE(idx.has_value());
    ++observed[*idx];
  }
  CHECK(chi_square_uniformity(observed, 1e-3).pass);
}

TEST_CASE("plane per-tree probability is the reciprocal of the catalogue size") {
  for (const auto& counts : enumerate_tree_sequences(8)) {
    DegreeSequence s = DegreeSequence::validate(counts);
    // n * multinomial(n; n_i)^-1 from the merge accounting vs Eq-style count.
    Rational merge_prob = Rational(BigInt(s.size()), multinomial(s.size(), s.counts()));
    CHECK(merge_prob == Rational(1) / Rational(count_forests(s)));
  }
}

TEST_CASE("labelled trees project onto the uniform plane law when ordered by label") {
  DegreeSequence s = DegreeSequence::validate({3, 1, 2});
  TreeCatalogue catalogue = enumerate_trees(s);
  std::vector<i64> observed(catalogue.trees.size(), 0);
  std::vector<i64> degrees = s.degree_multiset();
  for (i64 k = 0; k < 20000; ++k) {
    LabelledTree lt =
        coalesce_labelled(degrees, derive_seed(RngSeed{321}, static_cast<std::uint64_t>(k)));
    auto idx = find_tree(catalogue, to_plane_tree_by_label_order(lt));
    REQUIRE(idx.has_value());
    ++observed[*idx];
  }
  CHECK(chi_square_uniformity(observed, 1e-3).pass);
}

TEST_CASE("trajectory: mass conservation and the cluster-count ladder") {
  DegreeSequence s = DegreeSequence::validate({5, 2, 1, 0, 1});
  CoalescentTrace trace;
  PlaneTree t = coalesce_plane(s, RngSeed{2718}, &trace);
  const i64 n = s.size();
  CHECK(t.node_count() == n);
  REQUIRE(static_cast<i64>(trace.step_histograms.size()) == n);
  for (i64 step = 0; step < n; ++step) {
    i64 mass = 0;
    i64 clusters = 0;
    for (const auto& [size, count] : trace.step_histograms[static_cast<std::size_t>(step)]) {
      mass += size * count;
      clusters += count;
    }
    CHECK(mass == n);
    CHECK(clusters == n - step);
  }
  CHECK(trace.step_histograms.back().at(n) == 1);
  CHECK(trace.step_histograms.front().at(1) == n);
}
