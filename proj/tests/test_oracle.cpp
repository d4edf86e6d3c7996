#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "ptree/errors.hpp"
#include "ptree/oracle.hpp"

using namespace ptree;

TEST_CASE("enumerate_trees produces complete sorted duplicate-free catalogues") {
  TreeCatalogue c = enumerate_trees(DegreeSequence::validate({3, 1, 2}));
  CHECK(c.trees.size() == 10);
  CHECK(std::is_sorted(c.trees.begin(), c.trees.end()));
  CHECK(std::adjacent_find(c.trees.begin(), c.trees.end()) == c.trees.end());
  for (const auto& t : c.trees) CHECK(t.degree_sequence() == c.degseq);

  CHECK(enumerate_trees(DegreeSequence::validate({1})).trees.size() == 1);
  CHECK(enumerate_trees(DegreeSequence::validate({4, 0, 3})).trees.size() == 5);
}

TEST_CASE("enumeration errors") {
  DegreeSequence big = DegreeSequence::validate({8, 0, 7});
  CHECK_THROWS_AS(enumerate_trees(big, 12), validation_error);  // |s| = 15 over cap
  CHECK_THROWS_AS(enumerate_trees(DegreeSequence::validate({2, 1})), validation_error);
}

TEST_CASE("enumerate_marked") {
  CHECK(enumerate_marked(DegreeSequence::validate({3, 1, 2})).size() == 60);
  CHECK(enumerate_marked(DegreeSequence::validate({1})).size() == 1);
  CHECK(enumerate_marked(DegreeSequence::validate({2, 0, 1})).size() == 3);
}

TEST_CASE("enumerate_forests matches the forest-count formula") {
  auto forests = enumerate_forests(DegreeSequence::validate({2, 1}));
  CHECK(forests.size() == 2);
  for (const DegreeSequence& s :
       {DegreeSequence::validate({3, 1, 1}), DegreeSequence::validate({4, 0, 2}),
        DegreeSequence::validate({3, 3}), DegreeSequence::validate({2, 1})}) {
    auto fs = enumerate_forests(s);
    CHECK(BigInt(fs.size()) == count_forests(s));
    for (const auto& f : fs) {
      CHECK(static_cast<i64>(f.size()) == s.roots());
      i64 nodes = 0;
      for (const auto& t : f) nodes += t.node_count();
      CHECK(nodes == s.size());
    }
  }
}

TEST_CASE("enumerate_tree_sequences lists every valid tree sequence") {
  auto seqs = enumerate_tree_sequences(4);
  CHECK(seqs.size() == 7);  // p(0)+p(1)+p(2)+p(3) = 1+1+2+3
  std::set<std::vector<i64>> unique(seqs.begin(), seqs.end());
  CHECK(unique.size() == seqs.size());
  for (const auto& counts : seqs) {
    DegreeSequence s = DegreeSequence::validate(counts);
    CHECK(s.is_tree());
    CHECK(s.size() <= 4);
  }
}

TEST_CASE("find_tree locates catalogue entries") {
  TreeCatalogue c = enumerate_trees(DegreeSequence::validate({3, 1, 2}));
  for (std::size_t i = 0; i < c.trees.size(); ++i) {
    CHECK(find_tree(c, c.trees[i]) == i);
  }
  CHECK(!find_tree(c, PlaneTree::from_child_counts({0})).has_value());
}

TEST_CASE("chi_square_uniformity behaviour") {
  // Perfectly uniform synthetic counts.
  ChiSquareReport uniform = chi_square_uniformity(std::vector<i64>(10, 1000), 1e-3);
  CHECK(uniform.pass);
  CHECK(uniform.p_value > 0.999);

  // All mass on one tree out of 10.
  std::vector<i64> degenerate(10, 0);
  degenerate[0] = 10000;
  ChiSquareReport bad = chi_square_uniformity(degenerate, 1e-3);
  CHECK(!bad.pass);
  CHECK(bad.p_value < 1e-9);

  CHECK_THROWS_AS(chi_square_uniformity({}, 0.05), validation_error);

  ChiSquareReport warn = chi_square_uniformity(std::vector<i64>(10, 2), 1e-3);
  CHECK(warn.low_expected_warning);
}

TEST_CASE("exact_law computes exact pmfs") {
  auto marked = enumerate_marked(DegreeSequence::validate({2, 0, 1}));
  auto depth_law = exact_law(marked, [](const MarkedTree& mt) { return mt.tree.depth(mt.mark); });
  CHECK(depth_law.size() == 2);
  CHECK(depth_law.at(0) == Rational(1, 3));
  CHECK(depth_law.at(1) == Rational(2, 3));

  auto constant_law = exact_law(marked, [](const MarkedTree&) { return i64{7}; });
  CHECK(constant_law.size() == 1);
  CHECK(constant_law.at(7) == 1);
}
