#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptree/degree_sequence.hpp"
#include "ptree/errors.hpp"
#include "ptree/oracle.hpp"

using namespace ptree;

TEST_CASE("validate classifies trees and forests") {
  DegreeSequence tree = DegreeSequence::validate({3, 1, 2});
  CHECK(tree.size() == 6);
  CHECK(tree.roots() == 1);
  CHECK(tree.is_tree());
  CHECK(tree.max_degree() == 2);

  DegreeSequence leaf = DegreeSequence::validate({1});
  CHECK(leaf.size() == 1);
  CHECK(leaf.is_tree());
  CHECK(leaf.max_degree() == 0);

  DegreeSequence forest = DegreeSequence::validate({2, 1});
  CHECK(forest.size() == 3);
  CHECK(forest.roots() == 2);
  CHECK(forest.is_forest());
}

TEST_CASE("validate rejects bad input") {
  CHECK_THROWS_AS(DegreeSequence::validate({}), validation_error);
  CHECK_THROWS_AS(DegreeSequence::validate({3, -1}), validation_error);
  CHECK_THROWS_AS(DegreeSequence::validate({0, 2}), validation_error);  // r = 0
  CHECK_THROWS_AS(DegreeSequence::validate({0, 0, 1}), validation_error);  // r < 0
  CHECK_THROWS_AS(DegreeSequence::validate({0}), validation_error);
}

TEST_CASE("equality ignores trailing zeros") {
  CHECK(DegreeSequence::validate({3, 1, 2}) == DegreeSequence::validate({3, 1, 2, 0, 0}));
  CHECK(DegreeSequence::validate({3, 1, 2}).counts() == std::vector<i64>{3, 1, 2});
}

TEST_CASE("stats computes exact rationals") {
  DegStats st = stats(DegreeSequence::validate({3, 1, 2}));
  CHECK(st.p == std::vector<Rational>{Rational(1, 2), Rational(1, 6), Rational(1, 3)});
  CHECK(st.sigma2 == Rational(4, 5));
  CHECK(st.delta == 2);

  CHECK(stats(DegreeSequence::validate({2, 0, 1})).sigma2 == Rational(1));
  CHECK_THROWS_AS(stats(DegreeSequence::validate({1})), validation_error);
}

TEST_CASE("sigma2 rational identity across all small tree sequences") {
  for (const auto& counts : enumerate_tree_sequences(9)) {
    DegreeSequence s = DegreeSequence::validate(counts);
    if (s.size() < 2) continue;
    DegStats st = stats(s);
    Rational p_total = 0;
    for (const auto& p : st.p) p_total += p;
    CHECK(p_total == 1);
    BigInt weighted = 0;
    for (std::size_t i = 1; i < counts.size(); ++i) {
      weighted += BigInt(counts[i]) * static_cast<i64>(i) * static_cast<i64>(i);
    }
    CHECK(st.sigma2 * (s.size() - 1) + (s.size() - 1) == Rational(weighted));
  }
}

TEST_CASE("count_forests matches known values") {
  CHECK(count_forests(DegreeSequence::validate({3, 1, 2})) == 10);
  CHECK(count_forests(DegreeSequence::validate({1})) == 1);
  CHECK(count_forests(DegreeSequence::validate({4, 0, 3})) == 5);  // Catalan(3)
  CHECK(count_forests(DegreeSequence::validate({2, 1})) == 2);
  CHECK(count_forests(DegreeSequence::validate({3, 1, 2, 0, 0, 0})) ==
        count_forests(DegreeSequence::validate({3, 1, 2})));
}

TEST_CASE("count_forests equals catalogue size for every small tree sequence") {
  for (const auto& counts : enumerate_tree_sequences(9)) {
    DegreeSequence s = DegreeSequence::validate(counts);
    CHECK(count_forests(s) == BigInt(enumerate_trees(s).trees.size()));
  }
}

TEST_CASE("count_branch_contents") {
  CHECK(count_branch_contents(BranchComposition::validate({0, 1, 2})) == 12);
  CHECK(count_branch_contents(BranchComposition::zero()) == 1);
  CHECK(count_branch_contents(BranchComposition::validate({0, 0, 1})) == 2);
  CHECK_THROWS_AS(BranchComposition::validate({1, 1}), validation_error);
  CHECK_THROWS_AS(BranchComposition::validate({0, -1}), validation_error);
}

TEST_CASE("degree multiset is the sorted expansion") {
  DegreeSequence s = DegreeSequence::validate({3, 1, 2});
  CHECK(s.degree_multiset() == std::vector<i64>{0, 0, 0, 1, 2, 2});
}
