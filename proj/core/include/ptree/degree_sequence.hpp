#pragma once

#include <vector>

#include "ptree/branch_composition.hpp"
#include "ptree/numeric.hpp"

namespace ptree {

// Degree sequence s = (n_0, n_1, ...): n_i nodes with exactly i children.
// Valid sequences satisfy r = |s| - sum(i * n_i) >= 1; r = 1 for a tree,
// r >= 2 for a proper forest. Trailing zeros are trimmed so equality is
// equality of the underlying object, not of a particular spelling.
class DegreeSequence {
 public:
  static constexpr i64 kMaxDegree = i64{1} << 20;

  static DegreeSequence validate(std::vector<i64> counts);

  i64 size() const { return size_; }    // |s|
  i64 roots() const { return roots_; }  // r
  bool is_tree() const { return roots_ == 1; }
  bool is_forest() const { return roots_ >= 2; }
  i64 max_degree() const { return static_cast<i64>(counts_.size()) - 1; }  // Delta

  i64 count(i64 degree) const {
    if (degree < 0 || degree >= static_cast<i64>(counts_.size())) return 0;
    return counts_[static_cast<std::size_t>(degree)];
  }
  const std::vector<i64>& counts() const { return counts_; }

  // The multiset of child counts, ascending: n_0 zeros, n_1 ones, ...
  std::vector<i64> degree_multiset() const;

  friend bool operator==(const DegreeSequence& a, const DegreeSequence& b) {
    return a.counts_ == b.counts_;
  }

 private:
  DegreeSequence(std::vector<i64> counts, i64 size, i64 roots)
      : counts_(std::move(counts)), size_(size), roots_(roots) {}

  std::vector<i64> counts_;
  i64 size_;
  i64 roots_;
};

struct DegStats {
  std::vector<Rational> p;  // p_i = n_i / |s|
  Rational sigma2;          // sum_{i>=1} n_i i^2 / (|s|-1) - 1
  i64 delta = 0;
};

// Exact rational statistics; requires |s| >= 2.
DegStats stats(const DegreeSequence& s);

// sigma2 as a double, for the Monte-Carlo harness.
double sigma2_value(const DegreeSequence& s);

// Number of forests of r ordered plane trees with degree sequence s:
// (r/|s|) * |s|! / prod n_i!.
BigInt count_forests(const DegreeSequence& s);

// Number of potential branch contents with composition m:
// multinomial(|m|; m_i) * prod i^{m_i}.
BigInt count_branch_contents(const BranchComposition& m);

}  // namespace ptree
