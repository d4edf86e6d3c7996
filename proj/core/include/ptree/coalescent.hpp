#pragma once

#include <map>
#include <vector>

#include "ptree/degree_sequence.hpp"
#include "ptree/numeric.hpp"
#include "ptree/plane_tree.hpp"
#include "ptree/rng.hpp"

namespace ptree {

// Rooted labelled tree on {1..n}: parent label per node, 0 for the root.
// Children are unordered.
struct LabelledTree {
  std::vector<i64> parent;
  i64 root = 0;
  i64 size() const { return static_cast<i64>(parent.size()); }
};

// Cluster-size histogram after each merge step; step 0 is the initial state
// of n singletons.
struct CoalescentTrace {
  std::vector<std::map<i64, i64>> step_histograms;
};

// Constrained-valence coalescent, labelled variant: particles get degrees via
// a uniform permutation, then n-1 times a uniform free slot captures the root
// of a uniformly chosen other cluster. Uniform over labelled trees with the
// given degree multiset.
LabelledTree coalesce_labelled(const std::vector<i64>& degrees, RngSeed seed,
                               CoalescentTrace* trace = nullptr);

// Plane variant: slots are ordered per particle and particles of equal degree
// are interchangeable; the result is uniform on T_s.
PlaneTree coalesce_plane(const DegreeSequence& s, RngSeed seed,
                         CoalescentTrace* trace = nullptr);

// Probability of any single labelled tree with degree sequence s under the
// labelled coalescent: prod_i (i!)^{n_i} / (n-1)! * binom(n; (n_i))^{-1}.
// Its reciprocal is the number of labelled trees with that degree sequence.
Rational labelled_tree_probability(const DegreeSequence& s);

// Plane tree obtained by ordering children by label; uniform labelled trees
// project onto P_s this way.
PlaneTree to_plane_tree_by_label_order(const LabelledTree& t);

}  // namespace ptree
