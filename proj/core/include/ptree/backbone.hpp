#pragma once

#include <map>
#include <vector>

#include "ptree/branch_composition.hpp"
#include "ptree/degree_sequence.hpp"
#include "ptree/numeric.hpp"
#include "ptree/oracle.hpp"
#include "ptree/plane_tree.hpp"
#include "ptree/rng.hpp"
#include "ptree/stats.hpp"

namespace ptree {

// One step of the branch from the root to the mark: the ancestor's child
// count, and which child (1-based) the branch takes.
struct ContentStep {
  i64 child_count = 0;
  i64 child_index = 0;
  friend bool operator==(ContentStep a, ContentStep b) {
    return a.child_count == b.child_count && a.child_index == b.child_index;
  }
  friend auto operator<=>(ContentStep a, ContentStep b) = default;
};

struct BranchContent {
  std::vector<ContentStep> steps;
  friend bool operator==(const BranchContent& a, const BranchContent& b) {
    return a.steps == b.steps;
  }
  friend bool operator<(const BranchContent& a, const BranchContent& b) {
    return a.steps < b.steps;
  }
};

// (Cont(t,u), F(t,u)): the branch content plus the forest of subtrees rooted
// on LR(u,t) in lexicographic order of their roots. In bijection with marked
// trees.
struct Decomposition {
  BranchContent content;
  std::vector<PlaneTree> forest;
};

BranchComposition branch_composition(const MarkedTree& mt);
BranchContent branch_content(const MarkedTree& mt);

// Children of branch nodes that are off the branch; contains the mark. For a
// root mark, LR = {root}. Returned in lexicographic (rank) order.
std::vector<NodeId> lr_set(const MarkedTree& mt);

// The subset of LR strictly to the right of the branch; never contains the mark.
std::vector<NodeId> r_set(const MarkedTree& mt);

Decomposition decompose(const MarkedTree& mt);
MarkedTree recompose(const Decomposition& d);

// P(M(u,t) = m) under the uniform marked law on T_s; exact rational, 0 for
// infeasible m (some m_i > n_i) so that summation loops stay uniform.
Rational prob_composition(const DegreeSequence& s, const BranchComposition& m);
Rational prob_composition(const DegreeSequence& s, const BranchComposition& m,
                          FactorialCache& cache);

// All m with m_0 = 0 and m_i <= n_i; the support of prob_composition.
std::vector<BranchComposition> feasible_compositions(const DegreeSequence& s);

// Exact law of sum_j sum_{k<=m_j} U_j^(k), U_j^(k) uniform on {0..j-1}:
// outcome counts per value, out of branch_sum_total(m) equally likely draws.
std::map<i64, BigInt> branch_sum_counts(const BranchComposition& m);
BigInt branch_sum_total(const BranchComposition& m);

// P(|sum U - (sigma2/2)|m|| >= x), exactly from the convolution. Guarded by a
// work cap (sum j*m_j <= 10^4); Monte-Carlo is the fallback beyond it.
Rational r_discrepancy_tail_exact(const BranchComposition& m, const Rational& sigma2,
                                  const Rational& x);
double r_discrepancy_tail_mc(const BranchComposition& m, double sigma2, double x, i64 samples,
                             RngSeed seed);

// Monte-Carlo check of conditional content uniformity: samples marked trees,
// keeps those with composition m, chi-squares the content frequencies against
// the uniform law on J^m. Inconclusive when too few conditioned samples land.
ChiSquareReport content_conditional_uniformity_check(const DegreeSequence& s,
                                                     const BranchComposition& m, i64 samples,
                                                     RngSeed seed, double alpha);

// All content vectors with composition m, i.e. the set J^m.
std::vector<BranchContent> enumerate_contents(const BranchComposition& m);

}  // namespace ptree
