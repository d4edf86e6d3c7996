#include "ptree/backbone.hpp"

#include <algorithm>
#include <string>

#include "ptree/errors.hpp"
#include "ptree/sampler.hpp"

namespace ptree {
namespace {

// subtree_size[rank-1] = number of nodes in the subtree rooted at rank.
std::vector<i64> subtree_sizes(const PlaneTree& t) {
  const auto& par = t.parents();
  std::vector<i64> size(par.size(), 1);
  for (i64 rank = t.node_count(); rank >= 2; --rank) {
    size[static_cast<std::size_t>(par[static_cast<std::size_t>(rank - 1)] - 1)] +=
        size[static_cast<std::size_t>(rank - 1)];
  }
  return size;
}

// Ranks of u_0 = root, u_1, ..., u_h = mark along the branch.
std::vector<i64> branch_ranks(const MarkedTree& mt) {
  mt.tree.child_count(mt.mark);  // range check
  const auto& par = mt.tree.parents();
  std::vector<i64> ranks;
  for (i64 r = mt.mark.rank; r != 0; r = (r == 1 ? 0 : par[static_cast<std::size_t>(r - 1)])) {
    ranks.push_back(r);
  }
  std::reverse(ranks.begin(), ranks.end());
  return ranks;
}

}  // namespace

BranchComposition branch_composition(const MarkedTree& mt) {
  auto ranks = branch_ranks(mt);
  i64 delta = 0;
  for (std::size_t j = 0; j + 1 < ranks.size(); ++j) {
    delta = std::max(delta, mt.tree.child_count(NodeId{ranks[j]}));
  }
  std::vector<i64> m(static_cast<std::size_t>(delta) + 1, 0);
  for (std::size_t j = 0; j + 1 < ranks.size(); ++j) {
    ++m[static_cast<std::size_t>(mt.tree.child_count(NodeId{ranks[j]}))];
  }
  return BranchComposition::validate(std::move(m));
}

BranchContent branch_content(const MarkedTree& mt) {
  auto ranks = branch_ranks(mt);
  auto size = subtree_sizes(mt.tree);
  BranchContent content;
  content.steps.reserve(ranks.size() - 1);
  for (std::size_t j = 0; j + 1 < ranks.size(); ++j) {
    i64 c = mt.tree.child_count(NodeId{ranks[j]});
    // Walk the sibling chain from the first child until we reach u_{j+1}.
    i64 idx = 1;
    i64 w = ranks[j] + 1;
    while (w != ranks[j + 1]) {
      w += size[static_cast<std::size_t>(w - 1)];
      ++idx;
    }
    content.steps.push_back(ContentStep{c, idx});
  }
  return content;
}

std::vector<NodeId> lr_set(const MarkedTree& mt) {
  auto ranks = branch_ranks(mt);
  if (ranks.size() == 1) return {mt.mark};  // LR(root) = {root} by convention
  auto size = subtree_sizes(mt.tree);
  std::vector<NodeId> out;
  for (std::size_t j = 0; j + 1 < ranks.size(); ++j) {
    i64 c = mt.tree.child_count(NodeId{ranks[j]});
    i64 w = ranks[j] + 1;
    for (i64 k = 0; k < c; ++k) {
      if (w != ranks[j + 1]) out.push_back(NodeId{w});
      w += size[static_cast<std::size_t>(w - 1)];
    }
  }
  out.push_back(mt.mark);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> r_set(const MarkedTree& mt) {
  auto ranks = branch_ranks(mt);
  if (ranks.size() == 1) return {};
  auto size = subtree_sizes(mt.tree);
  std::vector<NodeId> out;
  for (std::size_t j = 0; j + 1 < ranks.size(); ++j) {
    i64 c = mt.tree.child_count(NodeId{ranks[j]});
    i64 w = ranks[j] + 1;
    bool after_branch = false;
    for (i64 k = 0; k < c; ++k) {
      if (after_branch) out.push_back(NodeId{w});
      if (w == ranks[j + 1]) after_branch = true;
      w += size[static_cast<std::size_t>(w - 1)];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Decomposition decompose(const MarkedTree& mt) {
  Decomposition d;
  d.content = branch_content(mt);
  auto roots = lr_set(mt);
  auto size = subtree_sizes(mt.tree);
  d.forest.reserve(roots.size());
  const auto& counts = mt.tree.child_counts();
  for (NodeId v : roots) {
    auto begin = counts.begin() + static_cast<std::ptrdiff_t>(v.rank - 1);
    d.forest.push_back(PlaneTree::from_child_counts(
        std::vector<i64>(begin, begin + static_cast<std::ptrdiff_t>(
                                    size[static_cast<std::size_t>(v.rank - 1)]))));
  }
  return d;
}

MarkedTree recompose(const Decomposition& d) {
  const auto& steps = d.content.steps;
  i64 lr = 1;
  for (const auto& step : steps) {
    if (step.child_count < 1) {
      throw validation_error("recompose: branch child counts must be >= 1");
    }
    if (step.child_index < 1 || step.child_index > step.child_count) {
      throw validation_error("recompose: child index out of range");
    }
    lr += step.child_count - 1;
  }
  if (static_cast<i64>(d.forest.size()) != lr) {
    throw validation_error("recompose: forest has " + std::to_string(d.forest.size()) +
                           " trees, expected |LR(m)| = " + std::to_string(lr));
  }
  const std::size_t h = steps.size();
  // Forest layout in lexicographic order: left blocks of u_0..u_{h-1}, the
  // mark's own subtree, then right blocks of u_{h-1} down to u_0.
  std::vector<std::size_t> left_begin(h);
  std::size_t front = 0;
  for (std::size_t j = 0; j < h; ++j) {
    left_begin[j] = front;
    front += static_cast<std::size_t>(steps[j].child_index - 1);
  }
  const std::size_t mid = front;
  std::vector<std::size_t> right_begin(h);
  std::size_t pos = mid + 1;
  for (std::size_t jr = h; jr-- > 0;) {
    right_begin[jr] = pos;
    pos += static_cast<std::size_t>(steps[jr].child_count - steps[jr].child_index);
  }

  std::vector<i64> counts;
  i64 total = static_cast<i64>(h);
  for (const auto& t : d.forest) total += t.node_count();
  counts.reserve(static_cast<std::size_t>(total));

  auto append_tree = [&counts](const PlaneTree& t) {
    counts.insert(counts.end(), t.child_counts().begin(), t.child_counts().end());
  };
  i64 left_nodes_before_mark = 0;
  for (std::size_t j = 0; j < h; ++j) {
    counts.push_back(steps[j].child_count);
    for (std::size_t k = 0; k < static_cast<std::size_t>(steps[j].child_index - 1); ++k) {
      const auto& t = d.forest[left_begin[j] + k];
      left_nodes_before_mark += t.node_count();
      append_tree(t);
    }
  }
  append_tree(d.forest[mid]);
  for (std::size_t jr = h; jr-- > 0;) {
    for (std::size_t k = 0;
         k < static_cast<std::size_t>(steps[jr].child_count - steps[jr].child_index); ++k) {
      append_tree(d.forest[right_begin[jr] + k]);
    }
  }
  PlaneTree tree = PlaneTree::from_child_counts(std::move(counts));
  NodeId mark{static_cast<i64>(h) + left_nodes_before_mark + 1};
  return MarkedTree{std::move(tree), mark};
}

Rational prob_composition(const DegreeSequence& s, const BranchComposition& m,
                          FactorialCache& fact) {
  if (!s.is_tree()) throw validation_error("prob_composition requires a tree sequence");
  for (std::size_t i = 0; i < m.counts().size(); ++i) {
    if (m.counts()[i] > s.count(static_cast<i64>(i))) return Rational(0);
  }
  const i64 total_m = m.total();
  const i64 rest = s.size() - total_m;
  BigInt num = m.lr_size();
  num *= fact(total_m);
  num *= fact(rest);
  for (std::size_t i = 1; i < m.counts().size(); ++i) {
    if (m.counts()[i] == 0) continue;
    num *= fact(s.count(static_cast<i64>(i))) /
           (fact(m.counts()[i]) * fact(s.count(static_cast<i64>(i)) - m.counts()[i]));
    num *= ipow(static_cast<i64>(i), m.counts()[i]);
  }
  BigInt den = fact(s.size());
  den *= rest;
  return Rational(num, den);
}

Rational prob_composition(const DegreeSequence& s, const BranchComposition& m) {
  FactorialCache fact;
  return prob_composition(s, m, fact);
}

std::vector<BranchComposition> feasible_compositions(const DegreeSequence& s) {
  if (!s.is_tree()) throw validation_error("feasible_compositions requires a tree sequence");
  std::vector<BranchComposition> out;
  std::vector<i64> m(s.counts().size(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == s.counts().size()) {
      out.push_back(BranchComposition::validate(m));
      return;
    }
    i64 cap = i == 0 ? 0 : s.counts()[i];
    for (i64 v = 0; v <= cap; ++v) {
      m[i] = v;
      self(self, i + 1);
    }
    m[i] = 0;
  };
  rec(rec, 0);
  return out;
}

BigInt branch_sum_total(const BranchComposition& m) {
  BigInt total = 1;
  for (std::size_t j = 1; j < m.counts().size(); ++j) {
    total *= ipow(static_cast<i64>(j), m.counts()[j]);
  }
  return total;
}

std::map<i64, BigInt> branch_sum_counts(const BranchComposition& m) {
  i64 max_sum = 0;
  for (std::size_t j = 1; j < m.counts().size(); ++j) {
    max_sum += m.counts()[j] * (static_cast<i64>(j) - 1);
  }
  std::vector<BigInt> dist(static_cast<std::size_t>(max_sum) + 1, BigInt(0));
  dist[0] = 1;
  i64 reach = 0;
  for (std::size_t j = 2; j < m.counts().size(); ++j) {
    for (i64 rep = 0; rep < m.counts()[j]; ++rep) {
      // Convolve with uniform on {0..j-1} via a sliding window of prefix sums.
      i64 width = static_cast<i64>(j);
      i64 new_reach = reach + width - 1;
      std::vector<BigInt> prefix(static_cast<std::size_t>(reach) + 2, BigInt(0));
      for (i64 v = 0; v <= reach; ++v) {
        prefix[static_cast<std::size_t>(v + 1)] = prefix[static_cast<std::size_t>(v)] +
                                                  dist[static_cast<std::size_t>(v)];
      }
      for (i64 v = new_reach; v >= 0; --v) {
        i64 lo = std::max<i64>(0, v - width + 1);
        i64 hi = std::min<i64>(reach, v);
        dist[static_cast<std::size_t>(v)] =
            hi >= lo ? prefix[static_cast<std::size_t>(hi + 1)] -
                           prefix[static_cast<std::size_t>(lo)]
                     : BigInt(0);
      }
      reach = new_reach;
    }
  }
  std::map<i64, BigInt> out;
  for (i64 v = 0; v <= reach; ++v) {
    if (dist[static_cast<std::size_t>(v)] != 0) out[v] = dist[static_cast<std::size_t>(v)];
  }
  if (out.empty()) out[0] = 1;
  return out;
}

Rational r_discrepancy_tail_exact(const BranchComposition& m, const Rational& sigma2,
                                  const Rational& x) {
  i64 work = 0;
  for (std::size_t j = 1; j < m.counts().size(); ++j) work += m.counts()[j] * static_cast<i64>(j);
  if (work > 10000) {
    throw validation_error("exact convolution capped at sum j*m_j <= 10^4; use the "
                           "Monte-Carlo estimator");
  }
  const Rational center = sigma2 * m.total() / 2;
  auto counts = branch_sum_counts(m);
  BigInt hit = 0;
  for (const auto& [value, count] : counts) {
    Rational dev = Rational(value) - center;
    if (dev < 0) dev = -dev;
    if (dev >= x) hit += count;
  }
  return Rational(hit, branch_sum_total(m));
}

double r_discrepancy_tail_mc(const BranchComposition& m, double sigma2, double x, i64 samples,
                             RngSeed seed) {
  if (samples < 1) throw validation_error("need at least one sample");
  Rng rng(seed);
  const double center = sigma2 * static_cast<double>(m.total()) / 2.0;
  i64 hits = 0;
  for (i64 k = 0; k < samples; ++k) {
    i64 sum = 0;
    for (std::size_t j = 2; j < m.counts().size(); ++j) {
      for (i64 rep = 0; rep < m.counts()[j]; ++rep) {
        sum += static_cast<i64>(rng.below(static_cast<std::uint64_t>(j)));
      }
    }
    if (std::abs(static_cast<double>(sum) - center) >= x) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

std::vector<BranchContent> enumerate_contents(const BranchComposition& m) {
  BigInt count = count_branch_contents(m);
  if (count > 1000000) {
    throw validation_error("J^m too large to enumerate (> 10^6 contents)");
  }
  std::vector<BranchContent> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<i64> remaining = m.counts();
  BranchContent current;
  const i64 depth = m.total();
  auto rec = [&](auto&& self, i64 placed) -> void {
    if (placed == depth) {
      out.push_back(current);
      return;
    }
    for (std::size_t d = 1; d < remaining.size(); ++d) {
      if (remaining[d] == 0) continue;
      --remaining[d];
      for (i64 idx = 1; idx <= static_cast<i64>(d); ++idx) {
        current.steps.push_back(ContentStep{static_cast<i64>(d), idx});
        self(self, placed + 1);
        current.steps.pop_back();
      }
      ++remaining[d];
    }
  };
  rec(rec, 0);
  return out;
}

ChiSquareReport content_conditional_uniformity_check(const DegreeSequence& s,
                                                     const BranchComposition& m, i64 samples,
                                                     RngSeed seed, double alpha) {
  if (prob_composition(s, m) == 0) {
    throw validation_error("composition has probability 0 under this degree sequence");
  }
  auto cells = enumerate_contents(m);
  std::map<BranchContent, std::size_t> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index.emplace(cells[i], i);
  std::vector<i64> observed(cells.size(), 0);
  Rng rng(seed);
  i64 conditioned = 0;
  for (i64 k = 0; k < samples; ++k) {
    MarkedTree mt = sample_marked(s, rng);
    if (!(branch_composition(mt) == m)) continue;
    ++conditioned;
    ++observed[index.at(branch_content(mt))];
  }
  if (conditioned == 0) {
    ChiSquareReport report;
    report.alpha = alpha;
    report.conclusive = false;
    report.note = "no samples landed on the requested composition";
    return report;
  }
  ChiSquareReport report = chi_square_uniformity(observed, alpha);
  if (report.low_expected_warning) {
    report.conclusive = false;
    report.note = "fewer than 5 expected conditioned samples per content cell";
  }
  return report;
}

}  // namespace ptree
