#include "ptree/verify.hpp"

#include <map>
#include <sstream>

#include "ptree/backbone.hpp"
#include "ptree/degree_sequence.hpp"
#include "ptree/oracle.hpp"
#include "ptree/plane_tree.hpp"

namespace ptree {
namespace {

std::string counts_to_string(const std::vector<i64>& counts) {
  std::ostringstream ss;
  ss << '(';
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) ss << ',';
    ss << counts[i];
  }
  ss << ')';
  return ss.str();
}

struct CompositionStats {
  i64 marked_count = 0;
  std::map<BranchContent, i64> content_counts;
  std::map<i64, i64> r_counts;
};

}  // namespace

std::vector<CheckResult> run_exhaustive_suite(i64 max_size) {
  CheckResult counts_check{"forest-count identity (catalogue size)", true, ""};
  CheckResult eq7_check{"height/walk identities H(k), S(k)", true, ""};
  CheckResult lr_check{"|LR| = 1 + sum (i-1) M_i", true, ""};
  CheckResult law_check{"branch composition law (exact)", true, ""};
  CheckResult content_check{"conditional content uniformity (exact)", true, ""};
  CheckResult rlaw_check{"|R| conditional law = uniform-sum convolution", true, ""};
  CheckResult bijection_check{"decompose/recompose bijection", true, ""};

  auto fail = [](CheckResult& check, const std::string& detail) {
    if (check.pass) check.detail = detail;
    check.pass = false;
  };

  for (const auto& counts : enumerate_tree_sequences(max_size)) {
    DegreeSequence s = DegreeSequence::validate(counts);
    const std::string sname = counts_to_string(s.counts());
    TreeCatalogue catalogue = enumerate_trees(s, max_size);

    if (BigInt(catalogue.trees.size()) != count_forests(s)) {
      fail(counts_check, sname + ": catalogue " + std::to_string(catalogue.trees.size()));
    }

    const i64 n = s.size();
    std::map<BranchComposition, CompositionStats> by_composition;

    for (const auto& t : catalogue.trees) {
      LatticePath height = t.height();
      LatticePath walk = t.lukasiewicz();
      for (i64 k = 0; k < n; ++k) {
        if (height.values[static_cast<std::size_t>(k)] != t.depth(NodeId{k + 1})) {
          fail(eq7_check, sname + ": H(" + std::to_string(k) + ")");
        }
      }
      for (i64 k = 1; k <= n; ++k) {
        MarkedTree mt{t, NodeId{k}};
        i64 r_size = static_cast<i64>(r_set(mt).size());
        i64 expected = r_size + t.child_count(NodeId{k}) - 1;
        if (walk.values[static_cast<std::size_t>(k)] != expected) {
          fail(eq7_check, sname + ": S(" + std::to_string(k) + ")");
        }
      }
      for (i64 k = 1; k <= n; ++k) {
        MarkedTree mt{t, NodeId{k}};
        BranchComposition m = branch_composition(mt);
        if (static_cast<i64>(lr_set(mt).size()) != m.lr_size()) {
          fail(lr_check, sname + ": mark " + std::to_string(k));
        }
        auto& stats = by_composition.try_emplace(m).first->second;
        ++stats.marked_count;
        ++stats.content_counts[branch_content(mt)];
        ++stats.r_counts[static_cast<i64>(r_set(mt).size())];

        Decomposition d = decompose(mt);
        MarkedTree back = recompose(d);
        if (!(back.tree == mt.tree) || back.mark.rank != k) {
          fail(bijection_check, sname + ": mark " + std::to_string(k));
        }
        Decomposition d2 = decompose(back);
        if (!(d2.content == d.content) || d2.forest.size() != d.forest.size()) {
          fail(bijection_check, sname + ": re-decompose mark " + std::to_string(k));
        }
      }
    }

    // Proposition-level laws against the enumeration.
    const BigInt marked_total = BigInt(catalogue.trees.size()) * n;
    Rational law_sum = 0;
    FactorialCache fact;
    for (const auto& m : feasible_compositions(s)) {
      Rational p = prob_composition(s, m, fact);
      law_sum += p;
      auto it = by_composition.find(m);
      Rational observed = it == by_composition.end()
                              ? Rational(0)
                              : Rational(BigInt(it->second.marked_count), marked_total);
      if (p != observed) {
        fail(law_check, sname + ": m = " + counts_to_string(m.counts()));
      }
      if (it == by_composition.end()) continue;
      const auto& stats = it->second;

      BigInt jm = count_branch_contents(m);
      if (BigInt(stats.content_counts.size()) != jm) {
        fail(content_check, sname + ": |J^m| mismatch, m = " + counts_to_string(m.counts()));
      }
      i64 first = stats.content_counts.begin()->second;
      for (const auto& [content, count] : stats.content_counts) {
        if (count != first) {
          fail(content_check, sname + ": non-uniform content, m = " +
                                  counts_to_string(m.counts()));
        }
      }

      auto convolution = branch_sum_counts(m);
      BigInt conv_total = branch_sum_total(m);
      for (const auto& [value, count] : convolution) {
        auto rit = stats.r_counts.find(value);
        Rational empirical = rit == stats.r_counts.end()
                                 ? Rational(0)
                                 : Rational(rit->second, stats.marked_count);
        if (Rational(count, conv_total) != empirical) {
          fail(rlaw_check, sname + ": |R| law, m = " + counts_to_string(m.counts()));
        }
      }
      if (convolution.size() != stats.r_counts.size()) {
        fail(rlaw_check, sname + ": |R| support, m = " + counts_to_string(m.counts()));
      }
    }
    if (law_sum != 1) {
      fail(law_check, sname + ": probabilities sum to " + law_sum.str());
    }
  }

  return {counts_check, eq7_check,     lr_check,       law_check,
          content_check, rlaw_check,   bijection_check};
}

}  // namespace ptree
