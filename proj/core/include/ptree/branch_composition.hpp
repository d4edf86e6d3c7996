#pragma once

#include <vector>

#include "ptree/errors.hpp"
#include "ptree/numeric.hpp"

namespace ptree {

// Ancestor-degree histogram along the branch from the root to a marked node:
// m_i = number of strict ancestors with i children. m_0 = 0 always, since
// every ancestor has at least one child.
class BranchComposition {
 public:
  static BranchComposition validate(std::vector<i64> m) {
    if (!m.empty() && m[0] != 0) {
      throw validation_error("branch composition must have m_0 = 0");
    }
    for (i64 c : m) {
      if (c < 0) throw validation_error("branch composition counts must be non-negative");
    }
    while (!m.empty() && m.back() == 0) m.pop_back();
    return BranchComposition(std::move(m));
  }

  static BranchComposition zero() { return BranchComposition({}); }

  // |m| = branch length = depth of the marked node.
  i64 total() const {
    i64 t = 0;
    for (i64 c : counts_) t += c;
    return t;
  }

  // |LR(m)| = 1 + sum (i-1) m_i.
  i64 lr_size() const {
    i64 s = 1;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      s += (static_cast<i64>(i) - 1) * counts_[i];
    }
    return s;
  }

  i64 count(i64 degree) const {
    if (degree < 0 || degree >= static_cast<i64>(counts_.size())) return 0;
    return counts_[static_cast<std::size_t>(degree)];
  }

  i64 max_degree() const { return static_cast<i64>(counts_.size()) - 1; }

  const std::vector<i64>& counts() const { return counts_; }

  friend bool operator==(const BranchComposition& a, const BranchComposition& b) {
    return a.counts_ == b.counts_;
  }
  friend bool operator<(const BranchComposition& a, const BranchComposition& b) {
    return a.counts_ < b.counts_;
  }

 private:
  explicit BranchComposition(std::vector<i64> m) : counts_(std::move(m)) {}
  std::vector<i64> counts_;  // trailing zeros trimmed
};

}  // namespace ptree
