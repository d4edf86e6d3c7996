#include "ptree/degree_sequence.hpp"

#include <string>

#include "ptree/errors.hpp"

namespace ptree {

DegreeSequence DegreeSequence::validate(std::vector<i64> counts) {
  if (counts.empty()) throw validation_error("degree sequence must not be empty");
  if (static_cast<i64>(counts.size()) - 1 > kMaxDegree) {
    throw validation_error("maximum degree exceeds cap 2^20");
  }
  i64 size = 0;
  i64 weighted = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) throw validation_error("degree counts must be non-negative");
    size += counts[i];
    weighted += static_cast<i64>(i) * counts[i];
  }
  if (size < 1) throw validation_error("degree sequence must describe at least one node");
  i64 roots = size - weighted;
  if (roots <= 0) {
    throw validation_error("invalid degree sequence: |s| - sum(i*n_i) = " +
                           std::to_string(roots) + ", expected >= 1");
  }
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  return DegreeSequence(std::move(counts), size, roots);
}

std::vector<i64> DegreeSequence::degree_multiset() const {
  std::vector<i64> degrees;
  degrees.reserve(static_cast<std::size_t>(size_));
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    for (i64 k = 0; k < counts_[i]; ++k) degrees.push_back(static_cast<i64>(i));
  }
  return degrees;
}

DegStats stats(const DegreeSequence& s) {
  if (s.size() < 2) {
    throw validation_error("sigma^2 is undefined for |s| = 1");
  }
  DegStats out;
  out.delta = s.max_degree();
  out.p.reserve(s.counts().size());
  Rational weighted_sq = 0;
  for (std::size_t i = 0; i < s.counts().size(); ++i) {
    out.p.emplace_back(s.counts()[i], s.size());
    if (i >= 1) {
      BigInt term = BigInt(s.counts()[i]) * static_cast<i64>(i) * static_cast<i64>(i);
      weighted_sq += Rational(term, BigInt(s.size() - 1));
    }
  }
  out.sigma2 = weighted_sq - 1;
  return out;
}

double sigma2_value(const DegreeSequence& s) {
  if (s.size() < 2) throw validation_error("sigma^2 is undefined for |s| = 1");
  double acc = 0;
  for (std::size_t i = 1; i < s.counts().size(); ++i) {
    acc += static_cast<double>(s.counts()[i]) * static_cast<double>(i) * static_cast<double>(i);
  }
  return acc / static_cast<double>(s.size() - 1) - 1.0;
}

BigInt count_forests(const DegreeSequence& s) {
  BigInt num = factorial(s.size());
  for (i64 n : s.counts()) num /= factorial(n);
  num *= s.roots();
  num /= s.size();
  return num;
}

BigInt count_branch_contents(const BranchComposition& m) {
  BigInt r = multinomial(m.total(), m.counts());
  for (std::size_t i = 1; i < m.counts().size(); ++i) {
    r *= ipow(static_cast<i64>(i), m.counts()[i]);
  }
  return r;
}

}  // namespace ptree
