#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptree/degree_sequence.hpp"
#include "ptree/oracle.hpp"
#include "ptree/plane_tree.hpp"
#include "ptree/rng.hpp"

namespace ptree {

// Offspring distribution for Galton-Watson sampling: an explicit finite pmf,
// or one of the named mean-one families with unbounded support.
class OffspringDistribution {
 public:
  static OffspringDistribution from_probabilities(std::vector<double> probs);
  static OffspringDistribution geometric_mean_one();  // mu_i = 2^-(i+1)
  static OffspringDistribution poisson_mean_one();    // mu_i = e^-1 / i!

  double probability(i64 i) const;
  double mean() const;
  double sigma2() const;  // sum i^2 mu_i - 1
  bool has_mean_one(double tol = 1e-9) const;
  i64 sample(Rng& rng) const;
  const std::string& name() const { return name_; }

 private:
  enum class Family { explicit_pmf, geometric, poisson };
  OffspringDistribution(Family family, std::vector<double> probs, std::string name)
      : family_(family), probs_(std::move(probs)), name_(std::move(name)) {}

  Family family_;
  std::vector<double> probs_;  // used by explicit_pmf
  std::string name_;
};

// Exact uniform sample from T_s via the cycle lemma: shuffle the child-count
// multiset, rotate the walk at its first minimum, read off the excursion.
PlaneTree sample_uniform(const DegreeSequence& s, RngSeed seed);
PlaneTree sample_uniform(const DegreeSequence& s, Rng& rng);

// Forest extension (r >= 2 allowed): the walk ends at -r and exactly r
// rotations are forest walks (the first hits of min, ..., min+r-1); one is
// picked uniformly.
std::vector<PlaneTree> sample_uniform_forest(const DegreeSequence& s, RngSeed seed);
std::vector<PlaneTree> sample_uniform_forest(const DegreeSequence& s, Rng& rng);

// Uniform tree plus an independent uniform mark.
MarkedTree sample_marked(const DegreeSequence& s, RngSeed seed);
MarkedTree sample_marked(const DegreeSequence& s, Rng& rng);

// Inserts n1 degree-one nodes into t_star (which must have none) by drawing a
// uniform composition over the |t_star| slots: the edge above each node, the
// root's slot being the phantom edge below it. Conditional on t_star the
// result is P_s restricted to trees whose degree-one erasure is t_star.
PlaneTree insert_unary(const PlaneTree& t_star, i64 n1, RngSeed seed);
PlaneTree insert_unary(const PlaneTree& t_star, i64 n1, Rng& rng);

// Removes every degree-one node; inverse of insert_unary on its image.
PlaneTree erase_unary(const PlaneTree& t);

// Galton-Watson tree conditioned on |t| = n, by rejection: draw n increments
// from nu_i = mu_{i+1}, accept bridges to -1, rotate to the excursion.
PlaneTree sample_gw_conditioned(const OffspringDistribution& mu, i64 n, RngSeed seed,
                                i64 max_attempts = 1000000, i64* attempts_out = nullptr);

// count replicas with seeds derived per index; the result is independent of
// the thread count.
std::vector<PlaneTree> sample_batch(const DegreeSequence& s, i64 count, RngSeed seed,
                                    int threads = 1);

}  // namespace ptree
