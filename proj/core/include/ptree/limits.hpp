#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptree/degree_sequence.hpp"
#include "ptree/numeric.hpp"
#include "ptree/plane_tree.hpp"
#include "ptree/rng.hpp"
#include "ptree/sampler.hpp"
#include "ptree/stats.hpp"

namespace ptree {

// A path functional evaluated per replica. Supported names: "max", "area",
// "endpoint", and "value_at_<x>" with x in (0,1).
struct FunctionalSpec {
  std::string name;
  static FunctionalSpec parse(const std::string& name);
};

struct FunctionalSample {
  std::string name;
  std::vector<double> values;
};

// Path rescaled onto a uniform grid over [0,1], normalised so the limit is a
// standard Brownian excursion: height and contour carry factor (sigma/2)/sqrt(n),
// the depth-first walk carries 1/(sigma*sqrt(n)).
struct RescaledPath {
  std::vector<double> values;
  i64 tree_size = 0;
  double sigma = 0;
  double factor = 0;
  PathKind kind = PathKind::height;
};

inline constexpr int kDefaultGridPoints = 1025;  // 2^10 + 1

RescaledPath rescale(const LatticePath& path, double sigma, int grid_points = kDefaultGridPoints);

// Exact functional of the rescaled path (no grid): max and endpoint are exact
// at the knots, value_at interpolates, area integrates the piecewise-linear
// path exactly.
double path_functional(const LatticePath& path, double sigma, const FunctionalSpec& f);

// sup over x in [0,1] of |S(x n) - (sigma2/2) H(x (n-1))| / sqrt(n), evaluated
// at the union of the integral points of both time scales (the sup of the
// interpolated difference is attained there).
double sup_discrepancy(const PlaneTree& t, const Rational& sigma2);
double sup_discrepancy(const PlaneTree& t, double sigma2);

// Uniform +-1 excursion of 2m steps (Dyck path). Reference for the Brownian
// excursion, deliberately independent of the tree samplers.
std::vector<i64> sample_dyck(i64 m, Rng& rng);

// Functionals of D(2m x)/sqrt(2m) over `replicas` independent Dyck paths.
std::vector<FunctionalSample> excursion_reference(i64 m, i64 replicas, RngSeed seed,
                                                  const std::vector<FunctionalSpec>& functionals,
                                                  int threads = 1);

// Built-in degree-sequence family recipes realising the size ladder:
//   binary:         n_0 = k+1, n_2 = k (size rounded up to odd)
//   geometric-like:  counts ~ 2^-(i+1), repaired via n_0 and n_1
//   poisson:        n iid Poisson(1) degrees conditioned on sum = n-1
//   empirical-gw:   degree sequence harvested from a conditioned GW tree
struct FamilySpec {
  std::string name;
  OffspringDistribution mu = OffspringDistribution::geometric_mean_one();  // empirical-gw only
  static FamilySpec parse(const std::string& name);
};

DegreeSequence make_family_sequence(const FamilySpec& family, i64 size, RngSeed seed);

struct ExperimentConfig {
  std::vector<FamilySpec> families;
  std::vector<i64> sizes;  // strictly increasing
  i64 replicas = 1;
  std::uint64_t seed = 0;
  std::vector<FunctionalSpec> functionals;
  int threads = 1;
  void validate() const;
};

struct FunctionalSummary {
  std::string name;
  std::vector<double> sorted_values;
  double mean = 0;
  double median = 0;
  double q25 = 0;
  double q75 = 0;
};

struct SizeResult {
  std::string family;
  i64 requested_size = 0;
  i64 actual_size = 0;
  double sigma2 = 0;               // median across replicas
  double delta_over_sqrt_n = 0;    // max across replicas
  bool hypothesis_flag = false;    // Delta >= sqrt(n) seen
  double sup_discrepancy_median = 0;
  std::vector<FunctionalSummary> functionals;
};

struct KsEntry {
  std::string functional;
  std::string family_a;
  std::string family_b;
  i64 size = 0;
  KsReport report;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<SizeResult> results;
  std::vector<KsEntry> ks;  // pairwise at the largest size
};

ExperimentReport run_experiment(const ExperimentConfig& config);

// run_experiment with at least two families; the KS table is the point.
ExperimentReport universality_experiment(const ExperimentConfig& config);

// Medians of |mu_hat_i - mu_i| (i <= 5), |sigma2_hat - sigma2_mu| and
// Delta_hat/sqrt(n) across replicas of conditioned GW trees.
struct GwCheckReport {
  i64 n = 0;
  i64 replicas = 0;
  std::vector<double> median_mu_abs_err;  // i = 0..5
  double median_sigma2_abs_err = 0;
  double median_delta_over_sqrt_n = 0;
};

GwCheckReport gw_hypothesis_check(const OffspringDistribution& mu, i64 n, i64 replicas,
                                  RngSeed seed, int threads = 1);

// Median sup-discrepancy per size for one family.
std::vector<double> sup_discrepancy_medians(const FamilySpec& family,
                                            const std::vector<i64>& sizes, i64 replicas,
                                            RngSeed seed, int threads = 1);

// Samples of one functional of the sigma-normalised height path across
// replicas of uniform trees from the family at the given size.
std::vector<double> height_functional_samples(const FamilySpec& family, i64 size, i64 replicas,
                                              const FunctionalSpec& functional, RngSeed seed,
                                              int threads = 1);

}  // namespace ptree
