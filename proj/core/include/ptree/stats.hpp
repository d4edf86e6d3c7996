#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptree/numeric.hpp"

namespace ptree {

struct ChiSquareReport {
  double statistic = 0;
  i64 degrees_of_freedom = 0;
  double p_value = 1;
  double alpha = 0;
  bool pass = false;
  bool conclusive = true;       // false when the test could not be run meaningfully
  bool low_expected_warning = false;  // some expected cell count < 5
  i64 total_observations = 0;
  std::string note;
};

// Goodness of fit of observed counts against the given cell probabilities.
ChiSquareReport chi_square_gof(const std::vector<i64>& observed,
                               const std::vector<double>& expected_probs, double alpha);

// Uniform expected probabilities over the cells.
ChiSquareReport chi_square_uniformity(const std::vector<i64>& observed, double alpha);

struct KsReport {
  double statistic = 0;
  double p_value = 1;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  bool conclusive = true;  // false when either side has fewer than 20 points
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsReport ks_two_sample(std::vector<double> a, std::vector<double> b);

// Survival function of the Kolmogorov distribution, Q(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_sf(double lambda);

}  // namespace ptree
