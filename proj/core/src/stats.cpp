#include "ptree/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "ptree/errors.hpp"

namespace ptree {

ChiSquareReport chi_square_gof(const std::vector<i64>& observed,
                               const std::vector<double>& expected_probs, double alpha) {
  if (observed.empty()) throw validation_error("chi-square: no observations");
  if (observed.size() != expected_probs.size()) {
    throw validation_error("chi-square: observed and expected sizes differ");
  }
  ChiSquareReport report;
  report.alpha = alpha;
  for (i64 o : observed) report.total_observations += o;
  if (report.total_observations == 0) {
    report.conclusive = false;
    report.note = "no samples";
    return report;
  }
  double stat = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double e = expected_probs[i] * static_cast<double>(report.total_observations);
    if (e <= 0) throw validation_error("chi-square: expected cell probability must be positive");
    if (e < 5) report.low_expected_warning = true;
    double d = static_cast<double>(observed[i]) - e;
    stat += d * d / e;
  }
  report.statistic = stat;
  report.degrees_of_freedom = static_cast<i64>(observed.size()) - 1;
  report.p_value = report.degrees_of_freedom == 0
                       ? 1.0
                       : boost::math::gamma_q(
                             static_cast<double>(report.degrees_of_freedom) / 2.0, stat / 2.0);
  report.pass = report.p_value >= alpha;
  return report;
}

ChiSquareReport chi_square_uniformity(const std::vector<i64>& observed, double alpha) {
  if (observed.empty()) throw validation_error("chi-square: no observations");
  std::vector<double> expected(observed.size(), 1.0 / static_cast<double>(observed.size()));
  return chi_square_gof(observed, expected, alpha);
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0) return 1.0;
  double sum = 0;
  double sign = 1;
  for (int j = 1; j <= 100; ++j) {
    double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsReport ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw validation_error("ks: both samples must be non-empty");
  KsReport report;
  report.n_a = a.size();
  report.n_b = b.size();
  report.conclusive = a.size() >= 20 && b.size() >= 20;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    double fa = static_cast<double>(i) / static_cast<double>(a.size());
    double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  report.statistic = d;
  double ne = static_cast<double>(a.size()) * static_cast<double>(b.size()) /
              static_cast<double>(a.size() + b.size());
  double sqrt_ne = std::sqrt(ne);
  // Stephens' small-sample correction of the asymptotic argument.
  report.p_value = kolmogorov_sf((sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d);
  return report;
}

}  // namespace ptree
