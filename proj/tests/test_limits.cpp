#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ptree/errors.hpp"
#include "ptree/limits.hpp"
#include "ptree/oracle.hpp"

using namespace ptree;

TEST_CASE("rescale puts paths on the unit grid with the right factors") {
  // Two-node tree: contour (0,1,0); with sigma = 2 the factor is 1/sqrt(2).
  PlaneTree t = PlaneTree::from_child_counts({1, 0});
  RescaledPath r = rescale(t.contour(), 2.0, 3);
  REQUIRE(r.values.size() == 3);
  CHECK(r.values[0] == doctest::Approx(0.0));
  CHECK(r.values[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(r.values[2] == doctest::Approx(0.0));
  CHECK(r.tree_size == 2);

  CHECK_THROWS_AS(rescale(PlaneTree::from_child_counts({0}).height(), 1.0), validation_error);
  CHECK_THROWS_AS(rescale(t.contour(), 0.0), validation_error);
}

TEST_CASE("grid max equals the exact functional when knots are resolved") {
  PlaneTree t = PlaneTree::from_child_counts({2, 1, 0, 1, 0});
  LatticePath h = t.height();
  RescaledPath r = rescale(h, 1.0, static_cast<int>(h.span()) + 1);
  double grid_max = *std::max_element(r.values.begin(), r.values.end());
  CHECK(grid_max == doctest::Approx(path_functional(h, 1.0, FunctionalSpec::parse("max"))));
}

TEST_CASE("path functionals compute exact values") {
  // Height path of the 3-chain: values (0,1,2), span 2, n = 3.
  PlaneTree chain = PlaneTree::from_child_counts({1, 1, 0});
  LatticePath h = chain.height();
  double factor = 1.0 / (2 * std::sqrt(3.0));  // sigma = 1: sigma/(2 sqrt(n))
  CHECK(path_functional(h, 1.0, FunctionalSpec::parse("max")) == doctest::Approx(2 * factor));
  CHECK(path_functional(h, 1.0, FunctionalSpec::parse("endpoint")) ==
        doctest::Approx(2 * factor));
  CHECK(path_functional(h, 1.0, FunctionalSpec::parse("value_at_0.5")) ==
        doctest::Approx(1 * factor));
  // Integral of the piecewise-linear (0,1,2) over [0,1] is 1.
  CHECK(path_functional(h, 1.0, FunctionalSpec::parse("area")) == doctest::Approx(factor));
  CHECK_THROWS_AS(FunctionalSpec::parse("value_at_2"), validation_error);
  CHECK_THROWS_AS(FunctionalSpec::parse("median"), validation_error);
}

TEST_CASE("sup_discrepancy handles the smallest case and is finite") {
  PlaneTree t = PlaneTree::from_child_counts({1, 0});
  // S = (0,0,-1), H = (0,1), sigma2 = 0: sup |S| / sqrt(2) = 1/sqrt(2).
  CHECK(sup_discrepancy(t, Rational(0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_THROWS_AS(sup_discrepancy(PlaneTree::from_child_counts({0}), Rational(1)),
                  validation_error);
}

TEST_CASE("dyck sampler: base cases and support") {
  Rng rng(RngSeed{50});
  CHECK(sample_dyck(1, rng) == std::vector<i64>{0, 1, 0});

  // All +-1 paths of length 6 from 0 to 0 staying >= 0: Catalan(3) = 5.
  std::set<std::vector<i64>> expected;
  std::vector<i64> path{0};
  auto rec = [&](auto&& self) -> void {
    if (path.size() == 7) {
      if (path.back() == 0) expected.insert(path);
      return;
    }
    for (i64 step : {1, -1}) {
      if (path.back() + step < 0) continue;
      path.push_back(path.back() + step);
      self(self);
      path.pop_back();
    }
  };
  rec(rec);
  REQUIRE(expected.size() == 5);

  std::set<std::vector<i64>> seen;
  for (int k = 0; k < 2000; ++k) seen.insert(sample_dyck(3, rng));
  CHECK(seen == expected);
}

TEST_CASE("excursion_reference produces the pinned m = 1 value") {
  auto samples = excursion_reference(1, 10, RngSeed{3},
                                     {FunctionalSpec::parse("max")});
  REQUIRE(samples.size() == 1);
  for (double v : samples[0].values) CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("ks_two_sample basics") {
  std::vector<double> a(50);
  std::vector<double> b(50);
  for (int i = 0; i < 50; ++i) {
    a[static_cast<std::size_t>(i)] = i;
    b[static_cast<std::size_t>(i)] = i;
  }
  KsReport same = ks_two_sample(a, b);
  CHECK(same.statistic == doctest::Approx(0.0));
  CHECK(same.conclusive);

  for (int i = 0; i < 50; ++i) b[static_cast<std::size_t>(i)] = 1000.0 + i;
  KsReport disjoint = ks_two_sample(a, b);
  CHECK(disjoint.statistic == doctest::Approx(1.0));
  CHECK(disjoint.p_value < 1e-6);

  KsReport tiny = ks_two_sample({1.0, 2.0}, {1.5, 2.5});
  CHECK(!tiny.conclusive);
  CHECK_THROWS_AS(ks_two_sample({}, {1.0}), validation_error);
}

TEST_CASE("family recipes produce valid tree sequences") {
  CHECK(make_family_sequence(FamilySpec::parse("binary"), 11, RngSeed{0}).counts() ==
        std::vector<i64>{6, 0, 5});
  CHECK(make_family_sequence(FamilySpec::parse("geometric-like"), 10, RngSeed{0}).counts() ==
        std::vector<i64>{4, 4, 1, 1});
  for (const char* name : {"binary", "geometric-like", "poisson", "empirical-gw"}) {
    FamilySpec family = FamilySpec::parse(name);
    for (i64 size : {50, 101, 1000}) {
      DegreeSequence s = make_family_sequence(family, size, RngSeed{1234});
      CHECK(s.is_tree());
      CHECK(static_cast<double>(s.max_degree()) < std::sqrt(static_cast<double>(s.size())));
      if (std::string(name) != "binary") CHECK(s.size() == size);
    }
  }
  CHECK_THROWS_AS(FamilySpec::parse("uniform"), validation_error);
}

TEST_CASE("poisson and empirical-gw families are deterministic given the seed") {
  for (const char* name : {"poisson", "empirical-gw"}) {
    FamilySpec family = FamilySpec::parse(name);
    CHECK(make_family_sequence(family, 200, RngSeed{9}) ==
          make_family_sequence(family, 200, RngSeed{9}));
  }
}

TEST_CASE("gw_hypothesis_check yields sane medians") {
  GwCheckReport report = gw_hypothesis_check(OffspringDistribution::geometric_mean_one(), 100,
                                             40, RngSeed{11}, 2);
  CHECK(report.median_mu_abs_err.size() == 6);
  CHECK(report.median_sigma2_abs_err < 1.5);
  CHECK(report.median_delta_over_sqrt_n > 0);
  CHECK_THROWS_AS(gw_hypothesis_check(OffspringDistribution::from_probabilities({0.5, 0.5}),
                                      10, 5, RngSeed{1}),
                  validation_error);
}

TEST_CASE("experiment harness: reproducible reports and KS table") {
  ExperimentConfig config;
  config.families = {FamilySpec::parse("binary"), FamilySpec::parse("geometric-like")};
  config.sizes = {51, 200};
  config.replicas = 60;
  config.seed = 2024;
  config.functionals = {FunctionalSpec::parse("max"), FunctionalSpec::parse("value_at_0.5")};
  config.threads = 2;
  ExperimentReport report = universality_experiment(config);
  CHECK(report.results.size() == 4);
  CHECK(report.ks.size() == 2);
  for (const auto& entry : report.ks) {
    CHECK(entry.size == 200);
    CHECK(entry.report.conclusive);
  }
  for (const auto& r : report.results) {
    CHECK(!r.hypothesis_flag);
    CHECK(r.sigma2 > 0);
    CHECK(r.functionals.size() == 2);
  }

  ExperimentReport again = universality_experiment(config);
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    CHECK(report.results[i].sup_discrepancy_median ==
          again.results[i].sup_discrepancy_median);
    for (std::size_t f = 0; f < report.results[i].functionals.size(); ++f) {
      CHECK(report.results[i].functionals[f].sorted_values ==
            again.results[i].functionals[f].sorted_values);
    }
  }

  ExperimentConfig solo = config;
  solo.families = {FamilySpec::parse("binary")};
  CHECK_THROWS_AS(universality_experiment(solo), validation_error);
  ExperimentConfig bad = config;
  bad.sizes = {200, 51};
  CHECK_THROWS_AS(run_experiment(bad), validation_error);
}

TEST_CASE("sup discrepancy median decays with size") {
  auto medians = sup_discrepancy_medians(FamilySpec::parse("binary"), {101, 10001}, 50,
                                         RngSeed{31415}, 2);
  REQUIRE(medians.size() == 2);
  CHECK(medians[1] < medians[0]);
}
