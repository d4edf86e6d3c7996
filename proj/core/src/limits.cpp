#include "ptree/limits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "ptree/errors.hpp"

namespace ptree {
namespace {

double interpolate(const std::vector<i64>& values, double t) {
  if (t <= 0) return static_cast<double>(values.front());
  double last = static_cast<double>(values.size()) - 1;
  if (t >= last) return static_cast<double>(values.back());
  auto lo = static_cast<std::size_t>(t);
  double frac = t - static_cast<double>(lo);
  return static_cast<double>(values[lo]) +
         frac * static_cast<double>(values[lo + 1] - values[lo]);
}

double factor_for(PathKind kind, double sigma, i64 n) {
  double root_n = std::sqrt(static_cast<double>(n));
  switch (kind) {
    case PathKind::height:
    case PathKind::contour:
      return sigma / (2.0 * root_n);
    case PathKind::lukasiewicz:
      return 1.0 / (sigma * root_n);
  }
  return 0;
}

i64 tree_size_of(const LatticePath& path) {
  switch (path.kind) {
    case PathKind::height:
      return path.span() + 1;
    case PathKind::contour:
      return path.span() / 2 + 1;
    case PathKind::lukasiewicz:
      return path.span();
  }
  return 0;
}

// Deterministic indexed parallel map: out[k] = fn(k), independent of threads.
void parallel_for(i64 count, int threads, const std::function<void(i64)>& fn) {
  int used = std::max(1, threads);
  if (used == 1 || count < 2) {
    for (i64 k = 0; k < count; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(used));
  for (int w = 0; w < used; ++w) {
    pool.emplace_back([&, w] {
      for (i64 k = w; k < count; k += used) fn(k);
    });
  }
  for (auto& th : pool) th.join();
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double quantile_sorted(const std::vector<double>& v, double q) {
  if (v.empty()) return 0;
  double pos = q * static_cast<double>(v.size() - 1);
  auto lo = static_cast<std::size_t>(pos);
  double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

}  // namespace

FunctionalSpec FunctionalSpec::parse(const std::string& name) {
  if (name == "max" || name == "area" || name == "endpoint") return FunctionalSpec{name};
  if (name.rfind("value_at_", 0) == 0) {
    double x = std::stod(name.substr(9));
    if (!(x > 0 && x < 1)) throw validation_error("value_at_<x> requires x in (0,1)");
    return FunctionalSpec{name};
  }
  throw validation_error("unknown functional '" + name +
                         "' (expected max, area, endpoint or value_at_<x>)");
}

RescaledPath rescale(const LatticePath& path, double sigma, int grid_points) {
  if (sigma <= 0) throw validation_error("rescale requires sigma > 0");
  if (path.span() < 1) throw validation_error("cannot rescale a degenerate path (span 0)");
  if (grid_points < 2) throw validation_error("grid needs at least 2 points");
  RescaledPath out;
  out.kind = path.kind;
  out.sigma = sigma;
  out.tree_size = tree_size_of(path);
  out.factor = factor_for(path.kind, sigma, out.tree_size);
  out.values.reserve(static_cast<std::size_t>(grid_points));
  double span = static_cast<double>(path.span());
  for (int g = 0; g < grid_points; ++g) {
    double x = static_cast<double>(g) / static_cast<double>(grid_points - 1);
    out.values.push_back(out.factor * interpolate(path.values, x * span));
  }
  return out;
}

double path_functional(const LatticePath& path, double sigma, const FunctionalSpec& f) {
  if (sigma <= 0) throw validation_error("path_functional requires sigma > 0");
  i64 n = tree_size_of(path);
  double factor = factor_for(path.kind, sigma, n);
  if (f.name == "max") {
    return factor * static_cast<double>(*std::max_element(path.values.begin(),
                                                          path.values.end()));
  }
  if (f.name == "endpoint") {
    return factor * static_cast<double>(path.values.back());
  }
  if (f.name == "area") {
    if (path.span() == 0) return 0;
    double acc = 0;
    for (std::size_t k = 0; k + 1 < path.values.size(); ++k) {
      acc += 0.5 * static_cast<double>(path.values[k] + path.values[k + 1]);
    }
    return factor * acc / static_cast<double>(path.span());
  }
  double x = std::stod(f.name.substr(9));
  return factor * interpolate(path.values, x * static_cast<double>(path.span()));
}

double sup_discrepancy(const PlaneTree& t, double sigma2) {
  const i64 n = t.node_count();
  if (n < 2) throw validation_error("sup_discrepancy requires |t| >= 2");
  LatticePath s_path = t.lukasiewicz();  // span n
  LatticePath h_path = t.height();       // span n-1
  const double half_sigma2 = sigma2 / 2.0;
  double sup = 0;
  // Breakpoints of the piecewise-linear difference: x = k/n and x = k/(n-1).
  for (i64 k = 0; k <= n; ++k) {
    double x = static_cast<double>(k) / static_cast<double>(n);
    double h = interpolate(h_path.values, x * static_cast<double>(n - 1));
    double d = std::abs(static_cast<double>(s_path.values[static_cast<std::size_t>(k)]) -
                        half_sigma2 * h);
    sup = std::max(sup, d);
  }
  for (i64 k = 0; k <= n - 1; ++k) {
    double x = static_cast<double>(k) / static_cast<double>(n - 1);
    double s = interpolate(s_path.values, x * static_cast<double>(n));
    double d = std::abs(s - half_sigma2 *
                                static_cast<double>(h_path.values[static_cast<std::size_t>(k)]));
    sup = std::max(sup, d);
  }
  return sup / std::sqrt(static_cast<double>(n));
}

double sup_discrepancy(const PlaneTree& t, const Rational& sigma2) {
  return sup_discrepancy(t, static_cast<double>(sigma2));
}

std::vector<i64> sample_dyck(i64 m, Rng& rng) {
  if (m < 1) throw validation_error("Dyck path length parameter must be >= 1");
  // Bridge of m up-steps and m+1 down-steps rotated at its first minimum is a
  // uniform +-1 excursion to -1; dropping the final step leaves a Dyck path.
  std::vector<i64> steps;
  steps.reserve(static_cast<std::size_t>(2 * m + 1));
  for (i64 k = 0; k < m; ++k) steps.push_back(1);
  for (i64 k = 0; k < m + 1; ++k) steps.push_back(-1);
  rng.shuffle(steps);
  i64 sum = 0;
  i64 min_value = 0;
  std::size_t min_pos = 0;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    sum += steps[j];
    if (sum < min_value) {
      min_value = sum;
      min_pos = j + 1;
    }
  }
  std::vector<i64> values;
  values.reserve(static_cast<std::size_t>(2 * m + 1));
  values.push_back(0);
  i64 level = 0;
  for (std::size_t k = 0; k + 1 < steps.size(); ++k) {  // drop the last step
    level += steps[(min_pos + k) % steps.size()];
    values.push_back(level);
  }
  return values;
}

std::vector<FunctionalSample> excursion_reference(i64 m, i64 replicas, RngSeed seed,
                                                  const std::vector<FunctionalSpec>& functionals,
                                                  int threads) {
  if (replicas < 1) throw validation_error("need at least one replica");
  std::vector<FunctionalSample> out;
  for (const auto& f : functionals) {
    out.push_back(FunctionalSample{f.name, std::vector<double>(
                                               static_cast<std::size_t>(replicas), 0)});
  }
  parallel_for(replicas, threads, [&](i64 k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    std::vector<i64> values = sample_dyck(m, rng);
    LatticePath path{PathKind::contour, std::move(values)};
    // D(2m x)/sqrt(2m), computed directly so the reference stays independent
    // of the tree normalisation code.
    double root = std::sqrt(static_cast<double>(2 * m));
    for (std::size_t fi = 0; fi < functionals.size(); ++fi) {
      const auto& name = functionals[fi].name;
      double v = 0;
      if (name == "max") {
        v = static_cast<double>(*std::max_element(path.values.begin(), path.values.end())) / root;
      } else if (name == "endpoint") {
        v = static_cast<double>(path.values.back()) / root;
      } else if (name == "area") {
        double acc = 0;
        for (std::size_t i = 0; i + 1 < path.values.size(); ++i) {
          acc += 0.5 * static_cast<double>(path.values[i] + path.values[i + 1]);
        }
        v = acc / static_cast<double>(path.span()) / root;
      } else {
        double x = std::stod(name.substr(9));
        v = interpolate(path.values, x * static_cast<double>(path.span())) / root;
      }
      out[fi].values[static_cast<std::size_t>(k)] = v;
    }
  });
  return out;
}

FamilySpec FamilySpec::parse(const std::string& name) {
  if (name == "binary" || name == "geometric-like" || name == "poisson") {
    return FamilySpec{name};
  }
  if (name == "empirical-gw") {
    return FamilySpec{name, OffspringDistribution::geometric_mean_one()};
  }
  throw validation_error("unknown family '" + name +
                         "' (expected binary, geometric-like, poisson or empirical-gw)");
}

namespace {

DegreeSequence binary_family(i64 size) {
  i64 k = size / 2;  // size 2k+1, rounded up to odd
  if (k < 1) k = 1;
  std::vector<i64> counts(3, 0);
  counts[0] = k + 1;
  counts[2] = k;
  return DegreeSequence::validate(std::move(counts));
}

DegreeSequence geometric_like_family(i64 size) {
  if (size < 4) throw validation_error("geometric-like family needs size >= 4");
  // Profile n_i ~ size * 2^-(i+1) for i >= 2, then n_0 and n_1 are chosen to
  // restore sum n_i = size and sum i n_i = size - 1.
  std::vector<i64> counts;
  counts.assign(2, 0);
  for (i64 i = 2;; ++i) {
    auto c = static_cast<i64>(std::llround(static_cast<double>(size) *
                                           std::ldexp(1.0, static_cast<int>(-(i + 1)))));
    if (c < 1) break;
    counts.push_back(c);
  }
  i64 c2 = 0;
  i64 d2 = 0;
  for (std::size_t i = 2; i < counts.size(); ++i) {
    c2 += counts[i];
    d2 += static_cast<i64>(i) * counts[i];
  }
  i64 n0 = 1 + d2 - c2;
  i64 n1 = size - n0 - c2;
  if (n0 < 1 || n1 < 0) {
    throw validation_error("geometric-like repair failed at this size");
  }
  counts[0] = n0;
  counts[1] = n1;
  return DegreeSequence::validate(std::move(counts));
}

DegreeSequence poisson_family(i64 size, RngSeed seed) {
  if (size < 2) throw validation_error("poisson family needs size >= 2");
  Rng rng(seed);
  OffspringDistribution pois = OffspringDistribution::poisson_mean_one();
  const i64 max_attempts = 1000000;
  for (i64 attempt = 0; attempt < max_attempts; ++attempt) {
    i64 sum = 0;
    std::vector<i64> degrees(static_cast<std::size_t>(size));
    for (auto& d : degrees) {
      d = pois.sample(rng);
      sum += d;
    }
    if (sum != size - 1) continue;
    i64 delta = *std::max_element(degrees.begin(), degrees.end());
    std::vector<i64> counts(static_cast<std::size_t>(delta) + 1, 0);
    for (i64 d : degrees) ++counts[static_cast<std::size_t>(d)];
    return DegreeSequence::validate(std::move(counts));
  }
  throw feasibility_error("poisson family: conditioning on sum = n-1 failed", max_attempts);
}

}  // namespace

DegreeSequence make_family_sequence(const FamilySpec& family, i64 size, RngSeed seed) {
  if (size < 1) throw validation_error("family size must be >= 1");
  if (family.name == "binary") return binary_family(size);
  if (family.name == "geometric-like") return geometric_like_family(size);
  if (family.name == "poisson") return poisson_family(size, seed);
  if (family.name == "empirical-gw") {
    PlaneTree t = sample_gw_conditioned(family.mu, size, seed);
    return t.degree_sequence();
  }
  throw validation_error("unknown family '" + family.name + "'");
}

void ExperimentConfig::validate() const {
  if (families.empty()) throw validation_error("experiment needs at least one family");
  if (sizes.empty()) throw validation_error("experiment needs at least one size");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw validation_error("sizes must be strictly increasing");
  }
  if (replicas < 1) throw validation_error("replicas must be >= 1");
  for (const auto& f : functionals) FunctionalSpec::parse(f.name);
  for (const auto& fam : families) FamilySpec::parse(fam.name);
}

namespace {

struct ReplicaOutput {
  double sigma2 = 0;
  double delta_over_sqrt_n = 0;
  double sup_disc = 0;
  i64 actual_size = 0;
  std::vector<double> functionals;
};

ReplicaOutput run_replica(const FamilySpec& family, i64 size,
                          const std::vector<FunctionalSpec>& functionals, RngSeed seed) {
  Rng rng(seed);
  DegreeSequence s = make_family_sequence(family, size, RngSeed{rng.next_u64()});
  PlaneTree t = sample_uniform(s, rng);
  ReplicaOutput out;
  out.actual_size = s.size();
  out.sigma2 = sigma2_value(s);
  out.delta_over_sqrt_n =
      static_cast<double>(s.max_degree()) / std::sqrt(static_cast<double>(s.size()));
  out.sup_disc = sup_discrepancy(t, out.sigma2);
  if (!functionals.empty()) {
    double sigma = std::sqrt(out.sigma2);
    LatticePath h = t.height();
    out.functionals.reserve(functionals.size());
    for (const auto& f : functionals) {
      out.functionals.push_back(path_functional(h, sigma, f));
    }
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  for (std::size_t fi = 0; fi < config.families.size(); ++fi) {
    for (std::size_t si = 0; si < config.sizes.size(); ++si) {
      const i64 size = config.sizes[si];
      std::vector<ReplicaOutput> outputs(static_cast<std::size_t>(config.replicas));
      // Stream id packs family, size and replica indices.
      std::uint64_t stream_base =
          (static_cast<std::uint64_t>(fi) << 48) | (static_cast<std::uint64_t>(si) << 32);
      parallel_for(config.replicas, config.threads, [&](i64 k) {
        outputs[static_cast<std::size_t>(k)] =
            run_replica(config.families[fi], size, config.functionals,
                        derive_seed(RngSeed{config.seed},
                                    stream_base | static_cast<std::uint64_t>(k)));
      });
      SizeResult result;
      result.family = config.families[fi].name;
      result.requested_size = size;
      std::vector<double> sigma2s;
      std::vector<double> sups;
      for (const auto& o : outputs) {
        sigma2s.push_back(o.sigma2);
        sups.push_back(o.sup_disc);
        result.delta_over_sqrt_n = std::max(result.delta_over_sqrt_n, o.delta_over_sqrt_n);
      }
      result.actual_size = outputs.front().actual_size;
      result.sigma2 = median_of(sigma2s);
      result.sup_discrepancy_median = median_of(sups);
      result.hypothesis_flag = result.delta_over_sqrt_n >= 1.0;
      for (std::size_t f = 0; f < config.functionals.size(); ++f) {
        FunctionalSummary summary;
        summary.name = config.functionals[f].name;
        summary.sorted_values.reserve(outputs.size());
        for (const auto& o : outputs) summary.sorted_values.push_back(o.functionals[f]);
        std::sort(summary.sorted_values.begin(), summary.sorted_values.end());
        double total = 0;
        for (double v : summary.sorted_values) total += v;
        summary.mean = total / static_cast<double>(summary.sorted_values.size());
        summary.median = quantile_sorted(summary.sorted_values, 0.5);
        summary.q25 = quantile_sorted(summary.sorted_values, 0.25);
        summary.q75 = quantile_sorted(summary.sorted_values, 0.75);
        result.functionals.push_back(std::move(summary));
      }
      report.results.push_back(std::move(result));
    }
  }
  // Pairwise KS per functional at the largest size.
  const i64 largest = config.sizes.back();
  for (std::size_t a = 0; a < config.families.size(); ++a) {
    for (std::size_t b = a + 1; b < config.families.size(); ++b) {
      for (std::size_t f = 0; f < config.functionals.size(); ++f) {
        const FunctionalSummary* sa = nullptr;
        const FunctionalSummary* sb = nullptr;
        for (const auto& r : report.results) {
          if (r.requested_size != largest) continue;
          if (r.family == config.families[a].name) sa = &r.functionals[f];
          if (r.family == config.families[b].name) sb = &r.functionals[f];
        }
        if (!sa || !sb) continue;
        KsEntry entry;
        entry.functional = config.functionals[f].name;
        entry.family_a = config.families[a].name;
        entry.family_b = config.families[b].name;
        entry.size = largest;
        entry.report = ks_two_sample(sa->sorted_values, sb->sorted_values);
        report.ks.push_back(std::move(entry));
      }
    }
  }
  return report;
}

ExperimentReport universality_experiment(const ExperimentConfig& config) {
  if (config.families.size() < 2) {
    throw validation_error("universality experiment needs at least two families");
  }
  return run_experiment(config);
}

GwCheckReport gw_hypothesis_check(const OffspringDistribution& mu, i64 n, i64 replicas,
                                  RngSeed seed, int threads) {
  if (!mu.has_mean_one(1e-6)) {
    throw validation_error("gw_hypothesis_check requires a mean-one offspring distribution");
  }
  if (replicas < 1) throw validation_error("need at least one replica");
  constexpr i64 kTrackedDegrees = 6;  // mu_0 .. mu_5
  std::vector<std::vector<double>> mu_errs(kTrackedDegrees,
                                           std::vector<double>(static_cast<std::size_t>(replicas)));
  std::vector<double> sigma_errs(static_cast<std::size_t>(replicas));
  std::vector<double> delta_ratios(static_cast<std::size_t>(replicas));
  const double sigma2_mu = mu.sigma2();
  parallel_for(replicas, threads, [&](i64 k) {
    PlaneTree t =
        sample_gw_conditioned(mu, n, derive_seed(seed, static_cast<std::uint64_t>(k)));
    DegreeSequence s = t.degree_sequence();
    for (i64 i = 0; i < kTrackedDegrees; ++i) {
      double hat = static_cast<double>(s.count(i)) / static_cast<double>(n);
      mu_errs[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          std::abs(hat - mu.probability(i));
    }
    sigma_errs[static_cast<std::size_t>(k)] = std::abs(sigma2_value(s) - sigma2_mu);
    delta_ratios[static_cast<std::size_t>(k)] =
        static_cast<double>(s.max_degree()) / std::sqrt(static_cast<double>(n));
  });
  GwCheckReport report;
  report.n = n;
  report.replicas = replicas;
  for (i64 i = 0; i < kTrackedDegrees; ++i) {
    report.median_mu_abs_err.push_back(median_of(mu_errs[static_cast<std::size_t>(i)]));
  }
  report.median_sigma2_abs_err = median_of(sigma_errs);
  report.median_delta_over_sqrt_n = median_of(delta_ratios);
  return report;
}

std::vector<double> sup_discrepancy_medians(const FamilySpec& family,
                                            const std::vector<i64>& sizes, i64 replicas,
                                            RngSeed seed, int threads) {
  std::vector<double> medians;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    std::vector<double> sups(static_cast<std::size_t>(replicas));
    std::uint64_t stream_base = static_cast<std::uint64_t>(si) << 32;
    parallel_for(replicas, threads, [&](i64 k) {
      ReplicaOutput out = run_replica(family, sizes[si], {},
                                      derive_seed(seed, stream_base |
                                                            static_cast<std::uint64_t>(k)));
      sups[static_cast<std::size_t>(k)] = out.sup_disc;
    });
    medians.push_back(median_of(sups));
  }
  return medians;
}

std::vector<double> height_functional_samples(const FamilySpec& family, i64 size, i64 replicas,
                                              const FunctionalSpec& functional, RngSeed seed,
                                              int threads) {
  std::vector<double> values(static_cast<std::size_t>(replicas));
  std::vector<FunctionalSpec> fs{functional};
  parallel_for(replicas, threads, [&](i64 k) {
    ReplicaOutput out =
        run_replica(family, size, fs, derive_seed(seed, static_cast<std::uint64_t>(k)));
    values[static_cast<std::size_t>(k)] = out.functionals.front();
  });
  return values;
}

}  // namespace ptree
