#include "ptree/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ptree/errors.hpp"

namespace ptree {

OffspringDistribution OffspringDistribution::from_probabilities(std::vector<double> probs) {
  if (probs.empty()) throw validation_error("offspring distribution must not be empty");
  double sum = 0;
  for (double p : probs) {
    if (p < 0) throw validation_error("offspring probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw validation_error("offspring probabilities must sum to 1");
  }
  while (probs.size() > 1 && probs.back() == 0) probs.pop_back();
  return OffspringDistribution(Family::explicit_pmf, std::move(probs), "explicit");
}

OffspringDistribution OffspringDistribution::geometric_mean_one() {
  return OffspringDistribution(Family::geometric, {}, "geometric");
}

OffspringDistribution OffspringDistribution::poisson_mean_one() {
  return OffspringDistribution(Family::poisson, {}, "poisson");
}

double OffspringDistribution::probability(i64 i) const {
  if (i < 0) return 0;
  switch (family_) {
    case Family::explicit_pmf:
      return i < static_cast<i64>(probs_.size()) ? probs_[static_cast<std::size_t>(i)] : 0.0;
    case Family::geometric:
      return std::ldexp(1.0, static_cast<int>(-(i + 1)));
    case Family::poisson: {
      double p = std::exp(-1.0);
      for (i64 k = 1; k <= i; ++k) p /= static_cast<double>(k);
      return p;
    }
  }
  return 0;
}

double OffspringDistribution::mean() const {
  if (family_ != Family::explicit_pmf) return 1.0;
  double m = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) m += static_cast<double>(i) * probs_[i];
  return m;
}

double OffspringDistribution::sigma2() const {
  switch (family_) {
    case Family::geometric:
      return 2.0;
    case Family::poisson:
      return 1.0;
    case Family::explicit_pmf: {
      double m2 = 0;
      for (std::size_t i = 0; i < probs_.size(); ++i) {
        m2 += static_cast<double>(i) * static_cast<double>(i) * probs_[i];
      }
      return m2 - 1.0;
    }
  }
  return 0;
}

bool OffspringDistribution::has_mean_one(double tol) const {
  return std::abs(mean() - 1.0) <= tol;
}

i64 OffspringDistribution::sample(Rng& rng) const {
  double u = rng.unit_real();
  // Inverse-cdf walk; the named families compute the pmf incrementally.
  if (family_ == Family::explicit_pmf) {
    double cum = 0;
    for (std::size_t i = 0; i + 1 < probs_.size(); ++i) {
      cum += probs_[i];
      if (u < cum) return static_cast<i64>(i);
    }
    return static_cast<i64>(probs_.size()) - 1;
  }
  double p = family_ == Family::geometric ? 0.5 : std::exp(-1.0);
  double cum = p;
  i64 i = 0;
  while (u >= cum && i < (i64{1} << 20)) {
    ++i;
    p = family_ == Family::geometric ? p / 2.0 : p / static_cast<double>(i);
    cum += p;
  }
  return i;
}

namespace {

// Child counts after shuffling, rotated so the walk becomes an excursion:
// rotation starts right after the first minimum of the walk.
std::vector<i64> rotate_at_first_minimum(const std::vector<i64>& degrees) {
  const std::size_t n = degrees.size();
  i64 sum = 0;
  i64 min_value = 0;
  std::size_t min_pos = 0;  // first j in {1..n} attaining the minimum
  for (std::size_t j = 0; j < n; ++j) {
    sum += degrees[j] - 1;
    if (sum < min_value) {
      min_value = sum;
      min_pos = j + 1;
    }
  }
  std::vector<i64> rotated;
  rotated.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    rotated.push_back(degrees[(min_pos + k) % n]);
  }
  return rotated;
}

}  // namespace

PlaneTree sample_uniform(const DegreeSequence& s, Rng& rng) {
  if (!s.is_tree()) {
    throw validation_error("sample_uniform requires a tree sequence (r = 1); "
                           "use sample_uniform_forest for r >= 2");
  }
  std::vector<i64> degrees = s.degree_multiset();
  rng.shuffle(degrees);
  return PlaneTree::from_child_counts(rotate_at_first_minimum(degrees));
}

PlaneTree sample_uniform(const DegreeSequence& s, RngSeed seed) {
  Rng rng(seed);
  return sample_uniform(s, rng);
}

std::vector<PlaneTree> sample_uniform_forest(const DegreeSequence& s, Rng& rng) {
  const i64 r = s.roots();
  std::vector<i64> degrees = s.degree_multiset();
  rng.shuffle(degrees);
  const std::size_t n = degrees.size();
  // First hitting times of min, min+1, ..., min+r-1 are the r valid cuts.
  i64 sum = 0;
  i64 min_value = 0;
  std::vector<std::size_t> first_hit;  // position of first hit per new low
  for (std::size_t j = 0; j < n; ++j) {
    sum += degrees[j] - 1;
    if (sum < min_value) {
      min_value = sum;
      first_hit.push_back(j + 1);
    }
  }
  // first_hit[k] is the first hit of -(k+1); the valid cuts are the first hits
  // of min_value + i for i in [0, r), i.e. the last r entries.
  std::size_t pick = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(r)));
  std::size_t cut = first_hit[first_hit.size() - 1 - pick];
  std::vector<i64> rotated;
  rotated.reserve(n);
  for (std::size_t k = 0; k < n; ++k) rotated.push_back(degrees[(cut + k) % n]);
  // Split at the first hits of -1..-r.
  std::vector<PlaneTree> forest;
  forest.reserve(static_cast<std::size_t>(r));
  i64 walk = 0;
  i64 low = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < n; ++k) {
    walk += rotated[k] - 1;
    if (walk < low) {
      low = walk;
      forest.push_back(PlaneTree::from_child_counts(
          std::vector<i64>(rotated.begin() + static_cast<std::ptrdiff_t>(start),
                           rotated.begin() + static_cast<std::ptrdiff_t>(k + 1))));
      start = k + 1;
    }
  }
  return forest;
}

std::vector<PlaneTree> sample_uniform_forest(const DegreeSequence& s, RngSeed seed) {
  Rng rng(seed);
  return sample_uniform_forest(s, rng);
}

MarkedTree sample_marked(const DegreeSequence& s, Rng& rng) {
  PlaneTree t = sample_uniform(s, rng);
  NodeId mark{static_cast<i64>(rng.below(static_cast<std::uint64_t>(s.size()))) + 1};
  return MarkedTree{std::move(t), mark};
}

MarkedTree sample_marked(const DegreeSequence& s, RngSeed seed) {
  Rng rng(seed);
  return sample_marked(s, rng);
}

PlaneTree insert_unary(const PlaneTree& t_star, i64 n1, Rng& rng) {
  for (i64 c : t_star.child_counts()) {
    if (c == 1) throw validation_error("insert_unary requires a tree without degree-one nodes");
  }
  if (n1 < 0) throw validation_error("n1 must be non-negative");
  if (n1 == 0) return t_star;
  const i64 slots = t_star.node_count();  // edge above each node, phantom for the root
  // Uniform composition of n1 into `slots` parts via stars and bars: choose
  // slots-1 bar positions among n1+slots-1 uniformly.
  std::vector<i64> counts(static_cast<std::size_t>(slots), 0);
  if (slots == 1) {
    counts[0] = n1;
  } else {
    const i64 total = n1 + slots - 1;
    std::vector<i64> positions(static_cast<std::size_t>(total));
    for (i64 i = 0; i < total; ++i) positions[static_cast<std::size_t>(i)] = i;
    // Partial Fisher-Yates: the first slots-1 entries become the bars.
    for (i64 i = 0; i < slots - 1; ++i) {
      i64 j = i + static_cast<i64>(rng.below(static_cast<std::uint64_t>(total - i)));
      std::swap(positions[static_cast<std::size_t>(i)], positions[static_cast<std::size_t>(j)]);
    }
    std::vector<i64> bars(positions.begin(), positions.begin() + (slots - 1));
    std::sort(bars.begin(), bars.end());
    i64 prev = -1;
    for (i64 b = 0; b < slots - 1; ++b) {
      counts[static_cast<std::size_t>(b)] = bars[static_cast<std::size_t>(b)] - prev - 1;
      prev = bars[static_cast<std::size_t>(b)];
    }
    counts[static_cast<std::size_t>(slots - 1)] = total - 1 - prev;
  }
  // Slot of node v = edge above v: the inserted chain precedes v in DFS order.
  std::vector<i64> result;
  result.reserve(static_cast<std::size_t>(t_star.node_count() + n1));
  for (i64 rank = 1; rank <= t_star.node_count(); ++rank) {
    for (i64 k = 0; k < counts[static_cast<std::size_t>(rank - 1)]; ++k) result.push_back(1);
    result.push_back(t_star.child_counts()[static_cast<std::size_t>(rank - 1)]);
  }
  return PlaneTree::from_child_counts(std::move(result));
}

PlaneTree insert_unary(const PlaneTree& t_star, i64 n1, RngSeed seed) {
  Rng rng(seed);
  return insert_unary(t_star, n1, rng);
}

PlaneTree erase_unary(const PlaneTree& t) {
  std::vector<i64> counts;
  counts.reserve(t.child_counts().size());
  for (i64 c : t.child_counts()) {
    if (c != 1) counts.push_back(c);
  }
  return PlaneTree::from_child_counts(std::move(counts));
}

PlaneTree sample_gw_conditioned(const OffspringDistribution& mu, i64 n, RngSeed seed,
                                i64 max_attempts, i64* attempts_out) {
  if (n < 1) throw validation_error("tree size must be at least 1");
  Rng rng(seed);
  std::vector<i64> degrees(static_cast<std::size_t>(n));
  for (i64 attempt = 1; attempt <= max_attempts; ++attempt) {
    i64 sum = 0;
    for (auto& d : degrees) {
      d = mu.sample(rng);
      sum += d - 1;
    }
    if (sum != -1) continue;  // not a bridge to -1
    if (attempts_out) *attempts_out = attempt;
    return PlaneTree::from_child_counts(rotate_at_first_minimum(degrees));
  }
  throw feasibility_error(
      "sample_gw_conditioned: no bridge to -1 in " + std::to_string(max_attempts) +
          " attempts for n = " + std::to_string(n) +
          " (check that P(|t| = n) > 0 for the offspring distribution, e.g. periodicity)",
      max_attempts);
}

std::vector<PlaneTree> sample_batch(const DegreeSequence& s, i64 count, RngSeed seed,
                                    int threads) {
  if (count < 0) throw validation_error("count must be non-negative");
  std::vector<std::optional<PlaneTree>> slots(static_cast<std::size_t>(count));
  auto worker = [&](i64 begin, i64 stride) {
    for (i64 k = begin; k < count; k += stride) {
      slots[static_cast<std::size_t>(k)] =
          sample_uniform(s, derive_seed(seed, static_cast<std::uint64_t>(k)));
    }
  };
  int used = std::max(1, threads);
  if (used == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(used));
    for (int w = 0; w < used; ++w) pool.emplace_back(worker, w, used);
    for (auto& th : pool) th.join();
  }
  std::vector<PlaneTree> out;
  out.reserve(static_cast<std::size_t>(count));
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace ptree
