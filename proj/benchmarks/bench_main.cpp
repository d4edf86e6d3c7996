#include <benchmark/benchmark.h>

#include "ptree/coalescent.hpp"
#include "ptree/limits.hpp"
#include "ptree/oracle.hpp"
#include "ptree/sampler.hpp"

using namespace ptree;

namespace {

DegreeSequence binary_sequence(i64 n) {
  return make_family_sequence(FamilySpec::parse("binary"), n, RngSeed{0});
}

void BM_SampleUniform(benchmark::State& state) {
  DegreeSequence s = binary_sequence(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_uniform(s, RngSeed{seed++}));
  }
  state.SetItemsProcessed(state.iterations() * s.size());
}
BENCHMARK(BM_SampleUniform)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_Encodings(benchmark::State& state) {
  PlaneTree t = sample_uniform(binary_sequence(state.range(0)), RngSeed{5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.lukasiewicz());
    benchmark::DoNotOptimize(t.height());
    benchmark::DoNotOptimize(t.contour());
  }
  state.SetItemsProcessed(state.iterations() * t.node_count());
}
BENCHMARK(BM_Encodings)->Arg(10000)->Arg(100000);

void BM_SupDiscrepancy(benchmark::State& state) {
  DegreeSequence s = binary_sequence(state.range(0));
  PlaneTree t = sample_uniform(s, RngSeed{6});
  double sigma2 = sigma2_value(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sup_discrepancy(t, sigma2));
  }
}
BENCHMARK(BM_SupDiscrepancy)->Arg(10000)->Arg(100000);

void BM_CoalescePlane(benchmark::State& state) {
  DegreeSequence s = binary_sequence(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(coalesce_plane(s, RngSeed{seed++}));
  }
  state.SetItemsProcessed(state.iterations() * s.size());
}
BENCHMARK(BM_CoalescePlane)->Arg(1000)->Arg(10000);

void BM_GwConditioned(benchmark::State& state) {
  OffspringDistribution geo = OffspringDistribution::geometric_mean_one();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_gw_conditioned(geo, state.range(0), RngSeed{seed++}));
  }
}
BENCHMARK(BM_GwConditioned)->Arg(100)->Arg(1000);

void BM_EnumerateTrees(benchmark::State& state) {
  DegreeSequence s = DegreeSequence::validate({5, 2, 2, 1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_trees(s));
  }
}
BENCHMARK(BM_EnumerateTrees);

void BM_DyckReference(benchmark::State& state) {
  Rng rng(RngSeed{7});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_dyck(state.range(0), rng));
  }
}
BENCHMARK(BM_DyckReference)->Arg(10000)->Arg(100000);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
