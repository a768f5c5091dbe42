#include <benchmark/benchmark.h>

#include "sitekit/comparison.hpp"
#include "sitekit/enumerate.hpp"
#include "sitekit/random_site.hpp"

using namespace sitekit;

namespace {

const std::vector<Site>& random_sites() {
  static const std::vector<Site> sites = [] {
    std::vector<Site> out;
    for (std::size_t i = 0; i < 32; ++i) out.push_back(load_site(random_site(random_site_seed(7, i))));
    return out;
  }();
  return sites;
}

void BM_SheafifyFixture(benchmark::State& state, const char* site_name, const char* presheaf) {
  Site site = load_site(fixture(site_name));
  PresheafPtr f = site.presheaves.at(presheaf).presheaf;
  for (auto _ : state) benchmark::DoNotOptimize(sheafify(f, site.topology));
}
BENCHMARK_CAPTURE(BM_SheafifyFixture, B_K2, "B", "K2");
BENCHMARK_CAPTURE(BM_SheafifyFixture, D_P, "D", "P");

void BM_SheafifyRandomPopulation(benchmark::State& state) {
  std::vector<std::pair<const Site*, PresheafPtr>> work;
  for (const Site& s : random_sites()) {
    for (const PresheafPtr& p : sample_presheaves(s.base(), 2, 16, 1).presheaves) work.emplace_back(&s, p);
  }
  for (auto _ : state) {
    for (const auto& [site, p] : work) benchmark::DoNotOptimize(sheafify(p, site->topology));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(work.size()));
}
BENCHMARK(BM_SheafifyRandomPopulation)->Unit(benchmark::kMillisecond);

void BM_InducedTopologyFixtureB(benchmark::State& state) {
  Site site = load_site(fixture("B"));
  for (auto _ : state) benchmark::DoNotOptimize(compute_induced_topology(site.ho, site.topology));
}
BENCHMARK(BM_InducedTopologyFixtureB);

void BM_InducedTopologyRandom(benchmark::State& state) {
  const auto& sites = random_sites();
  for (auto _ : state) {
    for (const Site& s : sites) benchmark::DoNotOptimize(compute_induced_topology(s.ho, s.topology));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sites.size()));
}
BENCHMARK(BM_InducedTopologyRandom)->Unit(benchmark::kMillisecond);

void BM_CheckSiteFixtureB(benchmark::State& state) {
  Site site = load_site(fixture("B"));
  for (auto _ : state) benchmark::DoNotOptimize(check_site(site, LemmaBounds{}));
}
BENCHMARK(BM_CheckSiteFixtureB)->Unit(benchmark::kMillisecond);

void BM_EnumeratePresheaves(benchmark::State& state) {
  Site site = load_site(fixture("D"));
  const auto bound = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_presheaves(site.base(), bound, 1u << 20));
}
BENCHMARK(BM_EnumeratePresheaves)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
