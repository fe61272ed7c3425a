#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "eventcrawl/frontier.h"
#include "eventcrawl/random.h"

namespace {

using namespace eventcrawl;

// Crawl-shaped workload: each pop discovers a handful of URLs, some already queued.
void BM_FrontierCrawlPattern(benchmark::State& state) {
  const auto universe = static_cast<std::uint64_t>(state.range(0));
  std::vector<std::string> urls;
  for (std::uint64_t i = 0; i < universe; ++i) urls.push_back("http://e.example/" + std::to_string(i));
  for (auto _ : state) {
    Rng rng(3);
    Frontier f;
    f.push(urls[0], kSeedPriority);
    std::size_t pops = 0;
    while (auto e = f.pop()) {
      if (++pops == universe / 2) break;
      const double priority = rng.uniform();
      for (int k = 0; k < 8; ++k) f.push(urls[rng.below(universe)], priority);
    }
    benchmark::DoNotOptimize(pops);
  }
}
BENCHMARK(BM_FrontierCrawlPattern)->Arg(10000)->Arg(100000);

}  // namespace
