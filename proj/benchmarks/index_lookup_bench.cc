#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "eventcrawl/archive_index.h"
#include "eventcrawl/random.h"

namespace {

using namespace eventcrawl;

std::string url(std::size_t i) {
  return "http://host" + std::to_string(i % 1000) + ".example/page/" + std::to_string(i);
}

void BM_SnapshotsOf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<SnapshotRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    records.push_back({url(i), Timestamp{Seconds{1300000000}}, "a.warc", i, 100, 200, "text/html"});
  }
  const ArchiveIndex index = ArchiveIndex::from_records(std::move(records));
  Rng rng(1);
  std::vector<std::string> probes;
  for (int i = 0; i < 4096; ++i) probes.push_back(url(rng.below(n)));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.snapshots_of(probes[k++ & 4095]));
  }
}
BENCHMARK(BM_SnapshotsOf)->RangeMultiplier(10)->Range(1000, 1000000);

void BM_ResolveSnapshots(benchmark::State& state) {
  std::vector<SnapshotRecord> records;
  for (std::size_t i = 0; i < 100000; ++i) {
    records.push_back({url(i), Timestamp{Seconds{1300000000}}, "a.warc", i, 100, 200, "text/html"});
  }
  const ArchiveIndex index = ArchiveIndex::from_records(std::move(records));
  const std::string probe = "HTTP://Host7.example:80/page/5007#frag";
  for (auto _ : state) benchmark::DoNotOptimize(index.resolve_snapshots(probe));
}
BENCHMARK(BM_ResolveSnapshots);

}  // namespace
