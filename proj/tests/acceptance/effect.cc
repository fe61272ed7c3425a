#include <fmt/format.h>

#include "acceptance.h"
#include "eventcrawl/evaluation.h"
#include "eventcrawl/synthetic_archive.h"
#include "fixtures.h"

namespace eventcrawl::acceptance {
namespace {

Verdict focusing_effectiveness() {
  const std::vector<CrawlStrategy> strategies = {CrawlStrategy{StrategyKind::unfocused},
                                                 CrawlStrategy{StrategyKind::content_focused},
                                                 CrawlStrategy{StrategyKind::combined}};
  std::vector<double> unfocused, content, combined;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    testing::TempDir dir("eventcrawl-ac6");
    SyntheticArchiveConfig config;
    config.page_count = 5000;
    config.relevant_fraction = 0.1;
    config.topical_locality = 0.8;
    config.crawl_budget = 1000;
    config.random_seed = seed;
    const SyntheticArchive archive = generate_archive(config, dir.path());
    const ArchiveIndex index = scan_warcs(archive.warc_paths);
    const EvalReport report = run_comparison(archive.spec, index, strategies, 100, archive.idf);
    if (!report.all_succeeded()) return {false, fmt::format("seed {}: a strategy failed", seed)};
    unfocused.push_back(report.series[0].final_accumulated_relevance);
    content.push_back(report.series[1].final_accumulated_relevance);
    combined.push_back(report.series[2].final_accumulated_relevance);
  }
  const auto u = mean_std(unfocused);
  const auto c = mean_std(content);
  const auto ct = mean_std(combined);
  const double c_ratio = c.mean / u.mean;
  const double ct_ratio = ct.mean / u.mean;
  return {c_ratio >= 1.5 && ct_ratio >= 1.5,
          fmt::format("mean accumulated relevance unfocused {:.1f}±{:.1f}, c-f {:.1f}±{:.1f} "
                      "(x{:.2f}), ct-f {:.1f}±{:.1f} (x{:.2f}); required x1.50",
                      u.mean, u.stddev, c.mean, c.stddev, c_ratio, ct.mean, ct.stddev, ct_ratio)};
}

Verdict keyword_boost_effect() {
  const std::vector<CrawlStrategy> ctf = {CrawlStrategy{StrategyKind::combined}};
  int improved = 0;
  std::string ratios;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    testing::TempDir dir("eventcrawl-ac7");
    SyntheticArchiveConfig config;
    config.page_count = 3000;
    config.relevant_fraction = 0.1;
    config.confusable_fraction = 0.1;
    config.crawl_budget = 300;
    config.random_seed = seed;
    const SyntheticArchive archive = generate_archive(config, dir.path());
    const ArchiveIndex index = scan_warcs(archive.warc_paths);
    CollectionSpecification with_keyword = archive.spec;
    with_keyword.topical.keywords = {archive.target_keyword};
    // Both crawls are judged against the same keyword-aware reference.
    EvalOptions options;
    options.evaluation_topic = with_keyword.topical;
    const EvalReport base = run_comparison(archive.spec, index, ctf, 50, archive.idf, options);
    const EvalReport variant = run_comparison(with_keyword, index, ctf, 50, archive.idf, options);
    const auto r = compare_variants(base, variant);
    if (r.size() != 1) return {false, fmt::format("seed {}: crawl failed", seed)};
    improved += r[0].ratio > 1.0;
    ratios += fmt::format("{}{:.3f}", ratios.empty() ? "" : ", ", r[0].ratio);
  }
  return {improved >= 4,
          fmt::format("ct-f improvement ratio > 1 in {}/5 seeds (ratios {}); required 4", improved,
                      ratios)};
}

}  // namespace

std::vector<Criterion> effect_criteria() {
  using std::chrono::seconds;
  return {{"AC6", "focused crawls beat the unfocused baseline", seconds(300),
           focusing_effectiveness},
          {"AC7", "keyword boost improves accumulated relevance", seconds(300),
           keyword_boost_effect}};
}

}  // namespace eventcrawl::acceptance
