#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eventcrawl/crawler.h"

namespace eventcrawl {

struct CheckpointSample {
  std::size_t documents_downloaded = 0;
  double accumulated_relevance = 0.0;
};

/// One strategy's run within a comparison.
struct StrategySeries {
  CrawlStrategy strategy;
  std::vector<CheckpointSample> checkpoints;
  /// Evaluation relevance of each fetched document, in fetch order.
  std::vector<double> document_relevance;
  std::size_t fetched = 0;
  std::size_t missing = 0;
  std::size_t queued_at_end = 0;
  std::size_t urls_considered = 0;  // fetched + missing + queued_at_end
  double final_accumulated_relevance = 0.0;
  std::optional<std::string> error;  // set when the crawl failed
};

struct EvalReport {
  std::uint64_t budget = 0;
  std::size_t checkpoint_interval = 0;
  std::vector<StrategySeries> series;  // input strategy order

  bool all_succeeded() const;
  const StrategySeries* find(std::string_view strategy_name) const;
};

struct EvalOptions {
  CrawlOptions crawl;
  /// Topic used to score collected documents; defaults to the spec's own.
  /// Lets variants crawled with different references be judged alike.
  std::optional<TopicalScope> evaluation_topic;
  bool parallel = true;
  /// Replaces run_crawl for individual strategies (failure injection in tests).
  std::function<CrawlResult(const CrawlStrategy&)> crawl_runner;
};

/// Runs every strategy with the same spec and budget and records the
/// accumulated topical relevance of the fetched documents at each multiple of
/// `checkpoint_interval` (plus a final sample when the crawl stopped between
/// checkpoints). A failing strategy gets its error recorded and does not
/// affect the others. Throws std::invalid_argument for a zero interval and
/// ReferenceResolutionError when the reference cannot be built.
EvalReport run_comparison(const CollectionSpecification& spec, const ArchiveIndex& index,
                          std::span<const CrawlStrategy> strategies,
                          std::size_t checkpoint_interval,
                          const IdfDictionary& idf = IdfDictionary::bundled(),
                          const EvalOptions& options = {});

struct ImprovementRatio {
  CrawlStrategy strategy;
  double base = 0.0;
  double variant = 0.0;
  double ratio = 0.0;
};

/// variant / base final accumulated relevance for every strategy that
/// succeeded in both reports. Throws std::invalid_argument for mismatched
/// budgets and std::domain_error("undefined ratio") for a zero base.
std::vector<ImprovementRatio> compare_variants(const EvalReport& base, const EvalReport& variant);

/// `strategy,documents_downloaded,accumulated_relevance`
void write_series_csv(std::ostream& out, const EvalReport& report);
/// `strategy,urls_considered,fetched,missing,queued_at_end`
void write_summary_csv(std::ostream& out, const EvalReport& report);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for fewer than two values
};

MeanStd mean_std(std::span<const double> values);

}  // namespace eventcrawl
