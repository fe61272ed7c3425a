#include "eventcrawl/evaluation.h"

#include <cmath>
#include <future>
#include <stdexcept>

#include "eventcrawl/csv.h"
#include "eventcrawl/html.h"

namespace eventcrawl {
namespace {

StrategySeries evaluate(const CrawlStrategy& strategy, const CrawlResult& result,
                        const DocumentScorer* evaluator, std::size_t interval) {
  StrategySeries series;
  series.strategy = strategy;
  series.fetched = result.collection.size();
  series.missing = result.missing.size();
  series.queued_at_end = result.queued_at_end;
  series.urls_considered = series.fetched + series.missing + series.queued_at_end;

  double total = 0.0;
  for (std::size_t i = 0; i < result.collection.size(); ++i) {
    const auto& doc = result.collection[i];
    const double relevance =
        evaluator ? evaluator->topical(extract_text(fetch_document(doc.snapshot)))
                  : doc.score.topical;
    series.document_relevance.push_back(relevance);
    total += relevance;
    if ((i + 1) % interval == 0) series.checkpoints.push_back({i + 1, total});
  }
  if (series.fetched % interval != 0) series.checkpoints.push_back({series.fetched, total});
  series.final_accumulated_relevance = total;
  return series;
}

}  // namespace

bool EvalReport::all_succeeded() const {
  for (const auto& s : series) {
    if (s.error) return false;
  }
  return true;
}

const StrategySeries* EvalReport::find(std::string_view strategy_name) const {
  for (const auto& s : series) {
    if (s.strategy.name() == strategy_name) return &s;
  }
  return nullptr;
}

EvalReport run_comparison(const CollectionSpecification& spec, const ArchiveIndex& index,
                          std::span<const CrawlStrategy> strategies,
                          std::size_t checkpoint_interval, const IdfDictionary& idf,
                          const EvalOptions& options) {
  if (checkpoint_interval == 0) throw std::invalid_argument("checkpoint must be positive");

  const DocumentScorer scorer = DocumentScorer::for_spec(spec, index, idf, options.crawl);
  std::optional<DocumentScorer> evaluator;
  if (options.evaluation_topic) {
    CollectionSpecification evaluation_spec = spec;
    evaluation_spec.topical = *options.evaluation_topic;
    evaluator = DocumentScorer::for_spec(evaluation_spec, index, idf, options.crawl);
  }

  const auto run_one = [&](const CrawlStrategy& strategy) {
    try {
      const CrawlResult result = options.crawl_runner
                                     ? options.crawl_runner(strategy)
                                     : run_crawl(spec, index, strategy, scorer);
      return evaluate(strategy, result, evaluator ? &*evaluator : nullptr, checkpoint_interval);
    } catch (const std::exception& e) {
      StrategySeries failed;
      failed.strategy = strategy;
      failed.error = e.what();
      return failed;
    }
  };

  EvalReport report;
  report.budget = spec.target_size;
  report.checkpoint_interval = checkpoint_interval;
  if (options.parallel && strategies.size() > 1) {
    std::vector<std::future<StrategySeries>> pending;
    pending.reserve(strategies.size());
    for (const auto& strategy : strategies) {
      pending.push_back(std::async(std::launch::async, run_one, strategy));
    }
    for (auto& f : pending) report.series.push_back(f.get());
  } else {
    for (const auto& strategy : strategies) report.series.push_back(run_one(strategy));
  }
  return report;
}

std::vector<ImprovementRatio> compare_variants(const EvalReport& base, const EvalReport& variant) {
  if (base.budget != variant.budget) {
    throw std::invalid_argument("mismatched budgets: " + std::to_string(base.budget) + " vs " +
                                std::to_string(variant.budget));
  }
  std::vector<ImprovementRatio> out;
  for (const auto& b : base.series) {
    const StrategySeries* v = variant.find(b.strategy.name());
    if (b.error || !v || v->error) continue;
    if (b.final_accumulated_relevance == 0.0) {
      throw std::domain_error("undefined ratio: base accumulated relevance of " +
                              std::string(b.strategy.name()) + " is zero");
    }
    out.push_back({b.strategy, b.final_accumulated_relevance, v->final_accumulated_relevance,
                   v->final_accumulated_relevance / b.final_accumulated_relevance});
  }
  return out;
}

void write_series_csv(std::ostream& out, const EvalReport& report) {
  write_csv_row(out, {"strategy", "documents_downloaded", "accumulated_relevance"});
  for (const auto& s : report.series) {
    if (s.error) continue;
    for (const auto& c : s.checkpoints) {
      write_csv_row(out, {s.strategy.name(), std::to_string(c.documents_downloaded),
                          format_real(c.accumulated_relevance)});
    }
  }
}

void write_summary_csv(std::ostream& out, const EvalReport& report) {
  write_csv_row(out, {"strategy", "urls_considered", "fetched", "missing", "queued_at_end"});
  for (const auto& s : report.series) {
    if (s.error) continue;
    write_csv_row(out, {s.strategy.name(), std::to_string(s.urls_considered),
                        std::to_string(s.fetched), std::to_string(s.missing),
                        std::to_string(s.queued_at_end)});
  }
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

}  // namespace eventcrawl
