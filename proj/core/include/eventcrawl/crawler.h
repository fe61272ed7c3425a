#pragma once

#include <array>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eventcrawl/analyzer.h"
#include "eventcrawl/archive_index.h"
#include "eventcrawl/collection_spec.h"
#include "eventcrawl/frontier.h"
#include "eventcrawl/relevance.h"
#include "eventcrawl/term_vector.h"

namespace eventcrawl {

enum class StrategyKind { unfocused, content_focused, time_focused, combined };

class UnknownStrategyError : public std::invalid_argument {
 public:
  explicit UnknownStrategyError(std::string_view name);
};

/// How outlinks of a fetched document are prioritized.
struct CrawlStrategy {
  StrategyKind kind = StrategyKind::combined;

  /// "unfocused", "c-f", "t-f" or "ct-f" (case-insensitive).
  static CrawlStrategy parse(std::string_view name);
  std::string_view name() const;

  /// Priority for the outlinks of a document with `score`: 0 for unfocused,
  /// the topical part for C-F, the temporal part for T-F and the combined
  /// score (spec alpha) for CT-F.
  double priority(const RelevanceScore& score) const;

  friend bool operator==(const CrawlStrategy&, const CrawlStrategy&) = default;
};

inline constexpr std::array<CrawlStrategy, 4> kAllStrategies = {
    CrawlStrategy{StrategyKind::unfocused}, CrawlStrategy{StrategyKind::content_focused},
    CrawlStrategy{StrategyKind::time_focused}, CrawlStrategy{StrategyKind::combined}};

/// Earliest capture inside the event interval, else the capture closest to
/// it (earlier capture on ties). `snapshots` must be non-empty and sorted by
/// capture time.
const SnapshotRecord& select_snapshot(std::span<const SnapshotRecord> snapshots,
                                      const TemporalScope& scope);

/// Anchor targets resolved against `base_url` (or an in-page <base href>),
/// canonicalized, http/https only, first occurrence order.
std::vector<std::string> extract_outlinks(std::string_view html, std::string_view base_url);
std::vector<std::string> extract_outlinks(const ArchivedDocument& document);

/// Resolves inline, file and archive-url references; archive URLs use the
/// snapshot chosen by select_snapshot.
ReferenceResolver archive_reference_resolver(const ArchiveIndex& index, const TemporalScope& scope);

struct CrawlOptions {
  TemporalOptions temporal;
  KeywordBoost boost;
  TfScaling tf = TfScaling::raw;
};

struct ScoredDocument {
  RelevanceScore score;
  DocumentTime document_time;
};

/// Topical and temporal scoring of fetched pages against one specification.
class DocumentScorer {
 public:
  DocumentScorer(TermVector reference, Language language, const IdfDictionary& idf,
                 TemporalScope scope, double alpha, CrawlOptions options = {});

  /// Builds the reference vector from the spec, resolving archive-url
  /// references through `index`. Throws ReferenceResolutionError.
  static DocumentScorer for_spec(const CollectionSpecification& spec, const ArchiveIndex& index,
                                 const IdfDictionary& idf, const CrawlOptions& options = {});

  ScoredDocument score(const ArchivedDocument& document) const;
  double topical(std::string_view text) const;

  const TermVector& reference() const { return reference_; }

 private:
  TermVector reference_;
  Analyzer analyzer_;
  const IdfDictionary* idf_;
  TemporalScope scope_;
  double alpha_;
  CrawlOptions options_;
};

struct CollectedDocument {
  SnapshotRecord snapshot;
  RelevanceScore score;
  DocumentTime document_time;
  std::vector<std::string> outlinks;
  double priority = 0.0;  // frontier priority the URL was popped with
};

enum class TraceAction { fetch, miss, skip };

std::string_view trace_action_name(TraceAction action);

struct TraceEntry {
  std::size_t step = 0;
  TraceAction action = TraceAction::fetch;
  std::string url;
  double priority = 0.0;
  std::optional<Timestamp> snapshot_time;
  std::optional<RelevanceScore> score;
};

struct CrawlResult {
  std::vector<CollectedDocument> collection;  // fetch order
  std::vector<std::string> missing;           // discovery order
  std::vector<TraceEntry> trace;
  std::size_t queued_at_end = 0;
};

using TraceObserver = std::function<void(const TraceEntry&)>;

/// Priority-driven crawl over the archive's link graph. Seeds go first at
/// kSeedPriority; each popped URL is resolved in the index, missing URLs are
/// recorded once, and fetched documents are scored and their unseen outlinks
/// enqueued at the strategy priority of the linking document. A URL already
/// queued keeps the higher of its two priorities. Stops when the frontier is
/// empty or spec.target_size documents were collected.
CrawlResult run_crawl(const CollectionSpecification& spec, const ArchiveIndex& index,
                      const CrawlStrategy& strategy, const DocumentScorer& scorer,
                      const TraceObserver& observer = {});

/// Convenience overload building the scorer from the spec.
CrawlResult run_crawl(const CollectionSpecification& spec, const ArchiveIndex& index,
                      const CrawlStrategy& strategy,
                      const IdfDictionary& idf = IdfDictionary::bundled(),
                      const CrawlOptions& options = {});

/// `step,action,url,priority,snapshot_time,topical,temporal,combined`
void write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace);

}  // namespace eventcrawl
