#include "eventcrawl/crawler.h"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "eventcrawl/csv.h"
#include "eventcrawl/html.h"
#include "eventcrawl/url.h"

namespace eventcrawl {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t distance_to(Timestamp t, const TemporalScope& scope) {
  if (t < scope.event_start) return (scope.event_start - t).count();
  if (t > scope.event_end) return (t - scope.event_end).count();
  return 0;
}

}  // namespace

UnknownStrategyError::UnknownStrategyError(std::string_view name)
    : std::invalid_argument("unknown strategy '" + std::string(name) +
                            "' (valid: unfocused, c-f, t-f, ct-f)") {}

CrawlStrategy CrawlStrategy::parse(std::string_view name) {
  std::string lowered(trim(name));
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& strategy : kAllStrategies) {
    if (strategy.name() == lowered) return strategy;
  }
  throw UnknownStrategyError(name);
}

std::string_view CrawlStrategy::name() const {
  switch (kind) {
    case StrategyKind::unfocused:
      return "unfocused";
    case StrategyKind::content_focused:
      return "c-f";
    case StrategyKind::time_focused:
      return "t-f";
    case StrategyKind::combined:
      return "ct-f";
  }
  return "ct-f";
}

double CrawlStrategy::priority(const RelevanceScore& score) const {
  switch (kind) {
    case StrategyKind::unfocused:
      return 0.0;
    case StrategyKind::content_focused:
      return score.topical;
    case StrategyKind::time_focused:
      return score.temporal;
    case StrategyKind::combined:
      return score.combined;
  }
  return score.combined;
}

const SnapshotRecord& select_snapshot(std::span<const SnapshotRecord> snapshots,
                                      const TemporalScope& scope) {
  if (snapshots.empty()) throw std::invalid_argument("select_snapshot needs at least one snapshot");
  const SnapshotRecord* best = &snapshots.front();
  std::int64_t best_distance = distance_to(best->capture_time, scope);
  for (const auto& snapshot : snapshots.subspan(1)) {
    const auto d = distance_to(snapshot.capture_time, scope);
    // Strict comparison keeps the earlier capture on ties.
    if (d < best_distance ||
        (d == best_distance && snapshot.capture_time < best->capture_time)) {
      best = &snapshot;
      best_distance = d;
    }
  }
  return *best;
}

std::vector<std::string> extract_outlinks(std::string_view html, std::string_view base_url) {
  std::optional<std::string> base_href;
  std::vector<std::string> hrefs;
  scan_html(html, [&](const HtmlTag& tag) {
    if (tag.closing) return;
    if (tag.name == "a" || tag.name == "area") {
      if (auto href = tag.attribute("href")) hrefs.push_back(std::move(*href));
    } else if (tag.name == "base" && !base_href) {
      if (auto href = tag.attribute("href")) base_href = std::move(*href);
    }
  });

  std::string base(base_url);
  if (base_href) {
    if (auto resolved = try_canonicalize_url(trim(*base_href), base_url)) base = *resolved;
  }

  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& raw : hrefs) {
    const auto href = trim(raw);
    // Empty and fragment-only references point back into the same page.
    if (href.empty() || href.front() == '#') continue;
    auto canonical = try_canonicalize_url(href, base);
    if (!canonical) continue;
    if (seen.insert(*canonical).second) out.push_back(std::move(*canonical));
  }
  return out;
}

std::vector<std::string> extract_outlinks(const ArchivedDocument& document) {
  const std::string& base = document.snapshot.canonical_url.empty()
                                ? document.target_uri
                                : document.snapshot.canonical_url;
  return extract_outlinks(document.body, base);
}

ReferenceResolver archive_reference_resolver(const ArchiveIndex& index,
                                             const TemporalScope& scope) {
  return [&index, scope](const ReferenceDocument& reference) -> std::string {
    if (reference.kind != ReferenceKind::archive_url) return resolve_reference_locally(reference);
    const auto canonical = try_canonicalize_url(reference.value);
    if (!canonical) throw ReferenceResolutionError("invalid reference URL: " + reference.value);
    const auto snapshots = index.snapshots_of(*canonical);
    if (snapshots.empty()) {
      throw ReferenceResolutionError("reference URL not in archive: " + reference.value);
    }
    try {
      return extract_text(fetch_document(select_snapshot(snapshots, scope)));
    } catch (const std::exception& e) {
      throw ReferenceResolutionError("reference URL unreadable: " + std::string(e.what()));
    }
  };
}

DocumentScorer::DocumentScorer(TermVector reference, Language language, const IdfDictionary& idf,
                               TemporalScope scope, double alpha, CrawlOptions options)
    : reference_(std::move(reference)),
      analyzer_(language),
      idf_(&idf),
      scope_(scope),
      alpha_(alpha),
      options_(options) {}

DocumentScorer DocumentScorer::for_spec(const CollectionSpecification& spec,
                                        const ArchiveIndex& index, const IdfDictionary& idf,
                                        const CrawlOptions& options) {
  TermVector reference =
      build_reference_vector(spec.topical, idf, options.boost,
                             archive_reference_resolver(index, spec.temporal), options.tf);
  return DocumentScorer(std::move(reference), parse_language(spec.topical.language), idf,
                        spec.temporal, spec.alpha, options);
}

double DocumentScorer::topical(std::string_view text) const {
  const auto tokens = analyzer_.analyze(text);
  return topical_relevance(vectorize(tokens, *idf_, options_.tf), reference_);
}

ScoredDocument DocumentScorer::score(const ArchivedDocument& document) const {
  const double top = topical(extract_text(document));
  const DocumentTime time = extract_document_time(document);
  const double temp = temporal_relevance(time.time_point, scope_, options_.temporal);
  return {RelevanceScore::make(top, temp, alpha_), time};
}

std::string_view trace_action_name(TraceAction action) {
  switch (action) {
    case TraceAction::fetch:
      return "fetch";
    case TraceAction::miss:
      return "miss";
    case TraceAction::skip:
      return "skip";
  }
  return "fetch";
}

CrawlResult run_crawl(const CollectionSpecification& spec, const ArchiveIndex& index,
                      const CrawlStrategy& strategy, const DocumentScorer& scorer,
                      const TraceObserver& observer) {
  CrawlResult result;
  Frontier frontier;
  for (const auto& seed : spec.seeds) {
    if (auto canonical = try_canonicalize_url(seed)) frontier.push(*canonical, kSeedPriority);
  }

  std::unordered_set<std::string> done;  // collected or missing
  const auto record = [&](TraceEntry entry) {
    entry.step = result.trace.size() + 1;
    if (observer) observer(entry);
    result.trace.push_back(std::move(entry));
  };

  while (result.collection.size() < spec.target_size) {
    auto next = frontier.pop();
    if (!next) break;
    const auto snapshots = index.snapshots_of(next->url);
    if (snapshots.empty()) {
      done.insert(next->url);
      result.missing.push_back(next->url);
      record({0, TraceAction::miss, next->url, next->priority, std::nullopt, std::nullopt});
      continue;
    }

    const SnapshotRecord& snapshot = select_snapshot(snapshots, spec.temporal);
    ArchivedDocument document;
    try {
      document = fetch_document(snapshot);
    } catch (const std::exception&) {
      done.insert(next->url);
      result.missing.push_back(next->url);
      record({0, TraceAction::skip, next->url, next->priority, snapshot.capture_time,
              std::nullopt});
      continue;
    }

    const ScoredDocument scored = scorer.score(document);
    CollectedDocument collected{snapshot, scored.score, scored.document_time,
                                extract_outlinks(document), next->priority};
    done.insert(next->url);
    record({0, TraceAction::fetch, next->url, next->priority, snapshot.capture_time,
            scored.score});

    const double priority = strategy.priority(scored.score);
    for (const auto& link : collected.outlinks) {
      if (!done.contains(link)) frontier.push(link, priority);
    }
    result.collection.push_back(std::move(collected));
  }
  result.queued_at_end = frontier.size();
  return result;
}

CrawlResult run_crawl(const CollectionSpecification& spec, const ArchiveIndex& index,
                      const CrawlStrategy& strategy, const IdfDictionary& idf,
                      const CrawlOptions& options) {
  const DocumentScorer scorer = DocumentScorer::for_spec(spec, index, idf, options);
  return run_crawl(spec, index, strategy, scorer);
}

void write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace) {
  write_csv_row(out, {"step", "action", "url", "priority", "snapshot_time", "topical", "temporal",
                      "combined"});
  for (const auto& entry : trace) {
    const std::string step = std::to_string(entry.step);
    const std::string priority =
        entry.priority == kSeedPriority ? std::string("seed") : format_real(entry.priority);
    const std::string time =
        entry.snapshot_time ? format_archival_timestamp(*entry.snapshot_time) : std::string();
    std::string topical, temporal, combined;
    if (entry.score) {
      topical = format_real(entry.score->topical);
      temporal = format_real(entry.score->temporal);
      combined = format_real(entry.score->combined);
    }
    write_csv_row(out, {step, trace_action_name(entry.action), entry.url, priority, time, topical,
                        temporal, combined});
  }
}

}  // namespace eventcrawl
