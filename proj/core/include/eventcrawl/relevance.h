#pragma once

#include <string_view>

#include "eventcrawl/collection_spec.h"
#include "eventcrawl/term_vector.h"
#include "eventcrawl/timestamp.h"

namespace eventcrawl {

struct ArchivedDocument;

struct TemporalOptions {
  /// Treat lead/cool-down times as half-lives: gamma' = gamma / ln 2, so the
  /// relevance is 0.5 (instead of 1/e) at a distance of one lead/cool-down time.
  bool half_life_gamma = false;
};

/// 1 inside [event_start, event_end]; exp(-dt / gamma) outside, with gamma
/// the lead time before the event and the cool-down time after it. A zero
/// gamma on the relevant side yields 0.
double temporal_relevance(Timestamp t, const TemporalScope& scope,
                          const TemporalOptions& options = {});

/// Cosine similarity in [0, 1]; 0 when either vector is zero.
double topical_relevance(const TermVector& document, const TermVector& reference);

/// alpha * topical + (1 - alpha) * temporal.
double combined_relevance(double topical, double temporal, double alpha);

struct RelevanceScore {
  double topical = 0.0;
  double temporal = 0.0;
  double combined = 0.0;

  static RelevanceScore make(double topical, double temporal, double alpha) {
    return {topical, temporal, combined_relevance(topical, temporal, alpha)};
  }

  friend bool operator==(const RelevanceScore&, const RelevanceScore&) = default;
};

enum class TimeSource { publication_metadata, content_pattern, url_pattern, crawl_time_fallback };

std::string_view time_source_name(TimeSource source);

struct DocumentTime {
  Timestamp time_point;
  TimeSource source = TimeSource::crawl_time_fallback;

  friend bool operator==(const DocumentTime&, const DocumentTime&) = default;
};

/// Publication time of a page. Tries, in order: meta elements
/// (article:published_time, date, dcterms.date, DC.date.issued), a <time>
/// element's datetime attribute, a /YYYY/MM/DD/ or YYYY-MM-DD pattern in the
/// URL path, and finally the capture time. Unparseable candidates are skipped.
DocumentTime extract_document_time(const ArchivedDocument& document);

/// The HTML/URL part of extract_document_time, for callers that already
/// hold the page text.
DocumentTime extract_document_time(std::string_view html, std::string_view url,
                                   Timestamp capture_time);

}  // namespace eventcrawl
