#include "eventcrawl/relevance.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "eventcrawl/archive_index.h"
#include "eventcrawl/html.h"
#include "eventcrawl/url.h"

namespace eventcrawl {
namespace {

constexpr std::array<std::string_view, 4> kMetaFields = {"article:published_time", "date",
                                                         "dcterms.date", "dc.date.issued"};

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::optional<Timestamp> parse_date_value(std::string_view value) {
  const auto parsed = parse_iso8601(trim(value));
  if (!parsed) return std::nullopt;
  return parsed->time;
}

std::optional<Timestamp> date_in_url(std::string_view url) {
  static const std::regex slashed(R"((?:^|/)(\d{4})/(\d{2})/(\d{2})(?:/|$))");
  static const std::regex dashed(R"((?:^|[^0-9])(\d{4})-(\d{2})-(\d{2})(?:[^0-9]|$))");
  const std::string path(url_path(url));
  for (const auto* pattern : {&slashed, &dashed}) {
    for (auto it = std::sregex_iterator(path.begin(), path.end(), *pattern);
         it != std::sregex_iterator(); ++it) {
      const auto& m = *it;
      const auto t = make_timestamp(std::stoi(m[1].str()), std::stoul(m[2].str()),
                                    std::stoul(m[3].str()));
      if (t) return t;
    }
  }
  return std::nullopt;
}

}  // namespace

double temporal_relevance(Timestamp t, const TemporalScope& scope, const TemporalOptions& options) {
  if (t >= scope.event_start && t <= scope.event_end) return 1.0;
  const bool before = t < scope.event_start;
  const auto gamma_seconds = (before ? scope.lead_time : scope.cool_down_time).count();
  if (gamma_seconds <= 0) return 0.0;
  const auto delta = before ? (scope.event_start - t).count() : (t - scope.event_end).count();
  double gamma = static_cast<double>(gamma_seconds);
  if (options.half_life_gamma) gamma /= std::numbers::ln2;
  return std::exp(-static_cast<double>(delta) / gamma);
}

double topical_relevance(const TermVector& document, const TermVector& reference) {
  if (document.norm() == 0.0 || reference.norm() == 0.0) return 0.0;
  const double cosine = document.dot(reference) / (document.norm() * reference.norm());
  return std::clamp(cosine, 0.0, 1.0);
}

double combined_relevance(double topical, double temporal, double alpha) {
  return alpha * topical + (1.0 - alpha) * temporal;
}

std::string_view time_source_name(TimeSource source) {
  switch (source) {
    case TimeSource::publication_metadata:
      return "publication_metadata";
    case TimeSource::content_pattern:
      return "content_pattern";
    case TimeSource::url_pattern:
      return "url_pattern";
    case TimeSource::crawl_time_fallback:
      return "crawl_time_fallback";
  }
  return "crawl_time_fallback";
}

DocumentTime extract_document_time(std::string_view html, std::string_view url,
                                   Timestamp capture_time) {
  std::array<std::optional<Timestamp>, kMetaFields.size()> meta;
  std::optional<Timestamp> time_element;
  scan_html(html, [&](const HtmlTag& tag) {
    if (tag.closing) return;
    if (tag.name == "meta") {
      auto key = tag.attribute("property");
      if (!key) key = tag.attribute("name");
      if (!key) key = tag.attribute("itemprop");
      if (!key) return;
      const std::string field = lowercase(trim(*key));
      for (std::size_t i = 0; i < kMetaFields.size(); ++i) {
        if (field != kMetaFields[i] || meta[i]) continue;
        if (const auto content = tag.attribute("content")) meta[i] = parse_date_value(*content);
      }
    } else if (tag.name == "time" && !time_element) {
      if (const auto value = tag.attribute("datetime")) time_element = parse_date_value(*value);
    }
  });

  for (const auto& candidate : meta) {
    if (candidate) return {*candidate, TimeSource::publication_metadata};
  }
  if (time_element) return {*time_element, TimeSource::content_pattern};
  if (const auto from_url = date_in_url(url)) return {*from_url, TimeSource::url_pattern};
  return {capture_time, TimeSource::crawl_time_fallback};
}

DocumentTime extract_document_time(const ArchivedDocument& document) {
  const std::string_view url = document.snapshot.canonical_url.empty()
                                   ? std::string_view(document.target_uri)
                                   : std::string_view(document.snapshot.canonical_url);
  return extract_document_time(document.body, url, document.snapshot.capture_time);
}

}  // namespace eventcrawl
