#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "eventcrawl/collection_spec.h"
#include "eventcrawl/term_vector.h"
#include "eventcrawl/timestamp.h"

namespace eventcrawl {

/// 2011-03-11 .. 2011-03-25 with two weeks of lead time and a month of cool-down.
TemporalScope default_event_scope();

/// Parameters of a generated mini-archive with a planted event cluster.
struct SyntheticArchiveConfig {
  std::size_t page_count = 1000;
  double relevant_fraction = 0.1;
  /// Probability that a link on a relevant page points to another relevant
  /// page. Background pages are split into `background_topics` clusters that
  /// follow the same locality among themselves.
  double topical_locality = 0.8;
  std::size_t background_topics = 10;
  TemporalScope event_scope = default_event_scope();
  /// Share of clustered pages published inside the event interval; the rest
  /// fall into the lead and cool-down periods.
  double event_share = 0.8;
  /// Captures happen up to this long after publication.
  Seconds capture_time_spread{std::chrono::days{30}};

  std::size_t relevant_vocabulary = 300;
  std::size_t background_vocabulary = 3000;
  std::size_t common_vocabulary = 100;
  /// Share of a page's words drawn from its topic pool; the rest are common words.
  double topic_word_share = 0.6;
  std::size_t words_per_page = 120;
  std::size_t links_per_page = 3;
  /// Share of background pages that are directory-style hubs linking to
  /// `hub_links_per_page` pages chosen uniformly across the archive.
  double hub_fraction = 0.1;
  std::size_t hub_links_per_page = 40;

  /// Share of pages left out of the WARC files while still being linked to.
  double omit_fraction = 0.0;
  /// Share of pages forming a second cluster that uses the relevant
  /// vocabulary but carries its own marker word instead of the target's.
  double confusable_fraction = 0.0;
  /// Probability that a topical link crosses between the target and the
  /// confusable cluster.
  double cluster_crossing = 0.2;
  /// Share of words on clustered pages that are the cluster marker.
  double marker_share = 0.1;

  /// Share of pages captured two or three times.
  double multi_capture_fraction = 0.1;
  std::size_t seed_count = 5;
  std::size_t warc_files = 2;
  bool gzip = true;
  /// Pages sampled for the corpus IDF dictionary.
  std::size_t idf_sample_size = 1000;
  std::size_t crawl_budget = 1000;
  std::uint64_t random_seed = 1;

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

enum class PageLabel { relevant, background, confusable };

std::string_view page_label_name(PageLabel label);

struct SyntheticPage {
  std::string url;  // canonical
  PageLabel label = PageLabel::background;
  bool omitted = false;
  Timestamp published;
  std::vector<Timestamp> captures;  // ascending; empty when omitted
  std::vector<std::string> links;   // canonical targets, page order
  std::string html;
};

struct SyntheticArchive {
  std::vector<SyntheticPage> pages;
  std::vector<std::filesystem::path> warc_paths;
  std::filesystem::path ground_truth_path;  // url,label,capture_time
  std::filesystem::path spec_path;
  std::filesystem::path idf_path;
  CollectionSpecification spec;
  IdfDictionary idf;
  /// Marker word that separates the target cluster from the confusable one
  /// (empty without a confusable cluster).
  std::string target_keyword;

  std::vector<std::string> omitted_urls() const;
};

/// Writes a deterministic archive under `out_dir`: WARC files in `warcs/`,
/// `groundtruth.csv` (capture_time empty for omitted pages), `spec.json`
/// and `idf.tsv`. Identical configs produce byte-identical files.
SyntheticArchive generate_archive(const SyntheticArchiveConfig& config,
                                  const std::filesystem::path& out_dir);

}  // namespace eventcrawl
