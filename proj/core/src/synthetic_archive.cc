#include "eventcrawl/synthetic_archive.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <fmt/format.h>

#include "eventcrawl/analyzer.h"
#include "eventcrawl/csv.h"
#include "eventcrawl/html.h"
#include "eventcrawl/random.h"
#include "eventcrawl/warc.h"

namespace eventcrawl {
namespace {

constexpr std::uint64_t kVocabularySeed = 0x7e57c0de;
constexpr Seconds kBackgroundWindow{std::chrono::days{730}};

enum class DateStyle { meta, time_element, url_path, none };

struct Vocabulary {
  std::vector<std::string> common;
  std::vector<std::string> relevant;
  std::vector<std::string> background;
  std::string target_marker;
  std::string confusable_marker;
};

// Pronounceable pseudo-words whose English stems are pairwise distinct, so
// the pools never share a term after analysis.
Vocabulary make_vocabulary(const SyntheticArchiveConfig& config) {
  static constexpr std::string_view consonants = "bdfgklmnprstvz";
  static constexpr std::string_view vowels = "aeiou";
  const Analyzer analyzer(Language::english);
  Rng rng(kVocabularySeed);
  std::unordered_set<std::string> stems;
  const auto next_word = [&] {
    for (;;) {
      std::string word;
      const auto syllables = 2 + rng.below(2);
      for (std::uint64_t s = 0; s < syllables; ++s) {
        word.push_back(consonants[rng.below(consonants.size())]);
        word.push_back(vowels[rng.below(vowels.size())]);
      }
      word.push_back(consonants[rng.below(consonants.size())]);
      const auto analyzed = analyzer.analyze(word);
      if (analyzed.size() == 1 && stems.insert(analyzed.front()).second) return word;
    }
  };
  const auto fill = [&](std::vector<std::string>& pool, std::size_t n) {
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.push_back(next_word());
  };
  Vocabulary vocabulary;
  vocabulary.target_marker = next_word();
  vocabulary.confusable_marker = next_word();
  fill(vocabulary.common, config.common_vocabulary);
  fill(vocabulary.relevant, config.relevant_vocabulary);
  fill(vocabulary.background, config.background_vocabulary);
  return vocabulary;
}

// Skewed toward the head of the pool, giving a rough Zipf-like profile.
const std::string& draw(Rng& rng, const std::vector<std::string>& pool) {
  const double u = rng.uniform();
  const auto i = static_cast<std::size_t>(static_cast<double>(pool.size()) * u * u);
  return pool[std::min(i, pool.size() - 1)];
}

Timestamp uniform_time(Rng& rng, Timestamp lo, Timestamp hi) {
  return lo + Seconds{rng.between(0, (hi - lo).count())};
}

std::string page_text(Rng& rng, const SyntheticArchiveConfig& config,
                      const std::vector<std::string>& topic, const std::vector<std::string>& common,
                      const std::string* marker) {
  std::string text;
  for (std::size_t w = 0; w < config.words_per_page; ++w) {
    if (w > 0) text.push_back(w % 40 == 0 ? '\n' : ' ');
    if (marker && rng.chance(config.marker_share)) {
      text += *marker;
    } else if (rng.chance(config.topic_word_share)) {
      text += draw(rng, topic);
    } else {
      text += draw(rng, common);
    }
  }
  return text;
}

std::string host_of(std::string_view url) {
  const auto start = url.find("://") + 3;
  return std::string(url.substr(0, url.find('/', start)));
}

std::string render_html(const SyntheticPage& page, std::string_view text, DateStyle style) {
  std::string html = "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">";
  const auto first_break = text.find(' ', text.find(' ') + 1);
  html += fmt::format("<title>{}</title>", text.substr(0, first_break));
  if (style == DateStyle::meta) {
    html += fmt::format("<meta property=\"article:published_time\" content=\"{}\">",
                        format_iso8601(page.published));
  }
  html += "</head>\n<body><article>";
  if (style == DateStyle::time_element) {
    const auto iso = format_iso8601(page.published);
    html += fmt::format("<time datetime=\"{}\">{}</time>", iso, iso.substr(0, 10));
  }
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    html += "\n<p>";
    html += text.substr(start, end - start);
    html += "</p>";
    start = end + 1;
  }
  html += "</article>\n<nav><a href=\"#top\"></a><ul>";
  const std::string own_host = host_of(page.url);
  for (const auto& link : page.links) {
    const std::string href =
        host_of(link) == own_host ? link.substr(own_host.size()) : link;
    html += fmt::format("\n<li><a href=\"{}\">link</a></li>", href);
  }
  html += "</ul></nav></body></html>\n";
  return html;
}

std::string record_id(Rng& rng) {
  const auto a = rng.next();
  const auto b = rng.next();
  return fmt::format("<urn:uuid:{:08x}-{:04x}-4{:03x}-{:04x}-{:012x}>", a >> 32,
                     (a >> 16) & 0xffff, a & 0xfff, ((b >> 48) & 0x3fff) | 0x8000,
                     b & 0xffffffffffffULL);
}

std::string response_block(int status, std::string_view reason, std::string_view media_type,
                           std::string_view body, std::string_view extra_header = {}) {
  std::string block = fmt::format("HTTP/1.1 {} {}\r\nContent-Type: {}\r\nContent-Length: {}\r\n",
                                  status, reason, media_type, body.size());
  if (!extra_header.empty()) block += fmt::format("{}\r\n", extra_header);
  block += "\r\n";
  block += body;
  return block;
}

void write_response(WarcWriter& writer, Rng& ids, std::string_view url, Timestamp when,
                    std::string_view block) {
  const HeaderList headers = {{"WARC-Type", "response"},
                              {"WARC-Record-ID", record_id(ids)},
                              {"WARC-Date", format_iso8601(when)},
                              {"WARC-Target-URI", std::string(url)},
                              {"Content-Type", "application/http; msgtype=response"}};
  writer.write("WARC/1.1", headers, block);
}

}  // namespace

TemporalScope default_event_scope() {
  return {*make_timestamp(2011, 3, 11), *make_timestamp(2011, 3, 25, 23, 59, 59),
          std::chrono::days{14}, std::chrono::days{30}};
}

std::string_view page_label_name(PageLabel label) {
  switch (label) {
    case PageLabel::relevant:
      return "relevant";
    case PageLabel::background:
      return "background";
    case PageLabel::confusable:
      return "confusable";
  }
  return "background";
}

void SyntheticArchiveConfig::validate() const {
  const auto fraction = [](double v, bool open_upper) {
    return v >= 0.0 && (open_upper ? v < 1.0 : v <= 1.0);
  };
  if (page_count < 10) throw std::invalid_argument("page_count must be at least 10");
  if (!(relevant_fraction > 0.0 && relevant_fraction < 1.0)) {
    throw std::invalid_argument("relevant_fraction must lie in (0, 1)");
  }
  if (!fraction(topical_locality, false) || !fraction(omit_fraction, true) ||
      !fraction(confusable_fraction, true) || !fraction(cluster_crossing, false) ||
      !fraction(marker_share, false) || !fraction(multi_capture_fraction, false) ||
      !fraction(topic_word_share, false) || !fraction(hub_fraction, false) ||
      !fraction(event_share, false)) {
    throw std::invalid_argument("probabilities and fractions must lie in [0, 1]");
  }
  const auto relevant = std::llround(static_cast<double>(page_count) * relevant_fraction);
  const auto confusable = std::llround(static_cast<double>(page_count) * confusable_fraction);
  if (relevant < 1) throw std::invalid_argument("relevant_fraction leaves no relevant page");
  if (static_cast<std::size_t>(relevant + confusable) >= page_count) {
    throw std::invalid_argument("relevant and confusable pages leave no background page");
  }
  if (seed_count < 1 || seed_count > static_cast<std::size_t>(relevant)) {
    throw std::invalid_argument("seed_count must lie in [1, relevant page count]");
  }
  if (relevant_vocabulary < 1 || background_vocabulary < 1 || common_vocabulary < 1) {
    throw std::invalid_argument("vocabulary sizes must be positive");
  }
  if (background_topics < 1 || background_vocabulary < background_topics) {
    throw std::invalid_argument("background_topics must lie in [1, background_vocabulary]");
  }
  if (words_per_page < 2) throw std::invalid_argument("words_per_page must be at least 2");
  if (warc_files < 1) throw std::invalid_argument("warc_files must be positive");
  if (crawl_budget < 1) throw std::invalid_argument("crawl_budget must be positive");
  if (capture_time_spread < Seconds{0}) {
    throw std::invalid_argument("capture_time_spread must be non-negative");
  }
  if (event_scope.event_start > event_scope.event_end || event_scope.lead_time < Seconds{0} ||
      event_scope.cool_down_time < Seconds{0}) {
    throw std::invalid_argument("event_scope is not a valid temporal scope");
  }
}

std::vector<std::string> SyntheticArchive::omitted_urls() const {
  std::vector<std::string> out;
  for (const auto& page : pages) {
    if (page.omitted) out.push_back(page.url);
  }
  return out;
}

SyntheticArchive generate_archive(const SyntheticArchiveConfig& config,
                                  const std::filesystem::path& out_dir) {
  config.validate();
  const Vocabulary vocabulary = make_vocabulary(config);
  Rng rng(config.random_seed);
  Rng ids(config.random_seed ^ 0x9e3779b97f4a7c15ULL);

  const std::size_t n = config.page_count;
  const auto relevant_count =
      static_cast<std::size_t>(std::llround(static_cast<double>(n) * config.relevant_fraction));
  const auto confusable_count =
      static_cast<std::size_t>(std::llround(static_cast<double>(n) * config.confusable_fraction));
  const bool clustered = confusable_count > 0;

  // Labels over a shuffled id order so clusters are spread across hosts.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<PageLabel> labels(n, PageLabel::background);
  std::vector<std::size_t> relevant_ids(order.begin(), order.begin() + relevant_count);
  std::vector<std::size_t> confusable_ids(order.begin() + relevant_count,
                                          order.begin() + relevant_count + confusable_count);
  for (auto id : relevant_ids) labels[id] = PageLabel::relevant;
  for (auto id : confusable_ids) labels[id] = PageLabel::confusable;
  const std::size_t topic_count = std::max<std::size_t>(1, config.background_topics);
  std::vector<std::size_t> topic_of(n, 0);
  std::vector<std::vector<std::size_t>> topic_ids(topic_count);
  for (std::size_t i = relevant_count + confusable_count; i < n; ++i) {
    const std::size_t topic = (i - relevant_count - confusable_count) % topic_count;
    topic_of[order[i]] = topic;
    topic_ids[topic].push_back(order[i]);
  }
  std::vector<std::vector<std::string>> topic_words(topic_count);
  for (std::size_t w = 0; w < vocabulary.background.size(); ++w) {
    topic_words[w % topic_count].push_back(vocabulary.background[w]);
  }

  const auto& scope = config.event_scope;
  const std::size_t hosts = std::max<std::size_t>(1, n / 50);
  SyntheticArchive archive;
  archive.pages.resize(n);
  std::vector<DateStyle> styles(n);
  for (std::size_t id = 0; id < n; ++id) {
    auto& page = archive.pages[id];
    page.label = labels[id];
    if (page.label == PageLabel::background) {
      page.published = uniform_time(rng, scope.event_start - kBackgroundWindow,
                                    scope.event_end + kBackgroundWindow);
    } else if (rng.chance(config.event_share)) {
      page.published = uniform_time(rng, scope.event_start, scope.event_end);
    } else {
      page.published = uniform_time(rng, scope.event_start - scope.lead_time,
                                    scope.event_end + scope.cool_down_time);
    }
    const double u = rng.uniform();
    styles[id] = u < 0.7    ? DateStyle::meta
                 : u < 0.85 ? DateStyle::time_element
                 : u < 0.95 ? DateStyle::url_path
                            : DateStyle::none;
    const std::string host = fmt::format("http://site{:03}.example", id % hosts);
    if (styles[id] == DateStyle::url_path) {
      const std::string iso = format_iso8601(page.published);
      page.url = fmt::format("{}/archive/{}/{}/{}/page{:05}.html", host, iso.substr(0, 4),
                             iso.substr(5, 2), iso.substr(8, 2), id);
    } else {
      page.url = fmt::format("{}/articles/page{:05}.html", host, id);
    }
  }

  // Seeds are target-cluster pages; omitted pages are never seeds.
  std::vector<std::size_t> seeds(relevant_ids.begin(), relevant_ids.begin() + config.seed_count);
  std::vector<std::size_t> omit_candidates;
  {
    std::unordered_set<std::size_t> seed_set(seeds.begin(), seeds.end());
    for (std::size_t id = 0; id < n; ++id) {
      if (!seed_set.contains(id)) omit_candidates.push_back(id);
    }
  }
  rng.shuffle(omit_candidates);
  const auto omit_count = std::min(
      omit_candidates.size(),
      static_cast<std::size_t>(std::llround(static_cast<double>(n) * config.omit_fraction)));
  for (std::size_t i = 0; i < omit_count; ++i) archive.pages[omit_candidates[i]].omitted = true;

  for (auto& page : archive.pages) {
    if (page.omitted) continue;
    std::size_t captures = 1;
    if (rng.chance(config.multi_capture_fraction)) captures = 2 + rng.below(2);
    for (std::size_t c = 0; c < captures; ++c) {
      page.captures.push_back(page.published +
                              Seconds{rng.between(0, config.capture_time_spread.count())});
    }
    std::sort(page.captures.begin(), page.captures.end());
    for (std::size_t c = 1; c < page.captures.size(); ++c) {
      if (page.captures[c] <= page.captures[c - 1]) page.captures[c] = page.captures[c - 1] + Seconds{1};
    }
  }

  const auto pick = [&](const std::vector<std::size_t>& pool) { return pool[rng.below(pool.size())]; };
  std::vector<bool> hub(n, false);
  for (std::size_t id = 0; id < n; ++id) {
    hub[id] = labels[id] == PageLabel::background && rng.chance(config.hub_fraction);
  }
  for (std::size_t id = 0; id < n; ++id) {
    auto& page = archive.pages[id];
    const std::size_t link_count =
        std::min(hub[id] ? config.hub_links_per_page : config.links_per_page, n - 1);
    std::unordered_set<std::size_t> chosen;
    for (std::size_t attempt = 0; chosen.size() < link_count; ++attempt) {
      std::size_t target = 0;
      const bool topical =
          !hub[id] && attempt < 50 * link_count && rng.chance(config.topical_locality);
      if (topical && page.label == PageLabel::background) {
        target = pick(topic_ids[topic_of[id]]);
      } else if (topical && clustered) {
        const bool same = !rng.chance(config.cluster_crossing);
        const bool in_target = (page.label == PageLabel::relevant) == same;
        target = pick(in_target ? relevant_ids : confusable_ids);
      } else if (topical) {
        target = pick(relevant_ids);
      } else {
        target = rng.below(n);
      }
      if (target != id && chosen.insert(target).second) {
        page.links.push_back(archive.pages[target].url);
      }
    }
  }

  for (std::size_t id = 0; id < n; ++id) {
    auto& page = archive.pages[id];
    const std::string* marker = nullptr;
    if (clustered && page.label == PageLabel::relevant) marker = &vocabulary.target_marker;
    if (clustered && page.label == PageLabel::confusable) marker = &vocabulary.confusable_marker;
    const auto& topic =
        page.label == PageLabel::background ? topic_words[topic_of[id]] : vocabulary.relevant;
    const std::string text = page_text(rng, config, topic, vocabulary.common, marker);
    page.html = render_html(page, text, styles[id]);
  }

  // WARC files: a warcinfo record, then every capture of the file's pages and
  // an occasional redirect that the index must ignore.
  const auto warc_dir = out_dir / "warcs";
  std::filesystem::create_directories(warc_dir);
  for (std::size_t f = 0; f < config.warc_files; ++f) {
    const auto path =
        warc_dir / fmt::format("archive-{:05}.warc{}", f, config.gzip ? ".gz" : "");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    WarcWriter writer(out, config.gzip);
    const std::string info = fmt::format(
        "software: eventcrawl synthetic generator\r\nformat: WARC File Format 1.1\r\n"
        "random-seed: {}\r\n",
        config.random_seed);
    writer.write("WARC/1.1",
                 {{"WARC-Type", "warcinfo"},
                  {"WARC-Record-ID", record_id(ids)},
                  {"WARC-Date", format_iso8601(scope.event_start)},
                  {"WARC-Filename", path.filename().string()},
                  {"Content-Type", "application/warc-fields"}},
                 info);
    for (std::size_t id = f; id < n; id += config.warc_files) {
      const auto& page = archive.pages[id];
      for (const auto capture : page.captures) {
        write_response(writer, ids, page.url, capture,
                       response_block(200, "OK", "text/html; charset=utf-8", page.html));
      }
      if (!page.omitted && id % 25 == 0 && !page.captures.empty()) {
        const std::string from = host_of(page.url) + fmt::format("/go/{}", id);
        write_response(writer, ids, from, page.captures.front(),
                       response_block(301, "Moved Permanently", "text/html", "",
                                      "Location: " + page.url));
      }
    }
    out.close();
    if (!out) throw std::runtime_error("write failed: " + path.string());
    archive.warc_paths.push_back(path);
  }

  archive.ground_truth_path = out_dir / "groundtruth.csv";
  {
    std::ofstream out(archive.ground_truth_path, std::ios::binary | std::ios::trunc);
    write_csv_row(out, {"url", "label", "capture_time"});
    for (const auto& page : archive.pages) {
      const std::string capture =
          page.captures.empty() ? std::string() : format_archival_timestamp(page.captures.front());
      write_csv_row(out, {page.url, page_label_name(page.label), capture});
    }
    if (!out) throw std::runtime_error("cannot write " + archive.ground_truth_path.string());
  }

  // Reference text follows the relevant word distribution; with a
  // confusable cluster it names both markers equally often.
  std::string reference;
  for (std::size_t w = 0; w < 4 * config.words_per_page; ++w) {
    if (w > 0) reference.push_back(' ');
    if (clustered && w % 20 == 0) {
      reference += (w / 20) % 2 == 0 ? vocabulary.target_marker : vocabulary.confusable_marker;
    } else {
      reference += draw(rng, vocabulary.relevant);
    }
  }
  if (clustered) archive.target_keyword = vocabulary.target_marker;

  auto& spec = archive.spec;
  spec.name = fmt::format("synthetic-{}", config.random_seed);
  spec.topical.reference_documents = {{ReferenceKind::inline_text, reference}};
  spec.topical.language = "en";
  spec.temporal = scope;
  for (auto id : seeds) spec.seeds.push_back(archive.pages[id].url);
  spec.target_size = config.crawl_budget;
  archive.spec_path = out_dir / "spec.json";
  {
    std::ofstream out(archive.spec_path, std::ios::binary | std::ios::trunc);
    out << serialize_spec(spec);
    if (!out) throw std::runtime_error("cannot write " + archive.spec_path.string());
  }

  std::vector<std::size_t> archived;
  for (std::size_t id = 0; id < n; ++id) {
    if (!archive.pages[id].omitted) archived.push_back(id);
  }
  rng.shuffle(archived);
  archived.resize(std::min(archived.size(), config.idf_sample_size));
  std::sort(archived.begin(), archived.end());
  std::vector<std::string> texts;
  texts.reserve(archived.size());
  for (auto id : archived) texts.push_back(extract_text(archive.pages[id].html));
  archive.idf = build_idf_dictionary_from_texts(texts, "en");
  archive.idf_path = out_dir / "idf.tsv";
  archive.idf.save(archive.idf_path);
  return archive;
}

}  // namespace eventcrawl
