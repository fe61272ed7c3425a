#include "eventcrawl/term_vector.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "eventcrawl/html.h"

namespace eventcrawl {

namespace embedded {
std::string_view default_idf();
}  // namespace embedded

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool is_html_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".html" || ext == ".htm" || ext == ".xhtml";
}

std::string document_text(const std::filesystem::path& path) {
  std::string content = read_file(path);
  return is_html_path(path) ? extract_text(content) : sanitize_utf8(content);
}

std::uint64_t parse_count(std::string_view text, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw IdfFormatError("idf line " + std::to_string(line_no) + ": bad count '" +
                         std::string(text) + "'");
  }
  return value;
}

}  // namespace

TermVector::TermVector(std::map<std::string, double> weights) {
  entries_.reserve(weights.size());
  double sum = 0.0;
  for (auto& [term, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("term weight must be finite and non-negative: " + term);
    }
    sum += w * w;
    entries_.emplace_back(term, w);
  }
  norm_ = std::sqrt(sum);
}

double TermVector::weight(std::string_view term) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                                   [](const Entry& e, std::string_view t) { return e.first < t; });
  return it != entries_.end() && it->first == term ? it->second : 0.0;
}

bool TermVector::contains(std::string_view term) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                                   [](const Entry& e, std::string_view t) { return e.first < t; });
  return it != entries_.end() && it->first == term;
}

double TermVector::dot(const TermVector& other) const {
  double sum = 0.0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    const int cmp = a->first.compare(b->first);
    if (cmp < 0) {
      ++a;
    } else if (cmp > 0) {
      ++b;
    } else {
      sum += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return sum;
}

TermVector TermVector::scaled(double factor) const {
  std::map<std::string, double> weights;
  for (const auto& [term, w] : entries_) weights.emplace(term, w * factor);
  return TermVector(std::move(weights));
}

std::vector<std::string> terms_of(std::span<const std::string> tokens) {
  std::vector<std::string> terms(tokens.begin(), tokens.end());
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    terms.push_back(tokens[i] + ' ' + tokens[i + 1]);
  }
  return terms;
}

IdfDictionary::IdfDictionary(std::uint64_t corpus_size,
                             std::unordered_map<std::string, std::uint64_t> frequencies,
                             Policy policy)
    : corpus_size_(corpus_size), frequencies_(std::move(frequencies)), policy_(policy) {
  if (corpus_size_ < 1) throw std::invalid_argument("corpus_size must be positive");
  std::uint64_t min_df = corpus_size_;
  for (const auto& [term, df] : frequencies_) {
    if (df < 1 || df > corpus_size_) {
      throw std::invalid_argument("doc_frequency of '" + term + "' must lie in [1, corpus_size]");
    }
    min_df = std::min(min_df, df);
  }
  const double n = static_cast<double>(corpus_size_);
  if (policy_ == Policy::log_corpus_size || frequencies_.empty()) {
    unseen_idf_ = std::log(n);
  } else {
    unseen_idf_ = std::log(n / static_cast<double>(min_df));
  }
}

double IdfDictionary::idf(std::string_view term) const {
  const auto it = frequencies_.find(std::string(term));
  if (it == frequencies_.end()) return unseen_idf_;
  return std::log(static_cast<double>(corpus_size_) / static_cast<double>(it->second));
}

std::uint64_t IdfDictionary::doc_frequency(std::string_view term) const {
  const auto it = frequencies_.find(std::string(term));
  return it == frequencies_.end() ? 0 : it->second;
}

IdfDictionary IdfDictionary::with_policy(Policy policy) const {
  return IdfDictionary(corpus_size_, frequencies_, policy);
}

IdfDictionary IdfDictionary::parse(std::string_view text, Policy policy) {
  std::optional<std::uint64_t> corpus_size;
  std::unordered_map<std::string, std::uint64_t> frequencies;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view key = "#corpus_size";
      if (line.starts_with(key)) {
        auto value = line.substr(key.size());
        while (!value.empty() && (value.front() == ' ' || value.front() == '\t')) {
          value.remove_prefix(1);
        }
        corpus_size = parse_count(value, line_no);
      }
      continue;
    }
    const auto tab = line.rfind('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw IdfFormatError("idf line " + std::to_string(line_no) + ": expected term<TAB>count");
    }
    frequencies[std::string(line.substr(0, tab))] = parse_count(line.substr(tab + 1), line_no);
  }
  if (!corpus_size) throw IdfFormatError("idf file lacks a #corpus_size header");
  try {
    return IdfDictionary(*corpus_size, std::move(frequencies), policy);
  } catch (const std::invalid_argument& e) {
    throw IdfFormatError(e.what());
  }
}

IdfDictionary IdfDictionary::load(const std::filesystem::path& path, Policy policy) {
  return parse(read_file(path), policy);
}

const IdfDictionary& IdfDictionary::bundled() {
  static const IdfDictionary dictionary = parse(embedded::default_idf());
  return dictionary;
}

std::string IdfDictionary::serialize() const {
  std::vector<std::pair<std::string_view, std::uint64_t>> rows(frequencies_.begin(),
                                                               frequencies_.end());
  std::sort(rows.begin(), rows.end());
  std::string out = "#corpus_size " + std::to_string(corpus_size_) + "\n";
  for (const auto& [term, df] : rows) {
    out.append(term);
    out.push_back('\t');
    out.append(std::to_string(df));
    out.push_back('\n');
  }
  return out;
}

void IdfDictionary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

TermVector vectorize(std::span<const std::string> tokens, const IdfDictionary& idf, TfScaling tf) {
  std::map<std::string, double> counts;
  for (auto& term : terms_of(tokens)) counts[std::move(term)] += 1.0;
  for (auto& [term, count] : counts) {
    const double scaled = tf == TfScaling::raw ? count : 1.0 + std::log(count);
    count = scaled * idf.idf(term);
  }
  return TermVector(std::move(counts));
}

void KeywordBoost::validate() const {
  if (!(no_overlap_weight > 0.0) || !(partial_overlap_weight >= no_overlap_weight) ||
      !(full_overlap_weight >= partial_overlap_weight) || !std::isfinite(full_overlap_weight)) {
    throw std::invalid_argument("keyword boost weights must satisfy full >= partial >= none > 0");
  }
}

TermVector apply_keyword_boost(const TermVector& vector,
                               const std::unordered_set<std::string>& keyword_tokens,
                               const KeywordBoost& boost) {
  boost.validate();
  std::map<std::string, double> weights;
  for (const auto& [term, w] : vector.entries()) {
    std::size_t parts = 0;
    std::size_t matched = 0;
    std::size_t start = 0;
    while (start <= term.size()) {
      auto end = term.find(' ', start);
      if (end == std::string::npos) end = term.size();
      ++parts;
      if (keyword_tokens.contains(term.substr(start, end - start))) ++matched;
      start = end + 1;
    }
    double factor = boost.no_overlap_weight;
    if (matched == parts) {
      factor = boost.full_overlap_weight;
    } else if (matched > 0) {
      factor = boost.partial_overlap_weight;
    }
    weights.emplace(term, w * factor);
  }
  return TermVector(std::move(weights));
}

std::unordered_set<std::string> keyword_tokens(std::span<const std::string> keywords,
                                               const Analyzer& analyzer) {
  std::unordered_set<std::string> tokens;
  for (const auto& keyword : keywords) {
    for (auto& token : analyzer.analyze(keyword)) tokens.insert(std::move(token));
  }
  return tokens;
}

std::string resolve_reference_locally(const ReferenceDocument& reference) {
  switch (reference.kind) {
    case ReferenceKind::inline_text:
      return reference.value;
    case ReferenceKind::file:
      try {
        return document_text(reference.value);
      } catch (const std::exception& e) {
        throw ReferenceResolutionError("reference file: " + std::string(e.what()));
      }
    case ReferenceKind::archive_url:
      break;
  }
  throw ReferenceResolutionError("archive-url reference needs an archive index: " +
                                 reference.value);
}

TermVector build_reference_vector(const TopicalScope& scope, const IdfDictionary& idf,
                                  const KeywordBoost& boost, const ReferenceResolver& resolver,
                                  TfScaling tf) {
  const Analyzer analyzer(scope.language);
  std::string text;
  for (const auto& reference : scope.reference_documents) {
    if (!text.empty()) text.push_back(' ');
    text += resolver(reference);
  }
  const auto tokens = analyzer.analyze(text);
  const TermVector vector = vectorize(tokens, idf, tf);
  return apply_keyword_boost(vector, keyword_tokens(scope.keywords, analyzer), boost);
}

IdfDictionary build_idf_dictionary_from_texts(std::span<const std::string> documents,
                                              std::string_view language) {
  if (documents.empty()) throw std::invalid_argument("IDF corpus is empty");
  const Analyzer analyzer(language);
  std::unordered_map<std::string, std::uint64_t> frequencies;
  for (const auto& doc : documents) {
    auto terms = terms_of(analyzer.analyze(doc));
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    for (auto& term : terms) ++frequencies[std::move(term)];
  }
  return IdfDictionary(documents.size(), std::move(frequencies));
}

IdfDictionary build_idf_dictionary(std::span<const std::filesystem::path> corpus_paths,
                                   std::string_view language) {
  std::vector<std::filesystem::path> files;
  for (const auto& path : corpus_paths) {
    if (std::filesystem::is_directory(path)) {
      std::vector<std::filesystem::path> listed;
      for (const auto& entry : std::filesystem::directory_iterator(path)) {
        if (entry.is_regular_file()) listed.push_back(entry.path());
      }
      std::sort(listed.begin(), listed.end());
      files.insert(files.end(), listed.begin(), listed.end());
    } else if (std::filesystem::is_regular_file(path)) {
      files.push_back(path);
    } else {
      throw std::runtime_error("corpus path not found: " + path.string());
    }
  }
  std::vector<std::string> texts;
  texts.reserve(files.size());
  for (const auto& file : files) texts.push_back(document_text(file));
  return build_idf_dictionary_from_texts(texts, language);
}

}  // namespace eventcrawl
