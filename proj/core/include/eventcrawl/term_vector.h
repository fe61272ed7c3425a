#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "eventcrawl/analyzer.h"
#include "eventcrawl/collection_spec.h"

namespace eventcrawl {

/// Sparse non-negative term weights with a cached Euclidean norm.
///
/// Terms are kept sorted so dot products are a linear merge.
class TermVector {
 public:
  using Entry = std::pair<std::string, double>;

  TermVector() = default;
  /// Throws std::invalid_argument on negative or non-finite weights.
  explicit TermVector(std::map<std::string, double> weights);

  double weight(std::string_view term) const;
  bool contains(std::string_view term) const;
  double norm() const { return norm_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }

  double dot(const TermVector& other) const;
  TermVector scaled(double factor) const;

  friend bool operator==(const TermVector& a, const TermVector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
  double norm_ = 0.0;
};

/// Unigrams of `tokens` followed by their adjacent-pair bigrams ("a b").
std::vector<std::string> terms_of(std::span<const std::string> tokens);

class IdfFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Document frequencies over a reference corpus; idf(t) = ln(N / df(t)).
class IdfDictionary {
 public:
  /// IDF for terms absent from the dictionary.
  enum class Policy { max_observed, log_corpus_size };

  IdfDictionary() = default;
  /// Throws std::invalid_argument unless corpus_size ≥ 1 and every
  /// frequency lies in [1, corpus_size].
  IdfDictionary(std::uint64_t corpus_size, std::unordered_map<std::string, std::uint64_t> frequencies,
                Policy policy = Policy::log_corpus_size);

  double idf(std::string_view term) const;
  /// 0 for unseen terms.
  std::uint64_t doc_frequency(std::string_view term) const;
  std::uint64_t corpus_size() const { return corpus_size_; }
  std::size_t term_count() const { return frequencies_.size(); }
  Policy policy() const { return policy_; }
  IdfDictionary with_policy(Policy policy) const;

  /// `#corpus_size N` header followed by `term<TAB>doc_frequency` lines.
  static IdfDictionary parse(std::string_view text, Policy policy = Policy::log_corpus_size);
  static IdfDictionary load(const std::filesystem::path& path,
                            Policy policy = Policy::log_corpus_size);
  /// The small dictionary bundled with the library.
  static const IdfDictionary& bundled();

  /// Writes the file format, terms in byte order.
  void save(const std::filesystem::path& path) const;
  std::string serialize() const;

 private:
  std::uint64_t corpus_size_ = 1;
  std::unordered_map<std::string, std::uint64_t> frequencies_;
  Policy policy_ = Policy::log_corpus_size;
  double unseen_idf_ = 0.0;
};

enum class TfScaling { raw, logarithmic };

/// weight(t) = tf(t) × idf(t) over unigrams and bigrams; tf is the raw count
/// (or 1 + ln count with TfScaling::logarithmic).
TermVector vectorize(std::span<const std::string> tokens, const IdfDictionary& idf,
                     TfScaling tf = TfScaling::raw);

/// Term weight multipliers by keyword overlap.
struct KeywordBoost {
  double full_overlap_weight = 2.0;
  double partial_overlap_weight = 1.5;
  double no_overlap_weight = 1.0;

  /// Throws std::invalid_argument unless full ≥ partial ≥ none > 0.
  void validate() const;
};

/// Multiplies each term's weight by the boost for its overlap with
/// `keyword_tokens` (already analyzed).
TermVector apply_keyword_boost(const TermVector& vector,
                               const std::unordered_set<std::string>& keyword_tokens,
                               const KeywordBoost& boost);

/// Analyzed tokens of every keyword, pooled.
std::unordered_set<std::string> keyword_tokens(std::span<const std::string> keywords,
                                               const Analyzer& analyzer);

class ReferenceResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Returns the plain text of a reference document or throws
/// ReferenceResolutionError.
using ReferenceResolver = std::function<std::string(const ReferenceDocument&)>;

/// Resolves inline text and local files (HTML files are reduced to their
/// visible text). archive-url references need an index and are rejected.
std::string resolve_reference_locally(const ReferenceDocument& reference);

/// Concatenates the resolved reference texts, analyzes and vectorizes them,
/// then applies keyword boosting.
TermVector build_reference_vector(const TopicalScope& scope, const IdfDictionary& idf,
                                  const KeywordBoost& boost = {},
                                  const ReferenceResolver& resolver = resolve_reference_locally,
                                  TfScaling tf = TfScaling::raw);

/// Counts, for every unigram and bigram, the number of corpus documents
/// containing it. Each regular file is one document; directories contribute
/// their regular files (non-recursive, sorted). HTML files are reduced to
/// visible text. Throws std::invalid_argument for an empty corpus.
IdfDictionary build_idf_dictionary(std::span<const std::filesystem::path> corpus_paths,
                                   std::string_view language = "en");

/// Same counting over in-memory texts.
IdfDictionary build_idf_dictionary_from_texts(std::span<const std::string> documents,
                                              std::string_view language = "en");

}  // namespace eventcrawl
