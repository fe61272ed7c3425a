#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace eventcrawl {

enum class Language { english, german, none };

class UnknownLanguageError : public std::invalid_argument {
 public:
  explicit UnknownLanguageError(std::string_view code);
};

/// "en", "de" or "none" (identity stemmer, no stop words).
Language parse_language(std::string_view code);
bool is_supported_language(std::string_view code);

/// Splits text into lowercased word tokens. Word characters are ASCII letters
/// and digits plus non-ASCII letters; everything else separates tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Bundled stop-word list for a language (empty for Language::none).
const std::unordered_set<std::string>& stop_words(Language language);

/// Tokenize, drop stop words, stem. Deterministic and order preserving.
class Analyzer {
 public:
  explicit Analyzer(Language language) : language_(language) {}
  /// Throws UnknownLanguageError.
  explicit Analyzer(std::string_view language_code) : language_(parse_language(language_code)) {}

  std::vector<std::string> analyze(std::string_view text) const;
  std::string stem(std::string_view token) const;
  Language language() const { return language_; }

 private:
  Language language_;
};

/// Convenience wrapper: Analyzer(language).analyze(text).
std::vector<std::string> analyze(std::string_view text, std::string_view language);

}  // namespace eventcrawl
