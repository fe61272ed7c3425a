#include "eventcrawl/analyzer.h"

#include "eventcrawl/stemmer.h"

namespace eventcrawl {

namespace embedded {
std::string_view stopwords_en();
std::string_view stopwords_de();
}  // namespace embedded

namespace {

std::unordered_set<std::string> load_list(std::string_view data) {
  std::unordered_set<std::string> words;
  std::size_t start = 0;
  while (start < data.size()) {
    auto end = data.find('\n', start);
    if (end == std::string_view::npos) end = data.size();
    auto line = data.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') words.emplace(line);
    start = end + 1;
  }
  return words;
}

// Decodes one UTF-8 sequence at `i`; returns its length (1 for stray bytes).
std::size_t decode_at(std::string_view s, std::size_t i, char32_t& cp) {
  const auto c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) {
    cp = c;
    return 1;
  }
  std::size_t len = c >= 0xF0 ? 4 : c >= 0xE0 ? 3 : c >= 0xC0 ? 2 : 1;
  if (len == 1 || i + len > s.size()) {
    cp = 0xFFFD;
    return 1;
  }
  cp = c & (len == 2 ? 0x1Fu : len == 3 ? 0x0Fu : 0x07u);
  for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3Fu);
  return len;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  }
  // Latin-1 punctuation and symbols, general punctuation, replacement char.
  if (cp >= 0x80 && cp <= 0xBF) return false;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;
  if (cp >= 0x20A0 && cp <= 0x20CF) return false;
  if (cp == 0xFFFD || cp == 0xFEFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  return true;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;  // Latin-1 capitals
  if (cp >= 0x100 && cp <= 0x17F && cp != 0x130 && cp != 0x131 && cp != 0x138 && cp != 0x149 &&
      cp != 0x17F) {
    // Latin Extended-A alternates capital/small pairs, with a phase shift
    // between U+0139 and U+0148.
    const bool shifted = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
    const bool is_upper = shifted ? (cp % 2 == 1) : (cp % 2 == 0);
    return is_upper ? cp + 1 : cp;
  }
  if (cp == 0x178) return 0xFF;
  return cp;
}

}  // namespace

UnknownLanguageError::UnknownLanguageError(std::string_view code)
    : std::invalid_argument("unknown language code: " + std::string(code)) {}

Language parse_language(std::string_view code) {
  if (code == "en" || code == "english") return Language::english;
  if (code == "de" || code == "german") return Language::german;
  if (code == "none") return Language::none;
  throw UnknownLanguageError(code);
}

bool is_supported_language(std::string_view code) {
  return code == "en" || code == "english" || code == "de" || code == "german" || code == "none";
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t i = 0; i < text.size();) {
    char32_t cp = 0;
    const std::size_t len = decode_at(text, i, cp);
    i += len;
    if (is_word_char(cp)) {
      append_utf8(current, to_lower(cp));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

const std::unordered_set<std::string>& stop_words(Language language) {
  static const std::unordered_set<std::string> en = load_list(embedded::stopwords_en());
  static const std::unordered_set<std::string> de = load_list(embedded::stopwords_de());
  static const std::unordered_set<std::string> empty;
  switch (language) {
    case Language::english:
      return en;
    case Language::german:
      return de;
    case Language::none:
      break;
  }
  return empty;
}

std::string Analyzer::stem(std::string_view token) const {
  switch (language_) {
    case Language::english:
      return porter_stem(token);
    case Language::german:
      return german_stem(token);
    case Language::none:
      break;
  }
  return std::string(token);
}

std::vector<std::string> Analyzer::analyze(std::string_view text) const {
  const auto& stops = stop_words(language_);
  std::vector<std::string> out;
  for (auto& token : tokenize(text)) {
    if (stops.contains(token)) continue;
    out.push_back(stem(token));
  }
  return out;
}

std::vector<std::string> analyze(std::string_view text, std::string_view language) {
  return Analyzer(language).analyze(text);
}

}  // namespace eventcrawl
