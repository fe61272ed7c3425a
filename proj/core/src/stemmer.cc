#include "eventcrawl/stemmer.h"

#include <array>

namespace eventcrawl {
namespace {

// Porter's algorithm, transcribed from the reference implementation: `b`
// holds the word, `k` indexes its last letter and `j` marks the end of the
// stem while a suffix is being tested.
class PorterStemmer {
 public:
  explicit PorterStemmer(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

  std::string run() {
    if (k_ <= 1) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_.substr(0, static_cast<std::size_t>(k_ + 1));
  }

 private:
  bool cons(int i) const {
    switch (b_[static_cast<std::size_t>(i)]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of consonant-vowel sequences in b[0..j].
  int m() const {
    int n = 0;
    int i = 0;
    for (;;) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_consonant(int j) const {
    if (j < 1) return false;
    if (b_[static_cast<std::size_t>(j)] != b_[static_cast<std::size_t>(j - 1)]) return false;
    return cons(j);
  }

  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b_[static_cast<std::size_t>(i)];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view s) {
    const int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (std::string_view(b_).substr(static_cast<std::size_t>(k_ - len + 1), s.size()) != s) {
      return false;
    }
    j_ = k_ - len;
    return true;
  }

  void set_to(std::string_view s) {
    b_.replace(static_cast<std::size_t>(j_ + 1), static_cast<std::size_t>(k_ - j_), s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void replace_if_measured(std::string_view s) {
    if (m() > 0) set_to(s);
  }

  char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

  void step1ab() {
    if (at(k_) == 's') {
      if (ends("sses")) {
        k_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (at(k_ - 1) != 's') {
        --k_;
      }
    }
    if (ends("eed")) {
      if (m() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_consonant(k_)) {
        --k_;
        const char ch = at(k_);
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else {
        j_ = k_;
        if (m() == 1 && cvc(k_)) set_to("e");
      }
    }
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
  }

  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  // Applies the first rule whose suffix matches; later rules are not tried
  // even if the measure condition fails.
  template <std::size_t N>
  void apply_first(const std::array<Rule, N>& rules) {
    for (const auto& rule : rules) {
      if (ends(rule.suffix)) {
        replace_if_measured(rule.replacement);
        return;
      }
    }
  }

  void step2() {
    if (k_ < 1) return;
    switch (at(k_ - 1)) {
      case 'a':
        apply_first(std::array<Rule, 2>{{{"ational", "ate"}, {"tional", "tion"}}});
        break;
      case 'c':
        apply_first(std::array<Rule, 2>{{{"enci", "ence"}, {"anci", "ance"}}});
        break;
      case 'e':
        apply_first(std::array<Rule, 1>{{{"izer", "ize"}}});
        break;
      case 'l':
        apply_first(std::array<Rule, 5>{
            {{"bli", "ble"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"}, {"ousli", "ous"}}});
        break;
      case 'o':
        apply_first(
            std::array<Rule, 3>{{{"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}}});
        break;
      case 's':
        apply_first(std::array<Rule, 4>{
            {{"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"}, {"ousness", "ous"}}});
        break;
      case 't':
        apply_first(
            std::array<Rule, 3>{{{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}}});
        break;
      case 'g':
        apply_first(std::array<Rule, 1>{{{"logi", "log"}}});
        break;
      default:
        break;
    }
  }

  void step3() {
    switch (at(k_)) {
      case 'e':
        apply_first(std::array<Rule, 3>{{{"icate", "ic"}, {"ative", ""}, {"alize", "al"}}});
        break;
      case 'i':
        apply_first(std::array<Rule, 1>{{{"iciti", "ic"}}});
        break;
      case 'l':
        apply_first(std::array<Rule, 2>{{{"ical", "ic"}, {"ful", ""}}});
        break;
      case 's':
        apply_first(std::array<Rule, 1>{{{"ness", ""}}});
        break;
      default:
        break;
    }
  }

  void step4() {
    if (k_ < 1) return;
    bool matched = false;
    switch (at(k_ - 1)) {
      case 'a':
        matched = ends("al");
        break;
      case 'c':
        matched = ends("ance") || ends("ence");
        break;
      case 'e':
        matched = ends("er");
        break;
      case 'i':
        matched = ends("ic");
        break;
      case 'l':
        matched = ends("able") || ends("ible");
        break;
      case 'n':
        matched = ends("ant") || ends("ement") || ends("ment") || ends("ent");
        break;
      case 'o':
        if (ends("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't')) {
          matched = true;
        } else {
          matched = ends("ou");
        }
        break;
      case 's':
        matched = ends("ism");
        break;
      case 't':
        matched = ends("ate") || ends("iti");
        break;
      case 'u':
        matched = ends("ous");
        break;
      case 'v':
        matched = ends("ive");
        break;
      case 'z':
        matched = ends("ize");
        break;
      default:
        break;
    }
    if (matched && m() > 1) k_ = j_;
  }

  void step5() {
    j_ = k_;
    if (at(k_) == 'e') {
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
    }
    if (at(k_) == 'l' && double_consonant(k_)) {
      j_ = k_;
      if (m() > 1) --k_;
    }
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    char32_t cp = c;
    std::size_t len = 1;
    if (c >= 0xF0 && i + 3 < s.size()) {
      cp = ((c & 0x07u) << 18) | ((s[i + 1] & 0x3Fu) << 12) | ((s[i + 2] & 0x3Fu) << 6) |
           (s[i + 3] & 0x3Fu);
      len = 4;
    } else if (c >= 0xE0 && i + 2 < s.size()) {
      cp = ((c & 0x0Fu) << 12) | ((s[i + 1] & 0x3Fu) << 6) | (s[i + 2] & 0x3Fu);
      len = 3;
    } else if (c >= 0xC0 && i + 1 < s.size()) {
      cp = ((c & 0x1Fu) << 6) | (s[i + 1] & 0x3Fu);
      len = 2;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  for (const char32_t cp : s) {
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
  return out;
}

constexpr char32_t kAUml = 0xE4;  // ä
constexpr char32_t kOUml = 0xF6;  // ö
constexpr char32_t kUUml = 0xFC;  // ü
constexpr char32_t kSharpS = 0xDF;

bool german_vowel(char32_t c) {
  return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u' || c == U'y' ||
         c == kAUml || c == kOUml || c == kUUml;
}

bool s_ending(char32_t c) {
  return c == U'b' || c == U'd' || c == U'f' || c == U'g' || c == U'h' || c == U'k' ||
         c == U'l' || c == U'm' || c == U'n' || c == U'r' || c == U't';
}

bool st_ending(char32_t c) { return s_ending(c) && c != U'r'; }

class GermanStemmer {
 public:
  explicit GermanStemmer(std::u32string word) : w_(std::move(word)) {}

  std::u32string run() {
    prelude();
    mark_regions();
    step1();
    step2();
    step3();
    postlude();
    return w_;
  }

 private:
  std::size_t size() const { return w_.size(); }

  bool ends(std::u32string_view suffix) const {
    return w_.size() >= suffix.size() &&
           std::u32string_view(w_).substr(w_.size() - suffix.size()) == suffix;
  }

  // Longest suffix from `candidates` that the word ends with.
  template <std::size_t N>
  std::u32string_view longest(const std::array<std::u32string_view, N>& candidates) const {
    std::u32string_view best;
    for (const auto c : candidates) {
      if (c.size() > best.size() && ends(c)) best = c;
    }
    return best;
  }

  void chop(std::size_t n) { w_.resize(w_.size() - n); }

  void prelude() {
    std::u32string out;
    for (const char32_t c : w_) {
      if (c == kSharpS) {
        out += U"ss";
      } else {
        out.push_back(c);
      }
    }
    w_ = std::move(out);
    for (std::size_t i = 1; i + 1 < w_.size(); ++i) {
      if (!german_vowel(w_[i - 1]) || !german_vowel(w_[i + 1])) continue;
      if (w_[i] == U'u') w_[i] = U'U';
      if (w_[i] == U'y') w_[i] = U'Y';
    }
  }

  // Position just past the first non-vowel that follows a vowel, searching from `from`.
  std::size_t region_start(std::size_t from) const {
    std::size_t i = from;
    while (i < size() && !german_vowel(w_[i])) ++i;
    if (i >= size()) return size();
    while (i < size() && german_vowel(w_[i])) ++i;
    if (i >= size()) return size();
    return i + 1;
  }

  void mark_regions() {
    p1_ = p2_ = size();
    if (size() < 3) return;
    const std::size_t raw_p1 = region_start(0);
    p2_ = raw_p1 >= size() ? size() : region_start(raw_p1);
    p1_ = raw_p1 < 3 ? 3 : raw_p1;
  }

  bool in_r1(std::size_t suffix_len) const { return size() - suffix_len >= p1_; }
  bool in_r2(std::size_t suffix_len) const { return size() - suffix_len >= p2_; }

  void step1() {
    static constexpr std::array<std::u32string_view, 7> kSuffixes = {U"em", U"ern", U"er", U"e",
                                                                     U"en", U"es", U"s"};
    const auto suffix = longest(kSuffixes);
    if (suffix.empty() || !in_r1(suffix.size())) return;
    if (suffix == U"em" || suffix == U"ern" || suffix == U"er") {
      chop(suffix.size());
    } else if (suffix == U"e" || suffix == U"en" || suffix == U"es") {
      chop(suffix.size());
      if (ends(U"niss")) chop(1);
    } else if (size() >= 2 && s_ending(w_[size() - 2])) {
      chop(1);
    }
  }

  void step2() {
    static constexpr std::array<std::u32string_view, 4> kSuffixes = {U"en", U"er", U"est", U"st"};
    const auto suffix = longest(kSuffixes);
    if (suffix.empty() || !in_r1(suffix.size())) return;
    if (suffix == U"st") {
      const std::size_t start = size() - 2;
      if (start >= 4 && st_ending(w_[start - 1])) chop(2);
    } else {
      chop(suffix.size());
    }
  }

  void step3() {
    static constexpr std::array<std::u32string_view, 8> kSuffixes = {
        U"end", U"ung", U"ig", U"ik", U"isch", U"lich", U"heit", U"keit"};
    const auto suffix = longest(kSuffixes);
    if (suffix.empty() || !in_r2(suffix.size())) return;
    const std::size_t start = size() - suffix.size();
    const bool preceded_by_e = start > 0 && w_[start - 1] == U'e';

    if (suffix == U"end" || suffix == U"ung") {
      chop(suffix.size());
      if (ends(U"ig") && in_r2(2) && !(size() >= 3 && w_[size() - 3] == U'e')) chop(2);
    } else if (suffix == U"ig" || suffix == U"ik" || suffix == U"isch") {
      if (!preceded_by_e) chop(suffix.size());
    } else if (suffix == U"lich" || suffix == U"heit") {
      chop(suffix.size());
      if ((ends(U"er") || ends(U"en")) && in_r1(2)) chop(2);
    } else if (suffix == U"keit") {
      chop(suffix.size());
      if (ends(U"lich") && in_r2(4)) {
        chop(4);
      } else if (ends(U"ig") && in_r2(2)) {
        chop(2);
      }
    }
  }

  void postlude() {
    for (char32_t& c : w_) {
      if (c == U'U') c = U'u';
      else if (c == U'Y') c = U'y';
      else if (c == kAUml) c = U'a';
      else if (c == kOUml) c = U'o';
      else if (c == kUUml) c = U'u';
    }
  }

  std::u32string w_;
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) { return PorterStemmer(word).run(); }

std::string german_stem(std::string_view word) {
  return encode_utf8(GermanStemmer(decode_utf8(word)).run());
}

}  // namespace eventcrawl
