#include "eventcrawl/html.h"

#include <array>
#include <cctype>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

#include "eventcrawl/archive_index.h"
#include "eventcrawl/warc.h"

namespace eventcrawl {
namespace {

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

bool istarts_with(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (lower(s[i]) != lower(prefix[i])) return false;
  }
  return true;
}

std::size_t ifind(std::string_view haystack, std::string_view needle, std::size_t from) {
  if (needle.empty()) return from;
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    if (istarts_with(haystack.substr(i), needle)) return i;
  }
  return std::string_view::npos;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF) || cp == 0) cp = 0xFFFD;
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

const std::unordered_map<std::string_view, char32_t>& named_entities() {
  static const std::unordered_map<std::string_view, char32_t> table = {
      {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},       {"quot", U'"'},
      {"apos", U'\''},    {"nbsp", 0xA0},     {"copy", 0xA9},     {"reg", 0xAE},
      {"trade", 0x2122},  {"euro", 0x20AC},   {"pound", 0xA3},    {"yen", 0xA5},
      {"cent", 0xA2},     {"sect", 0xA7},     {"para", 0xB6},     {"deg", 0xB0},
      {"middot", 0xB7},   {"times", 0xD7},    {"divide", 0xF7},   {"laquo", 0xAB},
      {"raquo", 0xBB},    {"ndash", 0x2013},  {"mdash", 0x2014},  {"hellip", 0x2026},
      {"lsquo", 0x2018},  {"rsquo", 0x2019},  {"sbquo", 0x201A},  {"ldquo", 0x201C},
      {"rdquo", 0x201D},  {"bdquo", 0x201E},  {"bull", 0x2022},   {"shy", 0xAD},
      {"auml", 0xE4},     {"ouml", 0xF6},     {"uuml", 0xFC},     {"Auml", 0xC4},
      {"Ouml", 0xD6},     {"Uuml", 0xDC},     {"szlig", 0xDF},    {"eacute", 0xE9},
      {"egrave", 0xE8},   {"ecirc", 0xEA},    {"aacute", 0xE1},   {"agrave", 0xE0},
      {"acirc", 0xE2},    {"iacute", 0xED},   {"oacute", 0xF3},   {"uacute", 0xFA},
      {"ccedil", 0xE7},   {"ntilde", 0xF1},   {"Eacute", 0xC9},   {"oslash", 0xF8},
      {"aring", 0xE5},    {"aelig", 0xE6},    {"thinsp", 0x2009}, {"ensp", 0x2002},
      {"emsp", 0x2003},
  };
  return table;
}

// windows-1252 code points for bytes 0x80..0x9F.
constexpr std::array<char32_t, 32> kCp1252High = {
    0x20AC, 0xFFFD, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021, 0x02C6, 0x2030, 0x0160,
    0x2039, 0x0152, 0xFFFD, 0x017D, 0xFFFD, 0xFFFD, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022,
    0x2013, 0x2014, 0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0xFFFD, 0x017E, 0x0178};

// Elements whose boundaries separate words in rendered text.
bool is_block_element(std::string_view name) {
  static const std::unordered_set<std::string_view> blocks = {
      "address", "article", "aside", "blockquote", "br", "dd", "div", "dl", "dt", "fieldset",
      "figcaption", "figure", "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header",
      "hr", "li", "main", "nav", "ol", "option", "p", "pre", "section", "table", "tbody",
      "td", "tfoot", "th", "thead", "title", "tr", "ul", "body", "head", "html", "img",
      "input", "select", "textarea", "td", "caption"};
  return blocks.contains(name);
}

// Parses the inside of a tag (between '<' and '>').
HtmlTag parse_tag(std::string_view inner) {
  HtmlTag tag;
  std::size_t i = 0;
  if (i < inner.size() && inner[i] == '/') {
    tag.closing = true;
    ++i;
  }
  const std::size_t name_start = i;
  while (i < inner.size() && !is_space(inner[i]) && inner[i] != '/' && inner[i] != '>') ++i;
  tag.name.reserve(i - name_start);
  for (std::size_t k = name_start; k < i; ++k) tag.name.push_back(lower(inner[k]));

  while (i < inner.size()) {
    while (i < inner.size() && (is_space(inner[i]) || inner[i] == '/')) {
      if (inner[i] == '/' && i + 1 == inner.size()) tag.self_closing = true;
      ++i;
    }
    if (i >= inner.size()) break;
    const std::size_t attr_start = i;
    while (i < inner.size() && !is_space(inner[i]) && inner[i] != '=' && inner[i] != '/') ++i;
    std::string name;
    for (std::size_t k = attr_start; k < i; ++k) name.push_back(lower(inner[k]));
    while (i < inner.size() && is_space(inner[i])) ++i;
    std::string value;
    if (i < inner.size() && inner[i] == '=') {
      ++i;
      while (i < inner.size() && is_space(inner[i])) ++i;
      if (i < inner.size() && (inner[i] == '"' || inner[i] == '\'')) {
        const char quote = inner[i++];
        const std::size_t end = inner.find(quote, i);
        value = std::string(inner.substr(i, end == std::string_view::npos ? inner.npos : end - i));
        i = end == std::string_view::npos ? inner.size() : end + 1;
      } else {
        const std::size_t v_start = i;
        while (i < inner.size() && !is_space(inner[i])) ++i;
        value = std::string(inner.substr(v_start, i - v_start));
      }
    }
    if (!name.empty()) tag.attributes.emplace_back(std::move(name), std::move(value));
  }
  return tag;
}

// Finds the '>' closing a tag, skipping quoted attribute values.
std::size_t find_tag_end(std::string_view html, std::size_t from) {
  char quote = 0;
  for (std::size_t i = from; i < html.size(); ++i) {
    const char c = html[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      // Only treat as a quote when it starts an attribute value.
      if (i > from && (html[i - 1] == '=' || is_space(html[i - 1]))) quote = c;
    } else if (c == '>') {
      return i;
    }
  }
  return std::string_view::npos;
}

std::string charset_of(std::string_view content_type) {
  const auto pos = ifind(content_type, "charset=", 0);
  if (pos == std::string_view::npos) return {};
  std::string out;
  for (std::size_t i = pos + 8; i < content_type.size(); ++i) {
    const char c = content_type[i];
    if (c == '"' || c == '\'') continue;
    if (c == ';' || is_space(c)) break;
    out.push_back(lower(c));
  }
  return out;
}

bool is_latin1_family(std::string_view charset) {
  return charset == "iso-8859-1" || charset == "iso8859-1" || charset == "latin1" ||
         charset == "latin-1" || charset == "windows-1252" || charset == "cp1252" ||
         charset == "iso-8859-15";
}

}  // namespace

std::optional<std::string> HtmlTag::attribute(std::string_view name) const {
  for (const auto& [key, value] : attributes) {
    if (key == name) return decode_entities(value);
  }
  return std::nullopt;
}

void scan_html(std::string_view html, const TagVisitor& on_tag, const TextVisitor& on_text) {
  std::size_t pos = 0;
  std::size_t text_start = 0;
  const auto flush_text = [&](std::size_t end) {
    if (on_text && end > text_start) on_text(html.substr(text_start, end - text_start));
  };

  while (pos < html.size()) {
    const std::size_t lt = html.find('<', pos);
    if (lt == std::string_view::npos) break;
    const std::string_view rest = html.substr(lt);

    if (rest.starts_with("<!--")) {
      flush_text(lt);
      const auto end = html.find("-->", lt + 4);
      pos = text_start = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (rest.size() >= 2 && (rest[1] == '!' || rest[1] == '?')) {
      flush_text(lt);
      const auto end = html.find('>', lt + 2);
      pos = text_start = end == std::string_view::npos ? html.size() : end + 1;
      continue;
    }
    const bool looks_like_tag =
        rest.size() >= 2 && (std::isalpha(static_cast<unsigned char>(rest[1])) ||
                             (rest[1] == '/' && rest.size() >= 3 &&
                              std::isalpha(static_cast<unsigned char>(rest[2]))));
    if (!looks_like_tag) {
      pos = lt + 1;
      continue;
    }
    const std::size_t gt = find_tag_end(html, lt + 1);
    if (gt == std::string_view::npos) {
      // Unterminated tag: drop the remainder as markup.
      flush_text(lt);
      pos = text_start = html.size();
      break;
    }
    flush_text(lt);
    const HtmlTag tag = parse_tag(html.substr(lt + 1, gt - lt - 1));
    if (on_tag) on_tag(tag);
    pos = text_start = gt + 1;

    if (!tag.closing && !tag.self_closing && (tag.name == "script" || tag.name == "style")) {
      const std::string closer = "</" + tag.name;
      const auto end = ifind(html, closer, pos);
      if (end == std::string_view::npos) {
        pos = text_start = html.size();
      } else {
        const auto close_gt = html.find('>', end);
        pos = text_start = close_gt == std::string_view::npos ? html.size() : close_gt + 1;
        if (on_tag) {
          HtmlTag close_tag;
          close_tag.name = tag.name;
          close_tag.closing = true;
          on_tag(close_tag);
        }
      }
    }
  }
  flush_text(html.size());
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '&') {
      out.push_back(text[i]);
      continue;
    }
    const auto semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 32) {
      out.push_back('&');
      continue;
    }
    const std::string_view name = text.substr(i + 1, semi - i - 1);
    if (name.size() >= 2 && name[0] == '#') {
      std::uint32_t cp = 0;
      std::from_chars_result result{};
      if (name[1] == 'x' || name[1] == 'X') {
        result = std::from_chars(name.data() + 2, name.data() + name.size(), cp, 16);
      } else {
        result = std::from_chars(name.data() + 1, name.data() + name.size(), cp, 10);
      }
      if (result.ec == std::errc{} && result.ptr == name.data() + name.size()) {
        if (cp >= 0x80 && cp <= 0x9F) cp = kCp1252High[cp - 0x80];
        append_utf8(out, cp);
        i = semi;
        continue;
      }
    } else if (const auto it = named_entities().find(name); it != named_entities().end()) {
      append_utf8(out, it->second);
      i = semi;
      continue;
    }
    out.push_back('&');
  }
  return out;
}

std::string sanitize_utf8(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
      ++i;
      continue;
    } else if (c >= 0xC2 && c <= 0xDF) {
      len = 2;
      cp = c & 0x1F;
    } else if (c >= 0xE0 && c <= 0xEF) {
      len = 3;
      cp = c & 0x0F;
    } else if (c >= 0xF0 && c <= 0xF4) {
      len = 4;
      cp = c & 0x07;
    }
    bool valid = len > 0 && i + len <= bytes.size();
    for (std::size_t k = 1; valid && k < len; ++k) {
      const auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) {
        valid = false;
      } else {
        cp = (cp << 6) | (cc & 0x3F);
      }
    }
    if (valid && ((len == 3 && (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF))) ||
                  (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)))) {
      valid = false;
    }
    if (valid) {
      out.append(bytes.substr(i, len));
      i += len;
    } else {
      append_utf8(out, 0xFFFD);
      ++i;
    }
  }
  return out;
}

std::string latin1_to_utf8(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size() + bytes.size() / 8);
  for (const char ch : bytes) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x80) {
      out.push_back(ch);
    } else if (c < 0xA0) {
      append_utf8(out, kCp1252High[c - 0x80]);
    } else {
      append_utf8(out, c);
    }
  }
  return out;
}

std::string extract_text(std::string_view html) {
  const std::string clean = sanitize_utf8(html);
  std::string raw;
  raw.reserve(clean.size());
  scan_html(
      clean,
      [&](const HtmlTag& tag) {
        if (is_block_element(tag.name)) raw.push_back(' ');
      },
      [&](std::string_view text) { raw += decode_entities(text); });

  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    // U+00A0 (no-break space) is encoded as C2 A0.
    const bool nbsp = static_cast<unsigned char>(c) == 0xC2 && i + 1 < raw.size() &&
                      static_cast<unsigned char>(raw[i + 1]) == 0xA0;
    if (is_space(c) || c == '\v' || nbsp) {
      pending_space = true;
      if (nbsp) ++i;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string extract_text(const ArchivedDocument& document) {
  std::string charset;
  if (const auto ct = find_header(document.headers, "Content-Type")) charset = charset_of(*ct);
  if (charset.empty()) {
    // <meta charset=...> or <meta http-equiv="Content-Type" content="...; charset=...">
    const std::string_view head = std::string_view(document.body).substr(0, 4096);
    scan_html(head, [&](const HtmlTag& tag) {
      if (!charset.empty() || tag.name != "meta") return;
      if (const auto cs = tag.attribute("charset")) {
        for (const char c : *cs) charset.push_back(lower(c));
      } else if (const auto content = tag.attribute("content")) {
        charset = charset_of(*content);
      }
    });
  }
  if (is_latin1_family(charset)) return extract_text(latin1_to_utf8(document.body));
  return extract_text(document.body);
}

}  // namespace eventcrawl
