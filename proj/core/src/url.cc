#include "eventcrawl/url.h"

#include <cctype>
#include <charconv>

namespace eventcrawl {
namespace {

struct UriParts {
  std::optional<std::string> scheme;
  std::optional<std::string> authority;
  std::string path;
  std::optional<std::string> query;
};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_unreserved(unsigned char c) {
  return is_alpha(static_cast<char>(c)) || is_digit(static_cast<char>(c)) || c == '-' ||
         c == '.' || c == '_' || c == '~';
}

bool is_sub_delim(unsigned char c) {
  switch (c) {
    case '!': case '$': case '&': case '\'': case '(': case ')':
    case '*': case '+': case ',': case ';': case '=':
      return true;
    default:
      return false;
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void append_escape(std::string& out, unsigned char byte) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  out.push_back('%');
  out.push_back(kHex[byte >> 4]);
  out.push_back(kHex[byte & 0xF]);
}

// Normalizes percent-escapes in a path or query. `allow_question` admits '?'
// unescaped (legal in queries).
std::string normalize_escapes(std::string_view in, bool allow_question) {
  std::string out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto c = static_cast<unsigned char>(in[i]);
    if (c == '%') {
      const int hi = i + 2 < in.size() ? hex_value(in[i + 1]) : -1;
      const int lo = i + 2 < in.size() ? hex_value(in[i + 2]) : -1;
      if (hi < 0 || lo < 0) {
        append_escape(out, '%');
        continue;
      }
      const auto decoded = static_cast<unsigned char>(hi * 16 + lo);
      if (is_unreserved(decoded)) {
        out.push_back(static_cast<char>(decoded));
      } else {
        append_escape(out, decoded);
      }
      i += 2;
    } else if (is_unreserved(c) || is_sub_delim(c) || c == ':' || c == '@' || c == '/' ||
               (allow_question && c == '?')) {
      out.push_back(static_cast<char>(c));
    } else {
      append_escape(out, c);
    }
  }
  return out;
}

std::string remove_dot_segments(std::string_view input) {
  std::string in(input);
  std::string out;
  while (!in.empty()) {
    if (in.starts_with("../")) {
      in.erase(0, 3);
    } else if (in.starts_with("./")) {
      in.erase(0, 2);
    } else if (in.starts_with("/./")) {
      in.erase(0, 2);
    } else if (in == "/.") {
      in = "/";
    } else if (in.starts_with("/../") || in == "/..") {
      in = in.size() == 3 ? std::string("/") : in.substr(3);
      const auto slash = out.rfind('/');
      out.erase(slash == std::string::npos ? 0 : slash);
    } else if (in == "." || in == "..") {
      in.clear();
    } else {
      const std::size_t start = in[0] == '/' ? 1 : 0;
      const std::size_t next = in.find('/', start);
      const std::size_t len = next == std::string::npos ? in.size() : next;
      out.append(in, 0, len);
      in.erase(0, len);
    }
  }
  return out;
}

UriParts split(std::string_view s) {
  UriParts parts;
  if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);

  std::size_t i = 0;
  if (!s.empty() && is_alpha(s[0])) {
    std::size_t j = 1;
    while (j < s.size() &&
           (is_alpha(s[j]) || is_digit(s[j]) || s[j] == '+' || s[j] == '-' || s[j] == '.')) {
      ++j;
    }
    if (j < s.size() && s[j] == ':') {
      std::string scheme(s.substr(0, j));
      for (char& c : scheme) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      parts.scheme = std::move(scheme);
      i = j + 1;
    }
  }
  if (s.substr(i).starts_with("//")) {
    i += 2;
    const std::size_t end = s.find_first_of("/?", i);
    parts.authority = std::string(s.substr(i, end == std::string_view::npos ? s.npos : end - i));
    i = end == std::string_view::npos ? s.size() : end;
  }
  const std::size_t q = s.find('?', i);
  parts.path = std::string(s.substr(i, q == std::string_view::npos ? s.npos : q - i));
  if (q != std::string_view::npos) parts.query = std::string(s.substr(q + 1));
  return parts;
}

std::string merge_paths(const UriParts& base, std::string_view ref_path) {
  if (base.authority && base.path.empty()) return "/" + std::string(ref_path);
  const auto slash = base.path.rfind('/');
  if (slash == std::string::npos) return std::string(ref_path);
  return base.path.substr(0, slash + 1) + std::string(ref_path);
}

std::string normalize_authority(std::string_view scheme, std::string_view authority) {
  std::string userinfo;
  std::string_view host_port = authority;
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
    userinfo = normalize_escapes(authority.substr(0, at), false);
    host_port = authority.substr(at + 1);
  }

  std::string_view host = host_port;
  std::string_view port;
  if (host_port.starts_with('[')) {
    const auto close = host_port.find(']');
    if (close == std::string_view::npos) throw UrlError("unterminated IPv6 literal");
    host = host_port.substr(0, close + 1);
    const auto rest = host_port.substr(close + 1);
    if (!rest.empty()) {
      if (rest[0] != ':') throw UrlError("invalid authority");
      port = rest.substr(1);
    }
  } else if (const auto colon = host_port.rfind(':'); colon != std::string_view::npos) {
    host = host_port.substr(0, colon);
    port = host_port.substr(colon + 1);
  }
  if (host.empty()) throw UrlError("missing host");

  std::string out;
  if (!userinfo.empty()) out += userinfo + "@";
  for (const char ch : host) {
    const auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || c == '/' || c == '\\' || c == '<' || c == '>' || c == '"' || c == '{' ||
        c == '}' || c == '|' || c == '^' || c == '`' || c == '@') {
      throw UrlError("invalid character in host");
    }
    if (c >= 0x80) {
      append_escape(out, c);
    } else {
      out.push_back(static_cast<char>(std::tolower(c)));
    }
  }

  if (!port.empty()) {
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
    if (ec != std::errc{} || ptr != port.data() + port.size() || value > 65535) {
      throw UrlError("invalid port");
    }
    const bool is_default = (scheme == "http" && value == 80) || (scheme == "https" && value == 443);
    if (!is_default) out += ":" + std::to_string(value);
  }
  return out;
}

std::string clean_input(std::string_view url) {
  while (!url.empty() && static_cast<unsigned char>(url.front()) <= 0x20) url.remove_prefix(1);
  while (!url.empty() && static_cast<unsigned char>(url.back()) <= 0x20) url.remove_suffix(1);
  std::string out;
  out.reserve(url.size());
  for (const char c : url) {
    if (c != '\t' && c != '\n' && c != '\r') out.push_back(c);
  }
  return out;
}

}  // namespace

std::string canonicalize_url(std::string_view url, std::optional<std::string_view> base) {
  const std::string cleaned = clean_input(url);
  if (cleaned.empty() && !base) throw UrlError("empty URL");

  UriParts ref = split(cleaned);
  ref.path = normalize_escapes(ref.path, false);

  UriParts target;
  if (ref.scheme) {
    target = std::move(ref);
    target.path = remove_dot_segments(target.path);
  } else {
    if (!base) throw UrlError("relative URL without base: " + cleaned);
    UriParts b = split(clean_input(*base));
    if (!b.scheme) throw UrlError("base URL is not absolute");
    b.path = normalize_escapes(b.path, false);
    target.scheme = b.scheme;
    if (ref.authority) {
      target.authority = ref.authority;
      target.path = remove_dot_segments(ref.path);
      target.query = ref.query;
    } else {
      target.authority = b.authority;
      if (ref.path.empty()) {
        target.path = b.path;
        target.query = ref.query ? ref.query : b.query;
      } else {
        target.path = remove_dot_segments(ref.path.starts_with('/') ? ref.path
                                                                   : merge_paths(b, ref.path));
        target.query = ref.query;
      }
    }
  }

  const std::string& scheme = *target.scheme;
  if (scheme != "http" && scheme != "https") throw UrlError("unsupported scheme: " + scheme);
  if (!target.authority) throw UrlError("missing authority");

  std::string out = scheme + "://" + normalize_authority(scheme, *target.authority);
  out += target.path.empty() ? "/" : target.path;
  if (target.query) out += "?" + normalize_escapes(*target.query, true);
  return out;
}

std::optional<std::string> try_canonicalize_url(std::string_view url,
                                                std::optional<std::string_view> base) noexcept {
  try {
    return canonicalize_url(url, base);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string_view url_path(std::string_view canonical_url) {
  const auto scheme_end = canonical_url.find("://");
  if (scheme_end == std::string_view::npos) return "/";
  const auto path_start = canonical_url.find('/', scheme_end + 3);
  if (path_start == std::string_view::npos) return "/";
  auto path = canonical_url.substr(path_start);
  if (const auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  return path;
}

}  // namespace eventcrawl
