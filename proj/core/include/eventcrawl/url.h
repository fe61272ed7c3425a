#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eventcrawl {

class UrlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical absolute form used as the identity of a URL in the index, the
/// frontier and the seen set.
///
/// Relative references are resolved against `base` (RFC 3986 section 5).
/// Scheme and host are lowercased, the fragment is dropped, default ports
/// (80 for http, 443 for https) are removed, dot segments are removed and an
/// empty path becomes "/". Percent-escapes of unreserved characters are
/// decoded, other escapes get uppercase hex, and bytes that may not appear in
/// a URL (space, controls, non-ASCII) are percent-encoded. The query string is
/// kept verbatim apart from that escape normalization, parameter order
/// included.
///
/// Throws UrlError for unparseable input, a relative reference without a
/// base, or any scheme other than http/https.
std::string canonicalize_url(std::string_view url,
                             std::optional<std::string_view> base = std::nullopt);

/// Non-throwing variant of canonicalize_url.
std::optional<std::string> try_canonicalize_url(
    std::string_view url, std::optional<std::string_view> base = std::nullopt) noexcept;

/// Path component (without query) of a canonical URL; "/" if none.
std::string_view url_path(std::string_view canonical_url);

}  // namespace eventcrawl
