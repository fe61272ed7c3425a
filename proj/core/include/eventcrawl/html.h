#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eventcrawl {

struct ArchivedDocument;

struct HtmlTag {
  std::string name;  // lowercased
  bool closing = false;
  bool self_closing = false;
  std::vector<std::pair<std::string, std::string>> attributes;  // names lowercased, values raw

  /// Entity-decoded value of the first attribute named `name`.
  std::optional<std::string> attribute(std::string_view name) const;
};

using TagVisitor = std::function<void(const HtmlTag&)>;
using TextVisitor = std::function<void(std::string_view raw_text)>;

/// Lenient single-pass HTML scanner. Comments, doctype and processing
/// instructions are skipped; the contents of script and style elements are
/// neither reported as text nor scanned for tags. Either visitor may be empty.
void scan_html(std::string_view html, const TagVisitor& on_tag, const TextVisitor& on_text = {});

/// Decodes named and numeric character references.
std::string decode_entities(std::string_view text);

/// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

/// ISO-8859-1 / windows-1252 bytes to UTF-8.
std::string latin1_to_utf8(std::string_view bytes);

/// Visible text of an HTML fragment assumed to be UTF-8: tags stripped,
/// script/style removed, entities decoded, whitespace collapsed to single
/// spaces and trimmed. Never fails; undecodable bytes become U+FFFD.
std::string extract_text(std::string_view html);

/// As above, honoring a Latin-1 family charset declared in the HTTP
/// Content-Type header or a meta element.
std::string extract_text(const ArchivedDocument& document);

}  // namespace eventcrawl
