#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eventcrawl {

struct Header {
  std::string name;
  std::string value;

  friend bool operator==(const Header&, const Header&) = default;
};

using HeaderList = std::vector<Header>;

/// Case-insensitive lookup of the first header named `name`.
std::optional<std::string_view> find_header(const HeaderList& headers, std::string_view name);

/// A malformed or truncated record. `offset` is the byte position of the
/// record start in `file`.
class WarcFormatError : public std::runtime_error {
 public:
  WarcFormatError(std::string file, std::uint64_t offset, const std::string& what);

  const std::string& file() const { return file_; }
  std::uint64_t offset() const { return offset_; }

 private:
  std::string file_;
  std::uint64_t offset_;
};

struct WarcRecord {
  std::string version;  // e.g. "WARC/1.0"
  HeaderList headers;
  std::string block;

  std::string_view type() const;
  std::string_view target_uri() const;
  std::string_view date() const;
};

/// A record together with its extent in the containing file. For
/// gzip-compressed records the extent covers the whole gzip member.
struct WarcEntry {
  std::uint64_t offset = 0;
  std::uint64_t length = 0;
  bool compressed = false;
  WarcRecord record;
};

/// Sequential reader over a WARC 1.0/1.1 file whose records may each be a
/// separate gzip member.
class WarcReader {
 public:
  /// Throws std::runtime_error when the file cannot be opened.
  explicit WarcReader(const std::filesystem::path& path);

  /// Next record, or nullopt at end of file. A malformed record raises
  /// WarcFormatError; the reader has then already advanced to the next
  /// plausible record start, so reading may continue.
  std::optional<WarcEntry> next();

 private:
  void resync_after(std::uint64_t offset);

  std::filesystem::path path_;
  std::ifstream in_;
  std::uint64_t file_size_ = 0;
  std::uint64_t position_ = 0;
};

/// Reads exactly one record starting at `offset`. Throws WarcFormatError if no
/// well-formed record starts there.
WarcEntry read_record_at(const std::filesystem::path& path, std::uint64_t offset);

struct RecordExtent {
  std::uint64_t offset = 0;
  std::uint64_t length = 0;
};

/// Serializes records. Each record is written uncompressed unless
/// `compress` is set, in which case it becomes its own gzip member.
class WarcWriter {
 public:
  explicit WarcWriter(std::ostream& out, bool compress = false);

  /// Writes `headers` (Content-Length is appended when absent) and `block`;
  /// returns the record's extent.
  RecordExtent write(std::string_view version, const HeaderList& headers, std::string_view block);

  std::uint64_t bytes_written() const { return position_; }

 private:
  std::ostream& out_;
  bool compress_;
  std::uint64_t position_ = 0;
};

/// An HTTP response carried in a WARC response block.
struct HttpResponse {
  int status = 0;
  std::string status_line;
  HeaderList headers;
  std::size_t head_length = 0;  // bytes up to and including the blank line
};

/// Parses the status line and headers of an HTTP response block.
std::optional<HttpResponse> parse_http_response(std::string_view block);

/// Media type without parameters, lowercased ("text/html; charset=x" -> "text/html").
std::string bare_media_type(std::string_view content_type);

/// True for text/html and application/xhtml media types.
bool is_html_media_type(std::string_view media_type);

/// gzip helpers (RFC 1952 single member).
std::string gzip_compress(std::string_view data);
std::string gzip_decompress(std::string_view data);

}  // namespace eventcrawl
