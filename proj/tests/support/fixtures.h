#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eventcrawl/archive_index.h"
#include "eventcrawl/collection_spec.h"
#include "eventcrawl/timestamp.h"

namespace eventcrawl::testing {

/// Unique scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view prefix = "eventcrawl");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

Timestamp ts(int year, unsigned month, unsigned day, unsigned hour = 0, unsigned minute = 0,
             unsigned second = 0);

/// One archived response to place in a fixture WARC.
struct FixtureCapture {
  std::string url;
  Timestamp when;
  std::string body;
  int status = 200;
  std::string content_type = "text/html; charset=utf-8";
};

/// HTTP/1.1 response head and body as stored in a WARC response block.
std::string http_block(int status, std::string_view content_type, std::string_view body);

/// Writes the captures as WARC/1.0 response records.
void write_fixture_warc(const std::filesystem::path& path, std::span<const FixtureCapture> captures,
                        bool gzip = false);

/// Writes the captures to `dir/fixture.warc[.gz]` and indexes them in memory.
ArchiveIndex index_fixture(const std::filesystem::path& dir,
                           std::span<const FixtureCapture> captures, bool gzip = false);

/// Minimal HTML page with the given text and anchors.
std::string page_html(std::string_view text, std::span<const std::string> links = {},
                      std::string_view head = {});

/// A spec with one inline reference, the default event scope and the given seeds.
CollectionSpecification fixture_spec(std::string_view reference_text,
                                     std::vector<std::string> seeds, std::uint64_t target_size);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace eventcrawl::testing
