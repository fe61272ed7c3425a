#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eventcrawl/timestamp.h"
#include "eventcrawl/warc.h"

namespace eventcrawl {

/// One archived capture of a URL and where to find it.
struct SnapshotRecord {
  std::string canonical_url;
  Timestamp capture_time;
  std::filesystem::path warc_file;
  std::uint64_t offset = 0;
  std::uint64_t length = 0;
  int http_status = 0;
  std::string media_type;

  friend bool operator==(const SnapshotRecord&, const SnapshotRecord&) = default;
};

/// Index ordering: (canonical_url, capture_time, warc_file, offset).
bool index_order_less(const SnapshotRecord& a, const SnapshotRecord& b);

/// A fetched capture: the WARC record headers, the HTTP head and the payload.
struct ArchivedDocument {
  SnapshotRecord snapshot;
  std::string target_uri;
  std::string warc_version = "WARC/1.0";
  HeaderList record_headers;
  int http_status = 0;
  HeaderList headers;   // HTTP response headers
  std::string http_head;  // raw status line and headers, including the blank line
  std::string body;

  /// The original WARC block (HTTP head followed by payload).
  std::string block() const { return http_head + body; }
};

class CorruptRecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IndexBuildSummary {
  std::size_t url_count = 0;
  std::size_t record_count = 0;
  std::size_t skipped = 0;           // malformed records
  std::vector<std::string> problems;  // one message per skipped record, with file and offset
};

/// Sorted URL -> snapshot lookup table.
///
/// Records are kept in index order; a hash from URL to its record range
/// makes lookups independent of archive size. Immutable once constructed, so
/// concurrent readers are safe.
class ArchiveIndex {
 public:
  ArchiveIndex() = default;

  /// Loads an index file written by build_index. WARC paths in the file are
  /// resolved relative to the index file's directory. Throws
  /// std::runtime_error for unreadable or malformed index files and for
  /// entries whose WARC file does not exist.
  static ArchiveIndex open(const std::filesystem::path& index_path);

  /// Builds an in-memory index from arbitrary records (sorted on the way in).
  static ArchiveIndex from_records(std::vector<SnapshotRecord> records);

  /// All snapshots of `url` (canonicalized first) in ascending capture time.
  /// Empty if the URL is absent or cannot be canonicalized.
  std::vector<SnapshotRecord> resolve_snapshots(std::string_view url) const;

  /// Zero-copy lookup for an already canonical URL.
  std::span<const SnapshotRecord> snapshots_of(std::string_view canonical_url) const;

  std::span<const SnapshotRecord> records() const { return records_; }
  std::size_t record_count() const { return records_.size(); }
  std::size_t url_count() const { return url_count_; }

  /// Writes the plain-text index format. WARC paths are written relative to
  /// the index file's directory when possible.
  void save(const std::filesystem::path& index_path) const;

 private:
  explicit ArchiveIndex(std::vector<SnapshotRecord> sorted_records);

  struct UrlHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view url) const noexcept {
      return std::hash<std::string_view>{}(url);
    }
  };

  std::vector<SnapshotRecord> records_;
  // URL -> [first, last) positions in records_.
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>, UrlHash, std::equal_to<>>
      ranges_;
  std::size_t url_count_ = 0;
};

/// Scans WARC files and writes an index of HTTP 200 HTML responses over
/// http/https URLs. Malformed records are skipped and tallied. Throws
/// std::runtime_error if a file cannot be read at all.
IndexBuildSummary build_index(std::span<const std::filesystem::path> warc_paths,
                              const std::filesystem::path& index_path);

/// Same scan as build_index, returning the index without writing a file.
ArchiveIndex scan_warcs(std::span<const std::filesystem::path> warc_paths,
                        IndexBuildSummary* summary = nullptr);

/// Reads the record behind `snapshot`. Throws CorruptRecordError (message
/// includes file and offset) when the bytes at the location are not the
/// expected record.
ArchivedDocument fetch_document(const SnapshotRecord& snapshot);

/// One document handed to a CollectionWriter.
struct CollectionEntry {
  ArchivedDocument document;
  double relevance = 0.0;
  std::vector<std::string> outlinks;  // canonical URLs, in page order
};

struct CollectionManifest {
  std::filesystem::path warc_path;
  std::filesystem::path manifest_path;
  std::filesystem::path edges_path;
  std::size_t document_count = 0;
  std::size_t edge_count = 0;
};

/// Streams chosen snapshots into `collection.warc` under `out_dir` and, on
/// finish(), writes `manifest.csv` (url,capture_time,relevance,out_degree)
/// and `edges.csv` (src_url,dst_url) restricted to links whose target is
/// itself in the collection.
class CollectionWriter {
 public:
  explicit CollectionWriter(const std::filesystem::path& out_dir);
  ~CollectionWriter();
  CollectionWriter(const CollectionWriter&) = delete;
  CollectionWriter& operator=(const CollectionWriter&) = delete;

  void add(const CollectionEntry& entry);
  CollectionManifest finish();

 private:
  struct Row {
    std::string url;
    Timestamp capture_time;
    double relevance;
    std::vector<std::string> outlinks;
  };

  std::filesystem::path out_dir_;
  std::ofstream warc_;
  WarcWriter writer_;
  std::vector<Row> rows_;
  bool finished_ = false;
};

CollectionManifest write_collection(std::span<const CollectionEntry> documents,
                                    const std::filesystem::path& out_dir);

}  // namespace eventcrawl
