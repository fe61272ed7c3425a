#include <unordered_set>

#include "eventcrawl/archive_index.h"
#include "eventcrawl/csv.h"

namespace eventcrawl {

CollectionWriter::CollectionWriter(const std::filesystem::path& out_dir)
    : out_dir_(out_dir), writer_(warc_) {
  std::filesystem::create_directories(out_dir_);
  warc_.open(out_dir_ / "collection.warc", std::ios::binary | std::ios::trunc);
  if (!warc_) throw std::runtime_error("cannot create " + (out_dir_ / "collection.warc").string());
}

CollectionWriter::~CollectionWriter() = default;

void CollectionWriter::add(const CollectionEntry& entry) {
  if (finished_) throw std::logic_error("CollectionWriter::add after finish");
  const ArchivedDocument& doc = entry.document;
  // Records are copied verbatim: original WARC headers (including WARC-Date,
  // i.e. the capture time) and the original block.
  HeaderList headers = doc.record_headers;
  if (headers.empty()) {
    headers = {{"WARC-Type", "response"},
               {"WARC-Target-URI", doc.target_uri.empty() ? doc.snapshot.canonical_url : doc.target_uri},
               {"WARC-Date", format_iso8601(doc.snapshot.capture_time)},
               {"Content-Type", "application/http; msgtype=response"}};
  }
  writer_.write(doc.warc_version, headers, doc.block());
  rows_.push_back({doc.snapshot.canonical_url, doc.snapshot.capture_time, entry.relevance,
                   entry.outlinks});
}

CollectionManifest CollectionWriter::finish() {
  if (finished_) throw std::logic_error("CollectionWriter::finish called twice");
  finished_ = true;
  warc_.close();
  if (!warc_) throw std::runtime_error("failed to write collection WARC");

  CollectionManifest manifest;
  manifest.warc_path = out_dir_ / "collection.warc";
  manifest.manifest_path = out_dir_ / "manifest.csv";
  manifest.edges_path = out_dir_ / "edges.csv";
  manifest.document_count = rows_.size();

  std::unordered_set<std::string> members;
  for (const auto& row : rows_) members.insert(row.url);

  std::ofstream manifest_out(manifest.manifest_path, std::ios::binary | std::ios::trunc);
  std::ofstream edges_out(manifest.edges_path, std::ios::binary | std::ios::trunc);
  if (!manifest_out || !edges_out) throw std::runtime_error("cannot create manifest files");
  write_csv_row(manifest_out, {"url", "capture_time", "relevance", "out_degree"});
  write_csv_row(edges_out, {"src_url", "dst_url"});
  for (const auto& row : rows_) {
    std::size_t out_degree = 0;
    for (const auto& link : row.outlinks) {
      if (!members.contains(link)) continue;
      write_csv_row(edges_out, {row.url, link});
      ++out_degree;
    }
    manifest.edge_count += out_degree;
    write_csv_row(manifest_out, {row.url, format_archival_timestamp(row.capture_time),
                                 format_real(row.relevance), std::to_string(out_degree)});
  }
  if (!manifest_out || !edges_out) throw std::runtime_error("failed to write manifest files");
  return manifest;
}

CollectionManifest write_collection(std::span<const CollectionEntry> documents,
                                    const std::filesystem::path& out_dir) {
  CollectionWriter writer(out_dir);
  for (const auto& entry : documents) writer.add(entry);
  return writer.finish();
}

}  // namespace eventcrawl
