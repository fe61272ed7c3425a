#include "eventcrawl/archive_index.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <tuple>

#include "eventcrawl/url.h"

namespace eventcrawl {
namespace {

// Index lines are space separated, so spaces (and the escape character
// itself) inside WARC paths are percent-encoded.
std::string encode_path_field(const std::string& path) {
  std::string out;
  for (const char c : path) {
    if (c == ' ') {
      out += "%20";
    } else if (c == '%') {
      out += "%25";
    } else if (c == '\n') {
      out += "%0A";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string decode_path_field(std::string_view field) {
  std::string out;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] == '%' && i + 2 < field.size()) {
      const auto hex = field.substr(i + 1, 2);
      unsigned value = 0;
      const auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + 2, value, 16);
      if (ec == std::errc{} && ptr == hex.data() + 2) {
        out.push_back(static_cast<char>(value));
        i += 2;
        continue;
      }
    }
    out.push_back(field[i]);
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (start <= line.size()) {
    const auto sp = line.find(' ', start);
    fields.push_back(line.substr(start, sp == std::string_view::npos ? line.npos : sp - start));
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  return fields;
}


}  // namespace

bool index_order_less(const SnapshotRecord& a, const SnapshotRecord& b) {
  return std::tie(a.canonical_url, a.capture_time, a.warc_file, a.offset) <
         std::tie(b.canonical_url, b.capture_time, b.warc_file, b.offset);
}

ArchiveIndex::ArchiveIndex(std::vector<SnapshotRecord> sorted_records)
    : records_(std::move(sorted_records)) {
  std::size_t first = 0;
  for (std::size_t i = 1; i <= records_.size(); ++i) {
    if (i == records_.size() || records_[i].canonical_url != records_[first].canonical_url) {
      ranges_.emplace(records_[first].canonical_url, std::pair{first, i});
      first = i;
    }
  }
  url_count_ = ranges_.size();
}

ArchiveIndex ArchiveIndex::from_records(std::vector<SnapshotRecord> records) {
  std::sort(records.begin(), records.end(), index_order_less);
  return ArchiveIndex(std::move(records));
}

ArchiveIndex ArchiveIndex::open(const std::filesystem::path& index_path) {
  std::ifstream in(index_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index " + index_path.string());
  const auto base_dir = index_path.parent_path();

  std::vector<SnapshotRecord> records;
  std::set<std::filesystem::path> checked_files;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);
    const auto fail = [&](const std::string& what) {
      return std::runtime_error(index_path.string() + ":" + std::to_string(line_no) + ": " + what);
    };
    if (fields.size() != 7) throw fail("expected 7 fields");

    SnapshotRecord r;
    r.canonical_url = std::string(fields[0]);
    const auto time = parse_archival_timestamp(fields[1]);
    if (!time) throw fail("invalid timestamp");
    r.capture_time = *time;
    std::filesystem::path warc = decode_path_field(fields[2]);
    r.warc_file = warc.is_absolute() ? warc : (base_dir / warc).lexically_normal();
    if (!parse_number(fields[3], r.offset) || !parse_number(fields[4], r.length) ||
        !parse_number(fields[5], r.http_status)) {
      throw fail("invalid numeric field");
    }
    if (r.length == 0) throw fail("zero record length");
    r.media_type = std::string(fields[6]);

    if (checked_files.insert(r.warc_file).second && !std::filesystem::exists(r.warc_file)) {
      throw fail("WARC file does not exist: " + r.warc_file.string());
    }
    records.push_back(std::move(r));
  }
  // Files written by save() are already sorted; hand-edited ones may not be.
  if (!std::is_sorted(records.begin(), records.end(), index_order_less)) {
    std::sort(records.begin(), records.end(), index_order_less);
  }
  return ArchiveIndex(std::move(records));
}

std::span<const SnapshotRecord> ArchiveIndex::snapshots_of(std::string_view canonical_url) const {
  const auto found = ranges_.find(canonical_url);
  if (found == ranges_.end()) return {};
  const auto [first, last] = found->second;
  return std::span<const SnapshotRecord>(records_).subspan(first, last - first);
}

std::vector<SnapshotRecord> ArchiveIndex::resolve_snapshots(std::string_view url) const {
  const auto canonical = try_canonicalize_url(url);
  if (!canonical) return {};
  const auto found = snapshots_of(*canonical);
  return {found.begin(), found.end()};
}

void ArchiveIndex::save(const std::filesystem::path& index_path) const {
  std::ofstream out(index_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write index " + index_path.string());
  std::error_code ec;
  const auto base_dir = std::filesystem::absolute(index_path, ec).parent_path();
  for (const auto& r : records_) {
    std::filesystem::path stored = r.warc_file;
    const auto absolute = std::filesystem::absolute(r.warc_file, ec);
    if (!ec) {
      const auto rel = absolute.lexically_normal().lexically_relative(base_dir.lexically_normal());
      if (!rel.empty()) stored = rel;
    }
    out << r.canonical_url << ' ' << format_archival_timestamp(r.capture_time) << ' '
        << encode_path_field(stored.generic_string()) << ' ' << r.offset << ' ' << r.length << ' '
        << r.http_status << ' ' << (r.media_type.empty() ? "-" : r.media_type) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for index " + index_path.string());
}

ArchiveIndex scan_warcs(std::span<const std::filesystem::path> warc_paths,
                        IndexBuildSummary* summary) {
  IndexBuildSummary local;
  IndexBuildSummary& s = summary ? *summary : local;
  std::vector<SnapshotRecord> records;

  for (const auto& path : warc_paths) {
    WarcReader reader(path);
    for (;;) {
      std::optional<WarcEntry> entry;
      try {
        entry = reader.next();
      } catch (const WarcFormatError& e) {
        ++s.skipped;
        s.problems.push_back(e.what());
        continue;
      }
      if (!entry) break;

      const WarcRecord& record = entry->record;
      if (record.type() != "response") continue;
      const auto url = try_canonicalize_url(record.target_uri());
      if (!url) continue;
      const auto http = parse_http_response(record.block);
      if (!http || http->status != 200) continue;
      const auto content_type = find_header(http->headers, "Content-Type");
      if (!content_type || !is_html_media_type(*content_type)) continue;
      const auto date = parse_iso8601(record.date());
      if (!date) {
        ++s.skipped;
        s.problems.push_back(path.string() + "@" + std::to_string(entry->offset) +
                             ": invalid WARC-Date");
        continue;
      }

      SnapshotRecord r;
      r.canonical_url = *url;
      r.capture_time = date->time;
      r.warc_file = path;
      r.offset = entry->offset;
      r.length = entry->length;
      r.http_status = http->status;
      r.media_type = bare_media_type(*content_type);
      records.push_back(std::move(r));
    }
  }

  ArchiveIndex index = ArchiveIndex::from_records(std::move(records));
  s.record_count = index.record_count();
  s.url_count = index.url_count();
  return index;
}

IndexBuildSummary build_index(std::span<const std::filesystem::path> warc_paths,
                              const std::filesystem::path& index_path) {
  IndexBuildSummary summary;
  const ArchiveIndex index = scan_warcs(warc_paths, &summary);
  index.save(index_path);
  return summary;
}

ArchivedDocument fetch_document(const SnapshotRecord& snapshot) {
  WarcEntry entry;
  try {
    entry = read_record_at(snapshot.warc_file, snapshot.offset);
  } catch (const WarcFormatError& e) {
    throw CorruptRecordError(e.what());
  }
  const auto where = snapshot.warc_file.string() + "@" + std::to_string(snapshot.offset);
  if (entry.length != snapshot.length) {
    throw CorruptRecordError(where + ": record length " + std::to_string(entry.length) +
                             " does not match indexed length " + std::to_string(snapshot.length));
  }
  if (entry.record.type() != "response") {
    throw CorruptRecordError(where + ": not a response record");
  }
  const auto http = parse_http_response(entry.record.block);
  if (!http) throw CorruptRecordError(where + ": malformed HTTP response");

  ArchivedDocument doc;
  doc.snapshot = snapshot;
  doc.target_uri = std::string(entry.record.target_uri());
  doc.http_status = http->status;
  doc.headers = http->headers;
  doc.http_head = entry.record.block.substr(0, http->head_length);
  doc.body = entry.record.block.substr(http->head_length);
  doc.warc_version = entry.record.version;
  doc.record_headers = std::move(entry.record.headers);
  return doc;
}

}  // namespace eventcrawl
