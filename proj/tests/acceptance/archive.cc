#include <map>
#include <sstream>

#include <fmt/format.h>

#include "acceptance.h"
#include "cli.h"
#include "eventcrawl/archive_index.h"
#include "eventcrawl/synthetic_archive.h"
#include "fixtures.h"

namespace eventcrawl::acceptance {
namespace {

namespace fs = std::filesystem;

Verdict archive_round_trip() {
  testing::TempDir dir("eventcrawl-ac8");
  SyntheticArchiveConfig config;
  config.page_count = 1500;
  config.multi_capture_fraction = 0.3;
  config.omit_fraction = 0.02;
  config.warc_files = 3;
  config.random_seed = 8;
  const SyntheticArchive archive = generate_archive(config, dir.path());

  std::map<std::string, std::string> original_hash;
  std::size_t expected_records = 0;
  for (const auto& p : archive.pages) {
    original_hash[p.url] = testing::sha256_hex(p.html);
    expected_records += p.captures.size();
  }
  const auto summary = build_index(archive.warc_paths, dir / "index.cdx");
  const ArchiveIndex index = ArchiveIndex::open(dir / "index.cdx");
  if (index.record_count() != expected_records || summary.skipped != 0) {
    return {false, fmt::format("indexed {} records, generator wrote {} ({} skipped)",
                               index.record_count(), expected_records, summary.skipped)};
  }
  std::size_t matched = 0;
  std::vector<CollectionEntry> entries;
  for (const auto& record : index.records()) {
    ArchivedDocument doc = fetch_document(record);
    if (testing::sha256_hex(doc.body) != original_hash.at(record.canonical_url)) {
      return {false, fmt::format("payload hash differs for {}", record.canonical_url)};
    }
    ++matched;
    entries.push_back({std::move(doc), 0.0, {}});
  }
  const auto manifest = write_collection(entries, dir / "collection");
  const ArchiveIndex reindexed = scan_warcs(std::vector<fs::path>{manifest.warc_path});
  if (reindexed.record_count() != index.record_count()) {
    return {false, fmt::format("collection re-indexes to {} records, expected {}",
                               reindexed.record_count(), index.record_count())};
  }
  for (const auto& record : reindexed.records()) {
    if (testing::sha256_hex(fetch_document(record).body) != original_hash.at(record.canonical_url)) {
      return {false, "collection payload hash differs for " + record.canonical_url};
    }
  }
  return {true, fmt::format("{}/{} payload hashes equal; collection re-indexes to {} records",
                            matched, expected_records, reindexed.record_count())};
}

int cli(std::vector<std::string> args, std::string& err) {
  std::ostringstream out, errors;
  const int code = cli::run_cli(args, out, errors);
  err = errors.str();
  return code;
}

Verdict eval_determinism() {
  testing::TempDir dir("eventcrawl-ac10");
  const std::string root = dir.path().string();
  std::string err;
  if (cli({"gen", "--out", root + "/archive", "--pages", "3000", "--budget", "1000", "--seed",
           "10", "--omit-fraction", "0.02"},
          err) != 0 ||
      cli({"index", "--warc-dir", root + "/archive/warcs", "--index", root + "/index.cdx"}, err) !=
          0) {
    return {false, "setup failed: " + err};
  }
  for (const char* run : {"run1", "run2"}) {
    if (cli({"eval", "--spec", root + "/archive/spec.json", "--index", root + "/index.cdx",
             "--idf", root + "/archive/idf.tsv", "--out", root + "/" + run, "--checkpoint", "100"},
            err) != 0) {
      return {false, std::string(run) + " failed: " + err};
    }
  }
  std::size_t bytes = 0;
  for (const char* name : {"series.csv", "summary.csv"}) {
    const std::string a = testing::read_file(dir / "run1" / name);
    const std::string b = testing::read_file(dir / "run2" / name);
    if (a != b) return {false, fmt::format("{} differs between runs", name)};
    bytes += a.size();
  }
  return {true, fmt::format("series.csv and summary.csv byte-identical ({} bytes)", bytes)};
}

}  // namespace

std::vector<Criterion> archive_criteria() {
  using std::chrono::seconds;
  return {{"AC8", "archive round trip", seconds(30), archive_round_trip},
          {"AC10", "eval output is deterministic", seconds(300), eval_determinism}};
}

}  // namespace eventcrawl::acceptance
