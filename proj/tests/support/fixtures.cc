#include "fixtures.h"

#include <openssl/evp.h>

#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <unistd.h>

#include "eventcrawl/synthetic_archive.h"
#include "eventcrawl/warc.h"

namespace eventcrawl::testing {
namespace fs = std::filesystem;

TempDir::TempDir(std::string_view prefix) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          fmt::format("{}-{}-{}", prefix, ::getpid(), counter.fetch_add(1));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

Timestamp ts(int year, unsigned month, unsigned day, unsigned hour, unsigned minute,
             unsigned second) {
  const auto t = make_timestamp(year, month, day, hour, minute, second);
  if (!t) throw std::invalid_argument("bad fixture timestamp");
  return *t;
}

std::string http_block(int status, std::string_view content_type, std::string_view body) {
  const char* reason = status == 200 ? "OK" : status == 301 ? "Moved Permanently" : "Other";
  return fmt::format("HTTP/1.1 {} {}\r\nContent-Type: {}\r\nContent-Length: {}\r\n\r\n{}", status,
                     reason, content_type, body.size(), body);
}

void write_fixture_warc(const fs::path& path, std::span<const FixtureCapture> captures,
                        bool gzip) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  WarcWriter writer(out, gzip);
  int id = 0;
  for (const auto& c : captures) {
    writer.write("WARC/1.0",
                 {{"WARC-Type", "response"},
                  {"WARC-Record-ID", fmt::format("<urn:uuid:fixture-{:08d}>", id++)},
                  {"WARC-Date", format_iso8601(c.when)},
                  {"WARC-Target-URI", c.url},
                  {"Content-Type", "application/http; msgtype=response"}},
                 http_block(c.status, c.content_type, c.body));
  }
}

ArchiveIndex index_fixture(const fs::path& dir, std::span<const FixtureCapture> captures,
                           bool gzip) {
  const fs::path warc = dir / (gzip ? "fixture.warc.gz" : "fixture.warc");
  write_fixture_warc(warc, captures, gzip);
  const std::vector<fs::path> paths{warc};
  return scan_warcs(paths);
}

std::string page_html(std::string_view text, std::span<const std::string> links,
                      std::string_view head) {
  std::string html = fmt::format("<html><head>{}</head><body><p>{}</p>", head, text);
  for (const auto& link : links) html += fmt::format("<a href=\"{}\">link</a>", link);
  html += "</body></html>";
  return html;
}

CollectionSpecification fixture_spec(std::string_view reference_text,
                                     std::vector<std::string> seeds, std::uint64_t target_size) {
  CollectionSpecification spec;
  spec.name = "fixture";
  spec.topical.reference_documents = {{ReferenceKind::inline_text, std::string(reference_text)}};
  spec.temporal = default_event_scope();
  spec.seeds = std::move(seeds);
  spec.target_size = target_size;
  return spec;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

}  // namespace eventcrawl::testing
