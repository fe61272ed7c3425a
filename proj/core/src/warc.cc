#include "eventcrawl/warc.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <sstream>

#include <zlib.h>

namespace eventcrawl {
namespace {

constexpr std::size_t kMaxHeaderBytes = 1 << 20;
constexpr std::size_t kChunk = 1 << 16;

bool iequals(std::string_view a, std::string_view b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
    return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
  });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Reads one '\n'-terminated line. Returns false at EOF before any byte.
bool read_line(std::istream& in, std::string& line, std::uint64_t& consumed) {
  line.clear();
  char c;
  bool any = false;
  while (in.get(c)) {
    any = true;
    ++consumed;
    if (c == '\n') break;
    line.push_back(c);
    if (line.size() > kMaxHeaderBytes) return false;
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return any;
}

void append_header_line(HeaderList& headers, std::string_view line) {
  if (!headers.empty() && (line.front() == ' ' || line.front() == '\t')) {
    headers.back().value += " ";
    headers.back().value += trim(line);
    return;
  }
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) return;
  headers.push_back({std::string(trim(line.substr(0, colon))), std::string(trim(line.substr(colon + 1)))});
}

// Parses one uncompressed record from `in`. `remaining` bounds the bytes that
// may be consumed. Throws std::runtime_error describing the problem.
WarcRecord parse_record(std::istream& in, std::uint64_t remaining, std::uint64_t& consumed) {
  WarcRecord record;
  std::string line;
  if (!read_line(in, line, consumed)) throw std::runtime_error("unexpected end of file");
  if (!line.starts_with("WARC/")) throw std::runtime_error("missing WARC version line");
  record.version = line;

  std::size_t header_bytes = 0;
  for (;;) {
    if (!read_line(in, line, consumed)) throw std::runtime_error("truncated record header");
    if (line.empty()) break;
    header_bytes += line.size();
    if (header_bytes > kMaxHeaderBytes) throw std::runtime_error("record header too large");
    append_header_line(record.headers, line);
  }

  const auto length_text = find_header(record.headers, "Content-Length");
  if (!length_text) throw std::runtime_error("missing Content-Length");
  std::uint64_t length = 0;
  const auto [ptr, ec] =
      std::from_chars(length_text->data(), length_text->data() + length_text->size(), length);
  if (ec != std::errc{} || ptr != length_text->data() + length_text->size()) {
    throw std::runtime_error("invalid Content-Length");
  }
  if (consumed + length > remaining) throw std::runtime_error("truncated record block");
  record.block.resize(length);
  in.read(record.block.data(), static_cast<std::streamsize>(length));
  if (static_cast<std::uint64_t>(in.gcount()) != length) {
    throw std::runtime_error("truncated record block");
  }
  consumed += length;

  // Record terminator: CRLF CRLF. Tolerate bare LFs and a missing terminator
  // at end of input.
  int newlines = 0;
  for (int i = 0; i < 4 && consumed < remaining; ++i) {
    const int c = in.peek();
    if (c != '\r' && c != '\n') break;
    in.get();
    ++consumed;
    if (c == '\n' && ++newlines == 2) break;
  }
  return record;
}

struct Inflated {
  std::string data;
  std::uint64_t compressed_length = 0;
};

// Inflates a single gzip member read from the current stream position.
Inflated inflate_member(std::istream& in, std::uint64_t remaining) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) throw std::runtime_error("zlib init failed");
  Inflated result;
  std::array<char, kChunk> input{};
  std::array<char, kChunk> output{};
  std::uint64_t fed = 0;
  int status = Z_OK;
  while (status != Z_STREAM_END) {
    if (zs.avail_in == 0) {
      const auto want = static_cast<std::streamsize>(std::min<std::uint64_t>(kChunk, remaining - fed));
      if (want == 0) break;
      in.read(input.data(), want);
      const auto got = in.gcount();
      if (got <= 0) break;
      fed += static_cast<std::uint64_t>(got);
      zs.next_in = reinterpret_cast<Bytef*>(input.data());
      zs.avail_in = static_cast<uInt>(got);
    }
    zs.next_out = reinterpret_cast<Bytef*>(output.data());
    zs.avail_out = static_cast<uInt>(output.size());
    status = inflate(&zs, Z_NO_FLUSH);
    if (status != Z_OK && status != Z_STREAM_END) {
      inflateEnd(&zs);
      throw std::runtime_error("corrupt gzip member");
    }
    result.data.append(output.data(), output.size() - zs.avail_out);
  }
  result.compressed_length = zs.total_in;
  inflateEnd(&zs);
  if (status != Z_STREAM_END) throw std::runtime_error("truncated gzip member");
  return result;
}

WarcEntry read_one(std::ifstream& in, const std::filesystem::path& path, std::uint64_t offset,
                   std::uint64_t file_size) {
  in.clear();
  in.seekg(static_cast<std::streamoff>(offset));
  if (!in) throw WarcFormatError(path.string(), offset, "offset beyond end of file");
  WarcEntry entry;
  entry.offset = offset;
  try {
    std::array<char, 2> magic{};
    in.read(magic.data(), 2);
    const bool gzipped = in.gcount() == 2 && static_cast<unsigned char>(magic[0]) == 0x1f &&
                         static_cast<unsigned char>(magic[1]) == 0x8b;
    in.clear();
    in.seekg(static_cast<std::streamoff>(offset));
    if (gzipped) {
      Inflated member = inflate_member(in, file_size - offset);
      std::istringstream inner(std::move(member.data));
      std::uint64_t consumed = 0;
      const auto inner_size = static_cast<std::uint64_t>(inner.str().size());
      entry.record = parse_record(inner, inner_size, consumed);
      entry.length = member.compressed_length;
      entry.compressed = true;
    } else {
      std::uint64_t consumed = 0;
      entry.record = parse_record(in, file_size - offset, consumed);
      entry.length = consumed;
    }
  } catch (const WarcFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw WarcFormatError(path.string(), offset, e.what());
  }
  return entry;
}

std::uint64_t file_size_of(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw std::runtime_error("cannot stat " + path.string() + ": " + ec.message());
  return size;
}

}  // namespace

std::optional<std::string_view> find_header(const HeaderList& headers, std::string_view name) {
  for (const auto& h : headers) {
    if (iequals(h.name, name)) return std::string_view(h.value);
  }
  return std::nullopt;
}

WarcFormatError::WarcFormatError(std::string file, std::uint64_t offset, const std::string& what)
    : std::runtime_error(file + "@" + std::to_string(offset) + ": " + what),
      file_(std::move(file)),
      offset_(offset) {}

std::string_view WarcRecord::type() const {
  return find_header(headers, "WARC-Type").value_or(std::string_view{});
}

std::string_view WarcRecord::target_uri() const {
  auto uri = find_header(headers, "WARC-Target-URI").value_or(std::string_view{});
  // WARC 1.0 examples wrap the URI in angle brackets.
  if (uri.size() >= 2 && uri.front() == '<' && uri.back() == '>') uri = uri.substr(1, uri.size() - 2);
  return uri;
}

std::string_view WarcRecord::date() const {
  return find_header(headers, "WARC-Date").value_or(std::string_view{});
}

WarcReader::WarcReader(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary), file_size_(0) {
  if (!in_) throw std::runtime_error("cannot open " + path.string());
  file_size_ = file_size_of(path);
}

std::optional<WarcEntry> WarcReader::next() {
  // Skip inter-record whitespace.
  in_.clear();
  in_.seekg(static_cast<std::streamoff>(position_));
  while (position_ < file_size_) {
    const int c = in_.peek();
    if (c != '\r' && c != '\n' && c != ' ' && c != '\t') break;
    in_.get();
    ++position_;
  }
  if (position_ >= file_size_) return std::nullopt;
  const std::uint64_t start = position_;
  try {
    WarcEntry entry = read_one(in_, path_, start, file_size_);
    position_ = start + entry.length;
    return entry;
  } catch (const WarcFormatError&) {
    resync_after(start);
    throw;
  }
}

void WarcReader::resync_after(std::uint64_t offset) {
  static constexpr std::string_view kWarcMarker = "\nWARC/";
  static constexpr std::string_view kGzipMarker = "\x1f\x8b\x08";
  std::uint64_t pos = offset + 1;
  std::string window;
  in_.clear();
  in_.seekg(static_cast<std::streamoff>(pos));
  std::array<char, kChunk> buffer{};
  while (pos < file_size_) {
    in_.read(buffer.data(), buffer.size());
    const auto got = in_.gcount();
    if (got <= 0) break;
    // Keep a small overlap so markers spanning chunk borders are found.
    const std::uint64_t window_start = pos - window.size();
    window.append(buffer.data(), static_cast<std::size_t>(got));
    const auto warc_at = window.find(kWarcMarker);
    const auto gzip_at = window.find(kGzipMarker);
    std::uint64_t found = file_size_;
    if (warc_at != std::string::npos) found = window_start + warc_at + 1;
    if (gzip_at != std::string::npos) found = std::min(found, window_start + gzip_at);
    if (found < file_size_ && found > offset) {
      position_ = found;
      return;
    }
    pos += static_cast<std::uint64_t>(got);
    window.erase(0, window.size() > 8 ? window.size() - 8 : 0);
  }
  position_ = file_size_;
}

WarcEntry read_record_at(const std::filesystem::path& path, std::uint64_t offset) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WarcFormatError(path.string(), offset, "cannot open file");
  const auto size = file_size_of(path);
  if (offset >= size) throw WarcFormatError(path.string(), offset, "offset beyond end of file");
  return read_one(in, path, offset, size);
}

WarcWriter::WarcWriter(std::ostream& out, bool compress) : out_(out), compress_(compress) {}

RecordExtent WarcWriter::write(std::string_view version, const HeaderList& headers,
                               std::string_view block) {
  std::string data;
  data.reserve(block.size() + 512);
  data.append(version);
  data.append("\r\n");
  for (const auto& h : headers) {
    data.append(h.name).append(": ").append(h.value).append("\r\n");
  }
  if (!find_header(headers, "Content-Length")) {
    data.append("Content-Length: ").append(std::to_string(block.size())).append("\r\n");
  }
  data.append("\r\n");
  data.append(block);
  data.append("\r\n\r\n");
  if (compress_) data = gzip_compress(data);

  out_.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out_) throw std::runtime_error("WARC write failed");
  const RecordExtent extent{position_, data.size()};
  position_ += data.size();
  return extent;
}

std::optional<HttpResponse> parse_http_response(std::string_view block) {
  HttpResponse response;
  auto line_end = block.find('\n');
  if (line_end == std::string_view::npos) return std::nullopt;
  std::string_view status_line = block.substr(0, line_end);
  if (status_line.ends_with('\r')) status_line.remove_suffix(1);
  if (!status_line.starts_with("HTTP/")) return std::nullopt;
  const auto sp = status_line.find(' ');
  if (sp == std::string_view::npos || sp + 4 > status_line.size()) return std::nullopt;
  const auto code = status_line.substr(sp + 1, 3);
  const auto [ptr, ec] = std::from_chars(code.data(), code.data() + code.size(), response.status);
  if (ec != std::errc{} || ptr != code.data() + 3) return std::nullopt;
  response.status_line = std::string(status_line);

  std::size_t pos = line_end + 1;
  for (;;) {
    if (pos >= block.size()) {
      // Head without a terminating blank line: treat the whole block as head.
      response.head_length = block.size();
      return response;
    }
    line_end = block.find('\n', pos);
    std::string_view line =
        block.substr(pos, line_end == std::string_view::npos ? block.npos : line_end - pos);
    pos = line_end == std::string_view::npos ? block.size() : line_end + 1;
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (line.empty()) break;
    append_header_line(response.headers, line);
  }
  response.head_length = pos;
  return response;
}

std::string bare_media_type(std::string_view content_type) {
  const auto semi = content_type.find(';');
  const auto bare = trim(content_type.substr(0, semi));
  std::string out;
  out.reserve(bare.size());
  for (const char c : bare) {
    if (c == ' ' || c == '\t') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

bool is_html_media_type(std::string_view media_type) {
  const std::string lowered = bare_media_type(media_type);
  return lowered.find("text/html") != std::string::npos ||
         lowered.find("application/xhtml") != std::string::npos;
}

std::string gzip_compress(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("zlib init failed");
  }
  std::string out;
  out.resize(deflateBound(&zs, static_cast<uLong>(data.size())) + 32);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int status = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (status != Z_STREAM_END) throw std::runtime_error("gzip compression failed");
  out.resize(zs.total_out);
  return out;
}

std::string gzip_decompress(std::string_view data) {
  std::istringstream in{std::string(data)};
  return inflate_member(in, data.size()).data;
}

}  // namespace eventcrawl
