#include "dagda/matrix_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "dagda/errors.hpp"

namespace dagda {

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(bytes.data(), bytes.size());
}

bool get_u64(std::istream& is, std::uint64_t& v) {
  std::array<unsigned char, 8> bytes{};
  if (!is.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return true;
}

// False when rows·cols, or its size in bytes, does not fit in 64 bits.
bool checked_entries(std::uint64_t rows, std::uint64_t cols, std::uint64_t& entries) {
  if (rows != 0 && cols > std::numeric_limits<std::uint64_t>::max() / rows) return false;
  entries = rows * cols;
  if (entries > std::numeric_limits<std::uint64_t>::max() / 8) return false;
  if (entries > std::numeric_limits<std::size_t>::max() / 8) return false;
  return true;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}
  bool next(std::string_view& tok) {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    if (pos_ >= text_.size()) return false;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    tok = text_.substr(start, pos_ - start);
    return true;
  }
  // Consumes the remainder of the current line.
  std::string_view line() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    std::string_view out = text_.substr(start, pos_ - start);
    if (pos_ < text_.size()) ++pos_;
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool parse_u64(std::string_view tok, std::uint64_t& v) {
  if (tok.empty() || tok.front() == '-' || tok.front() == '+') return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

MatrixFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".txt" ? MatrixFormat::kText : MatrixFormat::kBinary;
}

void write_matrix_binary(std::ostream& os, const Mat& m) {
  os.write(kMatrixMagic, 4);
  os.put(static_cast<char>(kMatrixVersion));
  put_u64(os, m.rows());
  put_u64(os, m.cols());
  for (double v : m.values()) put_u64(os, std::bit_cast<std::uint64_t>(v));
}

Mat read_matrix_binary(std::istream& is, const std::string& context) {
  char magic[4];
  if (!is.read(magic, 4)) throw MalformedHeaderError(context + ": missing DMAT header");
  if (!std::equal(magic, magic + 4, kMatrixMagic)) {
    throw MalformedHeaderError(context + ": bad magic bytes (expected DMAT)");
  }
  const int version = is.get();
  if (version == std::char_traits<char>::eof()) {
    throw MalformedHeaderError(context + ": missing version byte");
  }
  if (version != kMatrixVersion) {
    throw MalformedHeaderError(context + ": unsupported DMAT version " + std::to_string(version));
  }
  std::uint64_t rows = 0, cols = 0;
  if (!get_u64(is, rows) || !get_u64(is, cols)) {
    throw MalformedHeaderError(context + ": header truncated before dimensions");
  }
  std::uint64_t entries = 0;
  if (!checked_entries(rows, cols, entries)) {
    throw DimensionOverflowError(context + ": dimensions " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + " overflow");
  }
  // Check the remaining length up front so a bogus header cannot trigger a
  // huge allocation.
  const auto here = is.tellg();
  if (here != std::streampos(-1)) {
    is.seekg(0, std::ios::end);
    const auto end = is.tellg();
    is.seekg(here);
    const auto remaining = static_cast<std::uint64_t>(end - here);
    if (remaining < entries * 8) {
      throw TruncatedPayloadError(context + ": payload has " + std::to_string(remaining) +
                                  " bytes, header promises " + std::to_string(entries * 8));
    }
  }
  std::vector<double> data(static_cast<std::size_t>(entries));
  for (double& v : data) {
    std::uint64_t bits = 0;
    if (!get_u64(is, bits)) throw TruncatedPayloadError(context + ": payload truncated");
    v = std::bit_cast<double>(bits);
  }
  Mat m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(data));
  if (!m.all_finite()) throw ParseError(context + ": matrix contains non-finite values");
  return m;
}

std::string matrix_to_text(const Mat& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Mat matrix_from_text(std::string_view text, const std::string& context) {
  Tokenizer tok(text);
  std::string_view header = tok.line();
  Tokenizer htok(header);
  std::string_view rs, cs, extra;
  std::uint64_t rows = 0, cols = 0;
  if (!htok.next(rs) || !htok.next(cs) || htok.next(extra) || !parse_u64(rs, rows) ||
      !parse_u64(cs, cols)) {
    throw MalformedHeaderError(context + ": first line must be \"rows cols\"");
  }
  std::uint64_t entries = 0;
  if (!checked_entries(rows, cols, entries)) {
    throw DimensionOverflowError(context + ": dimensions " + std::string(rs) + "x" +
                                 std::string(cs) + " overflow");
  }
  std::vector<double> data;
  std::string_view t;
  while (tok.next(t)) {
    if (data.size() == entries) {
      throw TrailingDataError(context + ": more than " + std::to_string(entries) + " values");
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
      throw ParseError(context + ": cannot parse value '" + std::string(t) + "'");
    }
    data.push_back(v);
  }
  if (data.size() != entries) {
    throw TruncatedPayloadError(context + ": expected " + std::to_string(entries) +
                                " values, found " + std::to_string(data.size()));
  }
  return Mat(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(data));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFileError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

void save_matrix(const std::filesystem::path& path, const Mat& m) {
  save_matrix(path, m, format_for_path(path));
}

void save_matrix(const std::filesystem::path& path, const Mat& m, MatrixFormat format) {
  if (format == MatrixFormat::kText) {
    write_file(path, matrix_to_text(m));
    return;
  }
  std::ostringstream os(std::ios::binary);
  write_matrix_binary(os, m);
  write_file(path, os.str());
}

Mat load_matrix(const std::filesystem::path& path) {
  const std::string contents = read_file(path);
  const std::string context = path.string();
  if (format_for_path(path) == MatrixFormat::kText) return matrix_from_text(contents, context);
  std::istringstream is(contents, std::ios::binary);
  Mat m = read_matrix_binary(is, context);
  if (is.peek() != std::char_traits<char>::eof()) {
    throw TrailingDataError(context + ": unexpected bytes after matrix payload");
  }
  return m;
}

}  // namespace dagda
