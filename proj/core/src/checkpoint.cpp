#include "dagda/checkpoint.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <sstream>

#include "dagda/errors.hpp"
#include "dagda/matrix_io.hpp"

namespace dagda {

namespace {

constexpr char kCheckpointMagic[4] = {'D', 'C', 'K', 'P'};
constexpr unsigned char kCheckpointVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_str(std::ostream& os, const std::string& s) {
  put_u32(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint32_t get_u32(std::istream& is, const std::string& context) {
  std::array<unsigned char, 4> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), 4)) {
    throw TruncatedPayloadError(context + ": checkpoint truncated");
  }
  return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

std::string get_str(std::istream& is, const std::string& context) {
  const std::uint32_t len = get_u32(is, context);
  if (len > (1u << 20)) throw MalformedHeaderError(context + ": implausible string length");
  std::string s(len, '\0');
  if (!is.read(s.data(), len)) {
    throw TruncatedPayloadError(context + ": checkpoint string truncated");
  }
  return s;
}

}  // namespace

void Checkpoint::set(std::string key, std::string value) {
  for (auto& [k, v] : header) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  header.emplace_back(std::move(key), std::move(value));
}

void Checkpoint::set(std::string key, double value) { set(std::move(key), format_double(value)); }

void Checkpoint::add(std::string name, Mat m) { records.emplace_back(std::move(name), std::move(m)); }

const std::string& Checkpoint::get(const std::string& key) const {
  for (const auto& [k, v] : header)
    if (k == key) return v;
  throw FormatError(kind + " checkpoint: missing header key '" + key + "'");
}

double Checkpoint::get_double(const std::string& key) const {
  const std::string& s = get(key);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(kind + " checkpoint: header '" + key + "' is not a number: " + s);
  }
  return v;
}

std::size_t Checkpoint::get_size(const std::string& key) const {
  const std::string& s = get(key);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(kind + " checkpoint: header '" + key + "' is not a count: " + s);
  }
  return v;
}

bool Checkpoint::get_bool(const std::string& key) const {
  const std::string& s = get(key);
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw ParseError(kind + " checkpoint: header '" + key + "' is not a boolean: " + s);
}

const Mat& Checkpoint::matrix(const std::string& name) const {
  for (const auto& [n, m] : records)
    if (n == name) return m;
  throw FormatError(kind + " checkpoint: missing matrix '" + name + "'");
}

bool Checkpoint::has_matrix(const std::string& name) const {
  for (const auto& [n, m] : records)
    if (n == name) return true;
  return false;
}

std::string serialize_checkpoint(const Checkpoint& ckpt) {
  std::ostringstream os(std::ios::binary);
  os.write(kCheckpointMagic, 4);
  os.put(static_cast<char>(kCheckpointVersion));
  put_str(os, ckpt.kind);
  put_u32(os, static_cast<std::uint32_t>(ckpt.header.size()));
  for (const auto& [k, v] : ckpt.header) {
    put_str(os, k);
    put_str(os, v);
  }
  put_u32(os, static_cast<std::uint32_t>(ckpt.records.size()));
  for (const auto& [name, m] : ckpt.records) {
    put_str(os, name);
    write_matrix_binary(os, m);
  }
  return os.str();
}

Checkpoint parse_checkpoint(const std::string& bytes, const std::string& context) {
  std::istringstream is(bytes, std::ios::binary);
  char magic[4];
  if (!is.read(magic, 4) || !std::equal(magic, magic + 4, kCheckpointMagic)) {
    throw MalformedHeaderError(context + ": not a checkpoint (expected DCKP magic)");
  }
  const int version = is.get();
  if (version != kCheckpointVersion) {
    throw MalformedHeaderError(context + ": unsupported checkpoint version");
  }
  Checkpoint ckpt;
  ckpt.kind = get_str(is, context);
  const std::uint32_t header_count = get_u32(is, context);
  for (std::uint32_t i = 0; i < header_count; ++i) {
    std::string k = get_str(is, context);
    std::string v = get_str(is, context);
    ckpt.header.emplace_back(std::move(k), std::move(v));
  }
  const std::uint32_t record_count = get_u32(is, context);
  for (std::uint32_t i = 0; i < record_count; ++i) {
    std::string name = get_str(is, context);
    Mat m = read_matrix_binary(is, context + ":" + name);
    ckpt.records.emplace_back(std::move(name), std::move(m));
  }
  if (is.peek() != std::char_traits<char>::eof()) {
    throw TrailingDataError(context + ": unexpected bytes after checkpoint records");
  }
  return ckpt;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  write_file(path, serialize_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::filesystem::path& path, const std::string& expected_kind) {
  Checkpoint ckpt = parse_checkpoint(read_file(path), path.string());
  if (ckpt.kind != expected_kind) {
    throw FormatError(path.string() + ": expected a " + expected_kind + " checkpoint, found '" +
                      ckpt.kind + "'");
  }
  return ckpt;
}

}  // namespace dagda
