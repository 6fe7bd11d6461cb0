#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "dagda/mat.hpp"

namespace dagda {

// Model checkpoint container, little-endian:
//
//   "DCKP"  u8 version(1)
//   u32 len, kind bytes
//   u32 count, then count × (u32 len, key bytes, u32 len, value bytes)
//   u32 count, then count × (u32 len, name bytes, DMAT record)
//
// Header values are text; numbers are written with 17 significant digits.
struct Checkpoint {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::pair<std::string, Mat>> records;

  void set(std::string key, std::string value);
  void set(std::string key, double value);
  void add(std::string name, Mat m);

  // Throws FormatError when missing.
  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::size_t get_size(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  const Mat& matrix(const std::string& name) const;
  bool has_matrix(const std::string& name) const;
};

std::string serialize_checkpoint(const Checkpoint& ckpt);
Checkpoint parse_checkpoint(const std::string& bytes, const std::string& context);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
// Throws FormatError when the stored kind differs from `expected_kind`.
Checkpoint load_checkpoint(const std::filesystem::path& path, const std::string& expected_kind);

}  // namespace dagda
