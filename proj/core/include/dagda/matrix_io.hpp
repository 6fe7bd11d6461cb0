#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "dagda/mat.hpp"

namespace dagda {

// Binary DMAT layout, all integers and floats little-endian:
//
//   offset 0   "DMAT"            magic
//   offset 4   u8                version (1)
//   offset 5   u64               rows
//   offset 13  u64               cols
//   offset 21  f64 × rows·cols   row-major values
//
// Text layout: a "rows cols" line followed by whitespace-separated decimal
// values (written with 17 significant digits, so doubles round-trip exactly).

inline constexpr char kMatrixMagic[4] = {'D', 'M', 'A', 'T'};
inline constexpr unsigned char kMatrixVersion = 1;

enum class MatrixFormat { kBinary, kText };

// ".txt" selects text; anything else is binary.
MatrixFormat format_for_path(const std::filesystem::path& path);

void write_matrix_binary(std::ostream& os, const Mat& m);
// Reads exactly one record. `context` prefixes error messages.
Mat read_matrix_binary(std::istream& is, const std::string& context);

std::string matrix_to_text(const Mat& m);
Mat matrix_from_text(std::string_view text, const std::string& context);

void save_matrix(const std::filesystem::path& path, const Mat& m);
void save_matrix(const std::filesystem::path& path, const Mat& m, MatrixFormat format);
Mat load_matrix(const std::filesystem::path& path);

// Whole-file helpers shared by the other file formats.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Shortest-round-trip-safe decimal form ("%.17g").
std::string format_double(double v);

}  // namespace dagda
