#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <sstream>

#include "dagda/errors.hpp"
#include "dagda/matrix_io.hpp"
#include "support.hpp"

using namespace dagda;
namespace fs = std::filesystem;

namespace {

std::string binary_of(const Mat& m) {
  std::ostringstream os;
  write_matrix_binary(os, m);
  return os.str();
}

Mat from_binary(const std::string& bytes) {
  std::istringstream is(bytes);
  return read_matrix_binary(is, "test");
}

fs::path temp_dir() {
  const fs::path p = fs::temp_directory_path() / "dagda_matrix_io";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(MatrixBinary, ExactBytesForOneByOne) {
  const std::string b = binary_of(Mat{{1.0}});
  ASSERT_EQ(b.size(), 29u);
  const unsigned char expected[] = {'D', 'M', 'A', 'T', 1,                    //
                                    1,   0,   0,   0,   0, 0, 0, 0,           // rows
                                    1,   0,   0,   0,   0, 0, 0, 0,           // cols
                                    0,   0,   0,   0,   0, 0, 0xF0, 0x3F};    // 1.0
  EXPECT_EQ(std::memcmp(b.data(), expected, sizeof expected), 0);
}

TEST(MatrixBinary, RoundTrips) {
  EXPECT_EQ(from_binary(binary_of(Mat{{0.0}})), (Mat{{0.0}}));
  dagda::Rng rng(1);
  const Mat m = fixtures::random_mat(rng, 13, 7, -1e6, 1e6);
  const Mat back = from_binary(binary_of(m));
  ASSERT_EQ(back.rows(), 13u);
  EXPECT_EQ(std::memcmp(back.data().data(), m.data().data(), m.size() * sizeof(double)), 0);
  EXPECT_EQ(from_binary(binary_of(Mat(0, 5))).cols(), 5u);
}

TEST(MatrixBinary, MalformedInputs) {
  std::string good = binary_of(Mat{{1, 2}, {3, 4}});
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(from_binary(bad_magic), MalformedHeaderError);
  std::string bad_version = good;
  bad_version[4] = 7;
  EXPECT_THROW(from_binary(bad_version), MalformedHeaderError);
  EXPECT_THROW(from_binary(good.substr(0, 10)), MalformedHeaderError);
  EXPECT_THROW(from_binary(good.substr(0, good.size() - 3)), TruncatedPayloadError);
  std::string huge = good;
  for (int i = 5; i < 21; ++i) huge[i] = static_cast<char>(0xFF);
  EXPECT_THROW(from_binary(huge), DimensionOverflowError);
  std::string nan = binary_of(Mat{{std::nan("")}});
  EXPECT_THROW(from_binary(nan), ParseError);
}

TEST(MatrixText, Layout) {
  EXPECT_EQ(matrix_to_text(Mat{{1, 0.5}, {-2, 0.1}}), "2 2\n1 0.5\n-2 0.10000000000000001\n");
}

TEST(MatrixText, RoundTripsWithinTolerance) {
  dagda::Rng rng(2);
  const Mat m = fixtures::random_mat(rng, 9, 4, -1e3, 1e3);
  const Mat back = matrix_from_text(matrix_to_text(m), "t");
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_LE(std::abs(back.values()[i] - m.values()[i]), 1e-15 * std::abs(m.values()[i]));
  }
}

TEST(MatrixText, MalformedInputs) {
  EXPECT_THROW(matrix_from_text("2 2\n1 2 3\n", "t"), TruncatedPayloadError);
  EXPECT_THROW(matrix_from_text("1 2\n1 2 3\n", "t"), TrailingDataError);
  EXPECT_THROW(matrix_from_text("two 2\n", "t"), MalformedHeaderError);
  EXPECT_THROW(matrix_from_text("1 2\n1 x\n", "t"), ParseError);
  EXPECT_THROW(matrix_from_text("99999999999 99999999999\n", "t"), DimensionOverflowError);
}

TEST(MatrixFiles, ExtensionSelectsFormat) {
  const fs::path dir = temp_dir();
  const Mat m{{1.25, -3}, {7, 1e-300}};
  save_matrix(dir / "m.txt", m);
  save_matrix(dir / "m.dmat", m);
  EXPECT_EQ(read_file(dir / "m.txt").substr(0, 4), "2 2\n");
  EXPECT_EQ(read_file(dir / "m.dmat").substr(0, 4), "DMAT");
  EXPECT_EQ(load_matrix(dir / "m.txt"), m);
  EXPECT_EQ(load_matrix(dir / "m.dmat"), m);
  write_file(dir / "extra.dmat", read_file(dir / "m.dmat") + "x");
  EXPECT_THROW((void)load_matrix(dir / "extra.dmat"), TrailingDataError);
  EXPECT_THROW((void)load_matrix(dir / "absent.dmat"), MissingFileError);
  fs::remove_all(dir);
}
