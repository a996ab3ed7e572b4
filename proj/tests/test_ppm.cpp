#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "linefollow/ppm.hpp"
#include "test_util.hpp"

using namespace linefollow;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("single red pixel encoding") {
  RasterImage img(1, 1, Rgb{255, 0, 0});
  const auto bytes = encode_ppm(img);
  auto expected = bytes_of("P6\n1 1\n255\n");
  expected.insert(expected.end(), {0xFF, 0x00, 0x00});
  CHECK(bytes == expected);
}

TEST_CASE("random images roundtrip bit-exactly") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> byte(0, 255), dim(1, 16);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = trial == 0 ? 16 : dim(rng), h = trial == 0 ? 16 : dim(rng);
    RasterImage img(w, h);
    for (Rgb& p : img.pixels()) {
      p = Rgb{static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
              static_cast<std::uint8_t>(byte(rng))};
    }
    CHECK(decode_ppm(encode_ppm(img)) == img);
  }
}

TEST_CASE("headers with comments and irregular whitespace decode") {
  auto bytes = bytes_of("P6 # a comment\n  2\t# width\n1\r\n# maxval next\n255\n");
  bytes.insert(bytes.end(), {1, 2, 3, 4, 5, 6});
  const RasterImage img = decode_ppm(bytes);
  CHECK(img.width() == 2);
  CHECK(img.height() == 1);
  CHECK(img.at(1, 0) == Rgb{4, 5, 6});
}

TEST_CASE("malformed input is rejected with specific errors") {
  CHECK_ERROR_CODE(decode_ppm(bytes_of("P5\n1 1\n255\n\x01")), ErrorCode::UnsupportedFormat);
  CHECK_ERROR_CODE(decode_ppm(bytes_of("P3\n1 1\n255\n1 2 3")), ErrorCode::UnsupportedFormat);
  CHECK_ERROR_CODE(decode_ppm(bytes_of("")), ErrorCode::UnsupportedFormat);
  CHECK_ERROR_CODE(decode_ppm(bytes_of("P6\nx 1\n255\n")), ErrorCode::MalformedHeader);
  CHECK_ERROR_CODE(decode_ppm(bytes_of("P6\n1 1\n")), ErrorCode::MalformedHeader);
  CHECK_ERROR_CODE(decode_ppm(bytes_of("P6\n0 1\n255\n")), ErrorCode::InvalidDimensions);
  CHECK_ERROR_CODE(decode_ppm(bytes_of("P6\n-1 1\n255\n")), ErrorCode::InvalidDimensions);
  CHECK_ERROR_CODE(decode_ppm(bytes_of("P6\n1 1\n65535\n\x00\x00")), ErrorCode::UnsupportedMaxval);
  CHECK_ERROR_CODE(decode_ppm(bytes_of("P6\n2 2\n255\n\x01\x02\x03")), ErrorCode::TruncatedData);
}

TEST_CASE("file roundtrip and missing files") {
  const auto path = std::filesystem::temp_directory_path() / "linefollow_ppm_test.ppm";
  RasterImage img(3, 2, Rgb{9, 8, 7});
  img.at(2, 1) = Rgb{1, 2, 3};
  write_ppm(path, img);
  CHECK(read_ppm(path) == img);
  std::filesystem::remove(path);
  CHECK_ERROR_CODE(read_ppm(path), ErrorCode::Io);
}
