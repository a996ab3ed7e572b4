#include "linefollow/ppm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "linefollow/error.hpp"

namespace linefollow {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_separators() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Returns a value saturated at INT64 max so oversize fields still reject cleanly.
  long long read_number(const char* field) {
    skip_separators();
    if (pos_ >= bytes_.size()) {
      throw Error(ErrorCode::MalformedHeader, std::string("missing ") + field);
    }
    if (bytes_[pos_] == '-') {
      throw Error(ErrorCode::InvalidDimensions, std::string("negative ") + field);
    }
    if (!std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::MalformedHeader, std::string("non-numeric ") + field);
    }
    long long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      if (value < std::numeric_limits<long long>::max() / 10) {
        value = value * 10 + (bytes_[pos_] - '0');
      }
      ++pos_;
    }
    return value;
  }

  void expect_single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::MalformedHeader, "expected whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t position() const noexcept { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

std::vector<std::uint8_t> encode_ppm(const RasterImage& image) {
  const std::string header =
      "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + image.pixels().size() * 3);
  for (const Rgb& p : image.pixels()) {
    out.push_back(p.r);
    out.push_back(p.g);
    out.push_back(p.b);
  }
  return out;
}

RasterImage decode_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw Error(ErrorCode::UnsupportedFormat, "not a binary P6 pixmap");
  }
  if (bytes.size() > 2 && !std::isspace(bytes[2]) && bytes[2] != '#') {
    throw Error(ErrorCode::UnsupportedFormat, "not a binary P6 pixmap");
  }
  HeaderReader reader(bytes);
  const long long width = reader.read_number("width");
  const long long height = reader.read_number("height");
  if (width <= 0 || height <= 0 || width > std::numeric_limits<int>::max() ||
      height > std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::InvalidDimensions, "pixmap dimensions out of range");
  }
  const long long maxval = reader.read_number("maxval");
  if (maxval != 255) {
    throw Error(ErrorCode::UnsupportedMaxval,
                "only maxval 255 is supported, got " + std::to_string(maxval));
  }
  reader.expect_single_whitespace();

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t offset = reader.position();
  if (bytes.size() - offset < count * 3) {
    throw Error(ErrorCode::TruncatedData, "pixel data shorter than " + std::to_string(count * 3) +
                                              " bytes");
  }
  std::vector<Rgb> pixels(count);
  for (std::size_t i = 0; i < count; ++i) {
    pixels[i] = Rgb{bytes[offset + 3 * i], bytes[offset + 3 * i + 1], bytes[offset + 3 * i + 2]};
  }
  return RasterImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

RasterImage read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_ppm(bytes);
}

void write_ppm(const std::filesystem::path& path, const RasterImage& image) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  const auto bytes = encode_ppm(image);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace linefollow
