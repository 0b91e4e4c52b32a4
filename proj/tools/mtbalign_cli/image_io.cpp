#include "mtbalign_cli/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "mtbalign_cli/errors.hpp"

namespace mtb::cli {
namespace {

namespace fs = std::filesystem;

std::string lower_ext(const fs::path& p) {
  std::string e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  return e;
}

[[noreturn]] void fail(const fs::path& path, const std::string& what) {
  throw IoError(path.string() + ": " + what);
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) fail(path, "no such file");
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class HeaderReader {
 public:
  HeaderReader(const std::vector<std::uint8_t>& buf, const fs::path& path) : buf_(buf), path_(path) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= buf_.size()) fail(path_, "truncated PPM header");
    if (!std::isdigit(buf_[pos_])) fail(path_, "malformed PPM header");
    long long v = 0;
    while (pos_ < buf_.size() && std::isdigit(buf_[pos_])) {
      v = v * 10 + (buf_[pos_++] - '0');
      if (v > (1LL << 30)) fail(path_, "PPM header value out of range");
    }
    return int(v);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= buf_.size() || !std::isspace(buf_[pos_])) fail(path_, "truncated PPM header");
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < buf_.size()) {
      if (std::isspace(buf_[pos_])) {
        ++pos_;
      } else if (buf_[pos_] == '#') {
        while (pos_ < buf_.size() && buf_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& buf_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

RgbImage decode_ppm(const std::vector<std::uint8_t>& buf, const fs::path& path) {
  HeaderReader r(buf, path);
  r.skip(2);
  const int width = r.next_int();
  const int height = r.next_int();
  const int maxval = r.next_int();
  if (width < 1 || height < 1) fail(path, "PPM dimensions must be positive");
  if (maxval != 255) fail(path, "unsupported format: PPM maxval " + std::to_string(maxval) + " (only 255)");
  const std::size_t start = r.raster_start();
  const std::size_t need = std::size_t(width) * std::size_t(height) * 3;
  if (buf.size() - start < need)
    fail(path, "truncated PPM data: expected " + std::to_string(need) + " bytes, found " +
                   std::to_string(buf.size() - start));
  return RgbImage(width, height, std::vector<std::uint8_t>(buf.begin() + std::ptrdiff_t(start),
                                                           buf.begin() + std::ptrdiff_t(start + need)));
}

RgbImage decode_png(const std::vector<std::uint8_t>& buf, const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, buf.data(), buf.size()))
    fail(path, std::string("invalid PNG: ") + image.message);
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    fail(path, "unsupported format: 16-bit PNG (only 8-bit)");
  }
  image.format = PNG_FORMAT_RGBA;
  const int width = int(image.width);
  const int height = int(image.height);
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr))
    fail(path, std::string("truncated or corrupt PNG: ") + image.message);
  std::vector<std::uint8_t> rgb(std::size_t(width) * std::size_t(height) * 3);
  for (std::size_t i = 0, j = 0; i < rgba.size(); i += 4, j += 3) {
    rgb[j] = rgba[i];
    rgb[j + 1] = rgba[i + 1];
    rgb[j + 2] = rgba[i + 2];
  }
  return RgbImage(width, height, std::move(rgb));
}

}  // namespace

bool is_supported_extension(const fs::path& path) {
  const auto e = lower_ext(path);
  return e == ".ppm" || e == ".png";
}

RgbImage decode_image(const fs::path& path) {
  const auto buf = read_file(path);
  static constexpr std::uint8_t png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  if (buf.size() >= 8 && std::equal(std::begin(png_sig), std::end(png_sig), buf.begin())) return decode_png(buf, path);
  if (buf.size() >= 2 && buf[0] == 'P') {
    if (buf[1] == '6') return decode_ppm(buf, path);
    if (buf[1] >= '1' && buf[1] <= '7')
      fail(path, std::string("unsupported format: PNM variant P") + char(buf[1]) + " (only binary P6)");
  }
  if (buf.empty()) fail(path, "empty file");
  fail(path, "unsupported format: not a PPM (P6) or PNG file");
}

void encode_image(const RgbImage& img, const fs::path& path) {
  const auto e = lower_ext(path);
  if (e == ".ppm") {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(path, "cannot open for writing");
    out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data().data()), std::streamsize(img.data().size()));
    if (!out) fail(path, "write failed");
    return;
  }
  if (e == ".png") {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = png_uint_32(img.width());
    image.height = png_uint_32(img.height());
    image.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, img.data().data(), 0, nullptr))
      fail(path, std::string("PNG write failed: ") + image.message);
    return;
  }
  fail(path, "unsupported output extension '" + path.extension().string() + "' (use .ppm or .png)");
}

}  // namespace mtb::cli
