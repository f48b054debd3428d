#include "dirshape/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <memory>

#include <png.h>

#include "dirshape/error.hpp"

namespace dirshape {

namespace fs = std::filesystem;

namespace {

std::string lower_ext(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::vector<unsigned char> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Cursor over PGM header tokens; '#' comments run to end of line.
struct PgmReader {
  const std::vector<unsigned char>& data;
  std::size_t pos = 0;
  std::string name;

  [[noreturn]] void bad(const std::string& why) const {
    throw Error(ErrorKind::UnsupportedFormat, name + ": malformed PGM (" + why + ")");
  }

  void skip_space() {
    while (pos < data.size()) {
      if (data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else if (std::isspace(data[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  }

  long read_int() {
    skip_space();
    if (pos >= data.size() || !std::isdigit(data[pos])) bad("expected an integer");
    long v = 0;
    while (pos < data.size() && std::isdigit(data[pos])) {
      v = v * 10 + (data[pos] - '0');
      if (v > 1000000000L) bad("integer overflow");
      ++pos;
    }
    return v;
  }
};

GrayImage read_pgm(const fs::path& path, const std::vector<unsigned char>& data) {
  PgmReader r{data, 0, path.string()};
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5')) {
    throw Error(ErrorKind::UnsupportedFormat, path.string() + ": not a P2/P5 PGM file");
  }
  const bool binary = data[1] == '5';
  r.pos = 2;
  const long w = r.read_int(), h = r.read_int(), maxval = r.read_int();
  if (w <= 0 || h <= 0 || w > 65536 || h > 65536) r.bad("bad dimensions");
  if (maxval <= 0 || maxval > 65535) r.bad("bad maxval");

  GrayImage img{static_cast<int>(w), static_cast<int>(h), {}};
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  img.pixels.resize(n);
  auto rescale = [maxval](long v) {
    return static_cast<std::uint8_t>(std::clamp((v * 255 + maxval / 2) / maxval, 0L, 255L));
  };
  if (binary) {
    ++r.pos;  // single whitespace byte after maxval
    const std::size_t bytes = maxval > 255 ? 2 : 1;
    if (data.size() < r.pos + n * bytes) r.bad("truncated pixel data");
    for (std::size_t i = 0; i < n; ++i) {
      long v = data[r.pos + i * bytes];
      if (bytes == 2) v = (v << 8) | data[r.pos + i * bytes + 1];
      img.pixels[i] = rescale(std::min(v, maxval));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) img.pixels[i] = rescale(std::min(r.read_int(), maxval));
  }
  return img;
}

GrayImage read_png(const fs::path& path, const std::vector<unsigned char>& data) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, data.data(), data.size())) {
    throw Error(ErrorKind::UnsupportedFormat, path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  GrayImage img{static_cast<int>(image.width), static_cast<int>(image.height), {}};
  img.pixels.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, img.pixels.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorKind::UnsupportedFormat, path.string() + ": " + msg);
  }
  return img;
}

}  // namespace

bool is_supported_raster(const fs::path& path) {
  const std::string ext = lower_ext(path);
  return ext == ".pgm" || ext == ".png";
}

GrayImage read_gray_image(const fs::path& path) {
  const auto data = slurp(path);
  if (data.size() >= 8 && png_sig_cmp(data.data(), 0, 8) == 0) return read_png(path, data);
  if (data.size() >= 2 && data[0] == 'P') return read_pgm(path, data);
  throw Error(ErrorKind::UnsupportedFormat,
              path.string() + ": unsupported raster format (expected PGM or PNG)");
}

BinaryMask threshold_image(const GrayImage& image, int threshold, bool invert) {
  if (threshold < 0 || threshold > 255) {
    throw Error(ErrorKind::InvalidArgument, "threshold must lie in [0, 255]");
  }
  std::vector<std::uint8_t> bits(image.pixels.size());
  long long count = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const int g = invert ? 255 - image.pixels[i] : image.pixels[i];
    bits[i] = g >= threshold ? 1 : 0;
    count += bits[i];
  }
  if (count == 0) throw Error(ErrorKind::EmptyForeground, "image has no foreground pixel");
  return BinaryMask(image.width, image.height, std::move(bits));
}

BinaryMask load_mask(const fs::path& path, int threshold, bool invert) {
  const GrayImage img = read_gray_image(path);
  try {
    return threshold_image(img, threshold, invert);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_gray_pgm(const GrayImage& image, const fs::path& path, bool ascii) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  if (ascii) {
    out << "P2\n" << image.width << ' ' << image.height << "\n255\n";
    for (int y = 0; y < image.height; ++y) {
      for (int x = 0; x < image.width; ++x) {
        out << static_cast<int>(image.pixels[static_cast<std::size_t>(y) * image.width + x])
            << (x + 1 == image.width ? '\n' : ' ');
      }
    }
  } else {
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
  }
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

void write_mask_pgm(const BinaryMask& mask, const fs::path& path) {
  GrayImage img{mask.width(), mask.height(), {}};
  img.pixels.reserve(mask.size());
  for (auto b : mask.bits()) img.pixels.push_back(b ? 255 : 0);
  write_gray_pgm(img, path);
}

void write_gray_png(const GrayImage& image, const fs::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png, path.string().c_str(), 0, image.pixels.data(), 0,
                               nullptr)) {
    throw Error(ErrorKind::Io, "cannot write " + path.string() + ": " + png.message);
  }
}

}  // namespace dirshape
