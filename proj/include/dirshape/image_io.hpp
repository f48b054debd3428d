#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dirshape/mask.hpp"

namespace dirshape {

/// 8-bit single-channel raster.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major
};

/// Reads PGM (P2 or P5, any maxval, rescaled to 0..255) or PNG (converted to
/// 8-bit gray). Throws Error(Io) or Error(UnsupportedFormat).
GrayImage read_gray_image(const std::filesystem::path& path);

/// Foreground iff gray >= threshold; with `invert`, foreground iff
/// (255 - gray) >= threshold. Throws Error(EmptyForeground) if nothing passes.
BinaryMask threshold_image(const GrayImage& image, int threshold, bool invert = false);

BinaryMask load_mask(const std::filesystem::path& path, int threshold = 128,
                     bool invert = false);

/// Binary P5 PGM with 0/255 values.
void write_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path);
void write_gray_pgm(const GrayImage& image, const std::filesystem::path& path, bool ascii = false);
void write_gray_png(const GrayImage& image, const std::filesystem::path& path);

bool is_supported_raster(const std::filesystem::path& path);

}  // namespace dirshape
