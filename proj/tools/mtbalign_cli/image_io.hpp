#pragma once

#include <filesystem>

#include "mtbalign/core_image.hpp"

namespace mtb::cli {

/// Reads a binary PPM (P6, maxval 255) or an 8-bit PNG. PNG alpha is dropped.
/// Throws IoError naming the path on any failure.
RgbImage decode_image(const std::filesystem::path& path);

/// Writes PPM or PNG, chosen by the extension (.ppm / .png), replacing any
/// existing file.
void encode_image(const RgbImage& img, const std::filesystem::path& path);

bool is_supported_extension(const std::filesystem::path& path);

}  // namespace mtb::cli
