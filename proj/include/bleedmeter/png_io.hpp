#pragma once

#include <png.h>

#include <cstring>
#include <string>

#include "bleedmeter/types.hpp"

namespace bleedmeter {

/// Decode an 8-bit PNG as RGB. Palette and gray images are expanded. An
/// alpha channel is dropped outright (decoding as RGB would composite it
/// against a background instead).
inline RgbImage read_png_rgb(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw IoError("read_png_rgb: cannot read " + path + ": " + image.message);
  image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> rgba(static_cast<size_t>(image.width) * image.height * 4);
  if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr)) {
    png_image_free(&image);
    throw IoError("read_png_rgb: decode failed for " + path + ": " + image.message);
  }
  RgbImage out(static_cast<int>(image.width), static_cast<int>(image.height));
  const size_t n = static_cast<size_t>(out.width) * out.height;
  for (size_t i = 0; i < n; ++i) {
    out.data[i * 3] = rgba[i * 4];
    out.data[i * 3 + 1] = rgba[i * 4 + 1];
    out.data[i * 3 + 2] = rgba[i * 4 + 2];
  }
  return out;
}

inline void write_png_rgb(const std::string& path, const RgbImage& img) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, img.data.data(), 0, nullptr))
    throw IoError("write_png_rgb: cannot write " + path + ": " + image.message);
}

/// Mask file convention: 8-bit grayscale, 0 = off, 255 = on. Any nonzero
/// pixel reads back as on.
inline BinaryMask read_png_mask(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw IoError("read_png_mask: cannot read " + path + ": " + image.message);
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> gray(static_cast<size_t>(image.width) * image.height);
  if (!png_image_finish_read(&image, nullptr, gray.data(), 0, nullptr)) {
    png_image_free(&image);
    throw IoError("read_png_mask: decode failed for " + path + ": " + image.message);
  }
  BinaryMask out(static_cast<int>(image.width), static_cast<int>(image.height));
  for (size_t i = 0; i < gray.size(); ++i) out.bits[i] = gray[i] != 0;
  return out;
}

inline void write_png_mask(const std::string& path, const BinaryMask& mask) {
  std::vector<std::uint8_t> gray(mask.bits.size());
  for (size_t i = 0; i < gray.size(); ++i) gray[i] = mask.bits[i] ? 255 : 0;
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(mask.width);
  image.height = static_cast<png_uint_32>(mask.height);
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, gray.data(), 0, nullptr))
    throw IoError("write_png_mask: cannot write " + path + ": " + image.message);
}

}  // namespace bleedmeter
