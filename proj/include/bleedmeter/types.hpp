#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bleedmeter {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyRegion : public Error {
 public:
  using Error::Error;
};

class NoBleedingEdge : public Error {
 public:
  using Error::Error;
};

class InvalidWidth : public Error {
 public:
  using Error::Error;
};

class TooManyClusters : public Error {
 public:
  using Error::Error;
};

class NoEdges : public Error {
 public:
  using Error::Error;
};

class KernelFullUnsupported : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Single-channel scalar field, row-major.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  Plane() = default;
  Plane(int w, int h, double fill = 0.0)
      : width(w), height(h), values(static_cast<size_t>(w) * h, fill) {}

  double& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
  double at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }

  // Replicate-padded read: coordinates outside the raster clamp to the border.
  double at_clamped(int x, int y) const {
    if (x < 0) x = 0;
    if (x >= width) x = width - 1;
    if (y < 0) y = 0;
    if (y >= height) y = height - 1;
    return at(x, y);
  }

  size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

/// Boolean raster. bits holds 0/1 per pixel, row-major.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  BinaryMask(int w, int h, bool fill = false)
      : width(w), height(h), bits(static_cast<size_t>(w) * h, fill ? 1 : 0) {}

  std::uint8_t& at(int x, int y) { return bits[static_cast<size_t>(y) * width + x]; }
  bool at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x] != 0; }

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

  size_t count() const {
    size_t n = 0;
    for (std::uint8_t b : bits) n += (b != 0);
    return n;
  }
  bool any() const {
    for (std::uint8_t b : bits)
      if (b) return true;
    return false;
  }
};

/// 8-bit sRGB image, interleaved RGB triples, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0) {}

  std::uint8_t& at(int x, int y, int c) {
    return data[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
  std::uint8_t at(int x, int y, int c) const {
    return data[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
};

/// CIE Lab planes of one image. L in [0,100]; a/b nominally in [-128,127].
struct LabImage {
  int width = 0;
  int height = 0;
  Plane L, a, b;

  LabImage() = default;
  LabImage(int w, int h) : width(w), height(h), L(w, h), a(w, h), b(w, h) {}
};

template <typename A, typename B>
inline void require_same_dims(const A& x, const B& y, const char* what) {
  if (x.width != y.width || x.height != y.height)
    throw DimensionMismatch(std::string(what) + ": dimensions differ (" +
                            std::to_string(x.width) + "x" + std::to_string(x.height) + " vs " +
                            std::to_string(y.width) + "x" + std::to_string(y.height) + ")");
}

}  // namespace bleedmeter
