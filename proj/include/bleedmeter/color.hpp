#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "bleedmeter/types.hpp"

namespace bleedmeter {

namespace detail {

// sRGB <-> linear transfer function (IEC 61966-2-1).
inline double srgb_to_linear(double s) {
  return s <= 0.04045 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
}

inline double linear_to_srgb(double l) {
  return l <= 0.0031308 ? l * 12.92 : 1.055 * std::pow(l, 1.0 / 2.4) - 0.055;
}

// D65 reference white; the matrix rows sum to the white point so that
// (255,255,255) lands on a=b=0 to ~1e-5.
constexpr double kWhiteX = 0.95047;
constexpr double kWhiteY = 1.00000;
constexpr double kWhiteZ = 1.08883;

constexpr double kCieEpsilon = 216.0 / 24389.0;
constexpr double kCieKappa = 24389.0 / 27.0;

inline double lab_f(double t) {
  return t > kCieEpsilon ? std::cbrt(t) : (kCieKappa * t + 16.0) / 116.0;
}

inline double lab_f_inv(double f) {
  double f3 = f * f * f;
  return f3 > kCieEpsilon ? f3 : (116.0 * f - 16.0) / kCieKappa;
}

}  // namespace detail

/// One sRGB pixel (8-bit) to CIE Lab under D65.
inline void rgb_to_lab_pixel(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8, double& L,
                             double& a, double& b) {
  using namespace detail;
  const double r = srgb_to_linear(r8 / 255.0);
  const double g = srgb_to_linear(g8 / 255.0);
  const double bl = srgb_to_linear(b8 / 255.0);

  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * bl;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * bl;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * bl;

  const double fx = lab_f(x / kWhiteX);
  const double fy = lab_f(y / kWhiteY);
  const double fz = lab_f(z / kWhiteZ);

  L = std::clamp(116.0 * fy - 16.0, 0.0, 100.0);
  a = 500.0 * (fx - fy);
  b = 200.0 * (fy - fz);
}

/// Inverse of rgb_to_lab_pixel; out-of-gamut values clamp to valid 8-bit sRGB.
inline void lab_to_rgb_pixel(double L, double a, double b, std::uint8_t& r8, std::uint8_t& g8,
                             std::uint8_t& b8) {
  using namespace detail;
  const double fy = (L + 16.0) / 116.0;
  const double fx = fy + a / 500.0;
  const double fz = fy - b / 200.0;

  const double x = lab_f_inv(fx) * kWhiteX;
  const double yy = L > kCieKappa * kCieEpsilon ? fy * fy * fy : L / kCieKappa;
  const double z = lab_f_inv(fz) * kWhiteZ;

  const double r = 3.2404542 * x - 1.5371385 * yy - 0.4985314 * z;
  const double g = -0.9692660 * x + 1.8760108 * yy + 0.0415560 * z;
  const double bl = 0.0556434 * x - 0.2040259 * yy + 1.0572252 * z;

  auto quantize = [](double lin) {
    double s = linear_to_srgb(std::clamp(lin, 0.0, 1.0));
    return static_cast<std::uint8_t>(std::lround(std::clamp(s, 0.0, 1.0) * 255.0));
  };
  r8 = quantize(r);
  g8 = quantize(g);
  b8 = quantize(bl);
}

inline LabImage rgb_to_lab(const RgbImage& img) {
  LabImage out(img.width, img.height);
  const size_t n = static_cast<size_t>(img.width) * img.height;
  for (size_t i = 0; i < n; ++i) {
    rgb_to_lab_pixel(img.data[i * 3], img.data[i * 3 + 1], img.data[i * 3 + 2], out.L.values[i],
                     out.a.values[i], out.b.values[i]);
  }
  return out;
}

inline RgbImage lab_to_rgb(const LabImage& img) {
  RgbImage out(img.width, img.height);
  const size_t n = static_cast<size_t>(img.width) * img.height;
  for (size_t i = 0; i < n; ++i) {
    lab_to_rgb_pixel(img.L.values[i], img.a.values[i], img.b.values[i], out.data[i * 3],
                     out.data[i * 3 + 1], out.data[i * 3 + 2]);
  }
  return out;
}

/// Bilinear resampling of an 8-bit RGB image.
inline RgbImage resize_bilinear(const RgbImage& img, int new_width, int new_height) {
  RgbImage out(new_width, new_height);
  const double sx = static_cast<double>(img.width) / new_width;
  const double sy = static_cast<double>(img.height) / new_height;
  for (int y = 0; y < new_height; ++y) {
    const double fy = (y + 0.5) * sy - 0.5;
    int y0 = static_cast<int>(std::floor(fy));
    const double wy = fy - y0;
    int y1 = std::min(y0 + 1, img.height - 1);
    y0 = std::clamp(y0, 0, img.height - 1);
    for (int x = 0; x < new_width; ++x) {
      const double fx = (x + 0.5) * sx - 0.5;
      int x0 = static_cast<int>(std::floor(fx));
      const double wx = fx - x0;
      int x1 = std::min(x0 + 1, img.width - 1);
      x0 = std::clamp(x0, 0, img.width - 1);
      for (int c = 0; c < 3; ++c) {
        const double top = (1.0 - wx) * img.at(x0, y0, c) + wx * img.at(x1, y0, c);
        const double bot = (1.0 - wx) * img.at(x0, y1, c) + wx * img.at(x1, y1, c);
        out.at(x, y, c) = static_cast<std::uint8_t>(
            std::lround(std::clamp((1.0 - wy) * top + wy * bot, 0.0, 255.0)));
      }
    }
  }
  return out;
}

}  // namespace bleedmeter
