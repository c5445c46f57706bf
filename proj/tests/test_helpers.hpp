#pragma once

// Shared builders for synthetic test inputs.

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>

#include "bleedmeter/color.hpp"
#include "bleedmeter/filter.hpp"
#include "bleedmeter/rng.hpp"
#include "bleedmeter/types.hpp"

namespace helpers {

using bleedmeter::LabImage;
using bleedmeter::Plane;
using bleedmeter::RgbImage;
using bleedmeter::SplitMix64;

struct Rgb {
  std::uint8_t r, g, b;
};

inline Rgb hsv_to_rgb(double h, double s, double v) {
  h = std::fmod(std::fmod(h, 360.0) + 360.0, 360.0);
  const double c = v * s;
  const double x = c * (1.0 - std::fabs(std::fmod(h / 60.0, 2.0) - 1.0));
  const double m = v - c;
  double r = 0, g = 0, b = 0;
  if (h < 60) r = c, g = x;
  else if (h < 120) r = x, g = c;
  else if (h < 180) g = c, b = x;
  else if (h < 240) g = x, b = c;
  else if (h < 300) r = x, b = c;
  else r = c, b = x;
  auto q = [m](double u) { return static_cast<std::uint8_t>(std::lround((u + m) * 255.0)); };
  return {q(r), q(g), q(b)};
}

/// Two saturated colors with well-separated hues, drawn from a seed.
inline std::pair<Rgb, Rgb> random_color_pair(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double h1 = rng.unit() * 360.0;
  const double h2 = h1 + 120.0 + rng.unit() * 120.0;
  return {hsv_to_rgb(h1, 0.9, 0.9), hsv_to_rgb(h2, 0.9, 0.9)};
}

/// Two colors sitting on opposite sides of the Lab chroma plane, away from
/// the a/b axes, so BOTH chroma channels carry strong contrast. Hue-based
/// draws can land pairs whose a (or b) difference is a few units; on such a
/// channel superpixels are pure spatial tiles and per-channel CDR turns into
/// grid-alignment noise.
inline std::pair<Rgb, Rgb> opposed_chroma_pair(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double quadrant = static_cast<double>(rng.below(4)) * 90.0;
  const double theta = (22.5 + rng.unit() * 45.0 + quadrant) * 3.14159265358979323846 / 180.0;
  const double chroma = 42.0 + rng.unit() * 10.0;
  const double lum = 50.0 + rng.unit() * 10.0;
  Rgb first, second;
  bleedmeter::lab_to_rgb_pixel(lum, chroma * std::cos(theta), chroma * std::sin(theta), first.r,
                               first.g, first.b);
  bleedmeter::lab_to_rgb_pixel(lum, -chroma * std::cos(theta), -chroma * std::sin(theta),
                               second.r, second.g, second.b);
  return {first, second};
}

/// Vertical split: columns < split_x take `left`, the rest `right`.
inline RgbImage two_region_rgb(int w, int h, int split_x, Rgb left, Rgb right) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const Rgb& c = x < split_x ? left : right;
      img.at(x, y, 0) = c.r;
      img.at(x, y, 1) = c.g;
      img.at(x, y, 2) = c.b;
    }
  return img;
}

/// Blur only the chroma planes (in Lab), keeping luminance. Softens edges
/// without moving them.
inline RgbImage chroma_blur(const RgbImage& img, double sigma) {
  if (sigma <= 0.0) return img;
  LabImage lab = bleedmeter::rgb_to_lab(img);
  lab.a = bleedmeter::gaussian_blur(lab.a, sigma);
  lab.b = bleedmeter::gaussian_blur(lab.b, sigma);
  return bleedmeter::lab_to_rgb(lab);
}

/// Synthetic color bleeding on a two-region image: the left region's color
/// spills `extent` pixels past the reference boundary, optionally softened.
/// extent 0 with no softening returns the clean image. Note a symmetric blur
/// alone keeps the color midpoint on the boundary and so moves no cluster
/// split; only the spill does.
inline RgbImage bleed_two_region(int w, int h, int split_x, Rgb left, Rgb right, int extent,
                                 double soften_sigma = 0.0) {
  return chroma_blur(two_region_rgb(w, h, split_x + extent, left, right), soften_sigma);
}

inline Plane random_plane(int w, int h, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  SplitMix64 rng(seed);
  Plane p(w, h);
  for (double& v : p.values) v = lo + rng.unit() * (hi - lo);
  return p;
}

inline RgbImage random_rgb(int w, int h, std::uint64_t seed) {
  SplitMix64 rng(seed);
  RgbImage img(w, h);
  for (auto& byte : img.data) byte = static_cast<std::uint8_t>(rng.below(256));
  return img;
}

/// Fresh scratch directory under the system temp root.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("bleedmeter_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace helpers
