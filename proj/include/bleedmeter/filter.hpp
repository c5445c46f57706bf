#pragma once

#include <cmath>
#include <vector>

#include "bleedmeter/types.hpp"

namespace bleedmeter {

namespace detail {

inline std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    sum += k[i + radius];
  }
  for (double& w : k) w /= sum;
  return k;
}

}  // namespace detail

/// Separable Gaussian blur, kernel radius ceil(3*sigma), replicate padding.
inline Plane gaussian_blur(const Plane& p, double sigma) {
  if (sigma <= 0.0) throw Error("gaussian_blur: sigma must be > 0");
  const std::vector<double> k = detail::gaussian_kernel(sigma);
  const int radius = static_cast<int>(k.size() / 2);

  Plane tmp(p.width, p.height);
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += k[i + radius] * p.at_clamped(x + i, y);
      tmp.at(x, y) = acc;
    }
  }
  Plane out(p.width, p.height);
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += k[i + radius] * tmp.at_clamped(x, y + i);
      out.at(x, y) = acc;
    }
  }
  return out;
}

// 3x3 Sobel pair. Gx responds to horizontal contrast, Gy to vertical.
constexpr int kSobelX[3][3] = {{1, 0, -1}, {2, 0, -2}, {1, 0, -1}};
constexpr int kSobelY[3][3] = {{1, 2, 1}, {0, 0, 0}, {-1, -2, -1}};

/// Raw Sobel responses (gx, gy) with replicate padding. Applied separably
/// ([1,0,-1] difference then [1,2,1] smoothing), so constant inputs cancel
/// to exactly zero instead of accumulating rounding residue.
inline void sobel_gradients(const Plane& p, Plane& gx, Plane& gy) {
  if (p.width < 3 || p.height < 3) throw Error("sobel: plane must be at least 3x3");
  const int w = p.width, h = p.height;
  Plane dh(w, h), dv(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      dh.at(x, y) = p.at_clamped(x - 1, y) - p.at_clamped(x + 1, y);
      dv.at(x, y) = p.at_clamped(x, y - 1) - p.at_clamped(x, y + 1);
    }
  }
  gx = Plane(w, h);
  gy = Plane(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      gx.at(x, y) = dh.at_clamped(x, y - 1) + 2.0 * dh.at(x, y) + dh.at_clamped(x, y + 1);
      gy.at(x, y) = dv.at_clamped(x - 1, y) + 2.0 * dv.at(x, y) + dv.at_clamped(x + 1, y);
    }
  }
}

/// Gradient magnitude sqrt(gx^2 + gy^2) from the 3x3 Sobel pair.
inline Plane sobel_magnitude(const Plane& p) {
  Plane gx, gy;
  sobel_gradients(p, gx, gy);
  Plane out(p.width, p.height);
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = std::hypot(gx.values[i], gy.values[i]);
  return out;
}

}  // namespace bleedmeter
