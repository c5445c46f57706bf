#pragma once

#include <cmath>
#include <vector>

#include "bleedmeter/filter.hpp"
#include "bleedmeter/types.hpp"

namespace bleedmeter {

/// Canny hyper-parameters. Thresholds are fractions of the per-image maximum
/// gradient magnitude; th_gap is the margin subtracted from th_high when
/// extracting edges from an initial colorization instead of the ground truth.
struct CannyParams {
  double sigma = 1.2;
  double th_high = 0.7;
  double th_low = 0.2;
  double th_gap = 0.4;

  void validate() const {
    if (sigma <= 0.0) throw Error("CannyParams: sigma must be > 0");
    if (!(th_low > 0.0 && th_low < th_high && th_high <= 1.0))
      throw Error("CannyParams: need 0 < th_low < th_high <= 1");
    if (th_gap < 0.0 || th_gap >= th_high) throw Error("CannyParams: need 0 <= th_gap < th_high");
  }

  /// Params for the relaxed pass over an initial output: same pipeline with
  /// th_high lowered by th_gap (the gap is consumed by the derivation).
  CannyParams relaxed_by_gap() const {
    CannyParams out = *this;
    out.th_high = th_high - th_gap;
    out.th_gap = 0.0;
    if (out.th_high <= out.th_low)
      throw Error("CannyParams: th_high - th_gap must stay above th_low");
    return out;
  }
};

namespace detail {

// Quantize a gradient axis into one of 4 bins and return the neighbor offset
// on the positive side. The Sobel pair negates both components relative to
// the true gradient; atan2 over (gy, gx) still lands on the same axis
// (mod 180 degrees).
inline void gradient_axis_offsets(double gx, double gy, int& dx, int& dy) {
  double angle = std::atan2(gy, gx) * 180.0 / 3.14159265358979323846;
  if (angle < 0.0) angle += 180.0;
  if (angle >= 180.0) angle -= 180.0;
  if (angle < 22.5 || angle >= 157.5) {
    dx = 1;
    dy = 0;
  } else if (angle < 67.5) {
    dx = 1;
    dy = 1;
  } else if (angle < 112.5) {
    dx = 0;
    dy = 1;
  } else {
    dx = 1;
    dy = -1;
  }
}

}  // namespace detail

/// Five-step Canny: Gaussian blur, Sobel gradient, non-maximum suppression
/// along the quantized gradient axis, double threshold relative to the max
/// gradient magnitude, and 8-connected hysteresis tracking.
///
/// A constant plane (zero gradient everywhere after blur) yields an empty
/// mask; when `degenerate` is non-null it is set accordingly.
inline BinaryMask canny(const Plane& p, const CannyParams& params, bool* degenerate = nullptr) {
  params.validate();
  if (degenerate) *degenerate = false;

  const Plane blurred = gaussian_blur(p, params.sigma);
  Plane gx, gy;
  sobel_gradients(blurred, gx, gy);

  const int w = p.width, h = p.height;
  Plane mag(w, h);
  double max_mag = 0.0;
  for (size_t i = 0; i < mag.values.size(); ++i) {
    mag.values[i] = std::hypot(gx.values[i], gy.values[i]);
    if (mag.values[i] > max_mag) max_mag = mag.values[i];
  }

  if (max_mag == 0.0) {
    if (degenerate) *degenerate = true;
    return BinaryMask(w, h, false);
  }

  // Non-maximum suppression: survive only if >= the neighbor behind and
  // strictly > the neighbor ahead along the gradient axis, so exact ties on
  // symmetric profiles keep one side and edges stay one pixel thin.
  BinaryMask thin(w, h, false);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double m = mag.at(x, y);
      if (m == 0.0) continue;
      int dx, dy;
      detail::gradient_axis_offsets(gx.at(x, y), gy.at(x, y), dx, dy);
      const double back = (x - dx >= 0 && x - dx < w && y - dy >= 0 && y - dy < h)
                              ? mag.at(x - dx, y - dy)
                              : 0.0;
      const double ahead = (x + dx >= 0 && x + dx < w && y + dy >= 0 && y + dy < h)
                               ? mag.at(x + dx, y + dy)
                               : 0.0;
      if (m >= back && m > ahead) thin.at(x, y) = 1;
    }
  }

  const double high = params.th_high * max_mag;
  const double low = params.th_low * max_mag;

  // Hysteresis: seed from strong pixels, grow through weak ones (8-conn).
  BinaryMask edges(w, h, false);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (thin.at(x, y) && mag.at(x, y) >= high) {
        edges.at(x, y) = 1;
        stack.emplace_back(x, y);
      }
  while (!stack.empty()) {
    auto [cx, cy] = stack.back();
    stack.pop_back();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = cx + dx, ny = cy + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        if (edges.at(nx, ny) || !thin.at(nx, ny)) continue;
        if (mag.at(nx, ny) >= low) {
          edges.at(nx, ny) = 1;
          stack.emplace_back(nx, ny);
        }
      }
    }
  }
  return edges;
}

}  // namespace bleedmeter
