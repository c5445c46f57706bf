#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "bleedmeter/types.hpp"

namespace bleedmeter {

/// Dilation with a (2r+1)x(2r+1) square (Chebyshev ball). r = 0 is identity.
inline BinaryMask dilate_chebyshev(const BinaryMask& mask, int radius) {
  if (radius < 0) throw Error("dilate_chebyshev: radius must be >= 0");
  if (radius == 0) return mask;
  const int w = mask.width, h = mask.height;
  BinaryMask rows(w, h, false);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
      for (int xx = x0; xx <= x1; ++xx) rows.at(xx, y) = 1;
    }
  }
  BinaryMask out(w, h, false);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!rows.at(x, y)) continue;
      const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
      for (int yy = y0; yy <= y1; ++yy) out.at(x, yy) = 1;
    }
  }
  return out;
}

/// Offsets of a pixel-centered Euclidean disk with radius (diameter-1)/2.
/// The family is nested in the diameter, so wider strokes always cover
/// narrower ones. Diameter 1 is the identity element.
inline std::vector<std::pair<int, int>> disk_offsets(int diameter) {
  if (diameter < 1) throw Error("disk_offsets: diameter must be >= 1");
  const double radius = 0.5 * (diameter - 1);
  const double rr = radius * radius;
  const int reach = static_cast<int>(radius);
  std::vector<std::pair<int, int>> offsets;
  for (int dy = -reach; dy <= reach; ++dy)
    for (int dx = -reach; dx <= reach; ++dx)
      if (dx * dx + dy * dy <= rr) offsets.emplace_back(dx, dy);
  return offsets;
}

/// Dilation with a disk structuring element of the given diameter.
inline BinaryMask dilate_disk(const BinaryMask& mask, int diameter) {
  const auto offsets = disk_offsets(diameter);
  BinaryMask out(mask.width, mask.height, false);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(x, y)) continue;
      for (auto [dx, dy] : offsets) {
        const int nx = x + dx, ny = y + dy;
        if (out.in_bounds(nx, ny)) out.at(nx, ny) = 1;
      }
    }
  }
  return out;
}

/// Connected-component labeling. labels[i] = -1 for off pixels, otherwise a
/// component id in [0, n_components), assigned in row-major discovery order.
struct ComponentLabels {
  int width = 0;
  int height = 0;
  std::vector<int> labels;
  std::vector<size_t> sizes;  // pixel count per component

  int n_components() const { return static_cast<int>(sizes.size()); }
};

inline ComponentLabels label_components(const BinaryMask& mask, bool eight_connected = true) {
  ComponentLabels out;
  out.width = mask.width;
  out.height = mask.height;
  out.labels.assign(static_cast<size_t>(mask.width) * mask.height, -1);

  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(x, y) || out.labels[static_cast<size_t>(y) * mask.width + x] >= 0) continue;
      const int id = static_cast<int>(out.sizes.size());
      out.sizes.push_back(0);
      stack.emplace_back(x, y);
      out.labels[static_cast<size_t>(y) * mask.width + x] = id;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        ++out.sizes[id];
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (!eight_connected && dx != 0 && dy != 0) continue;
            const int nx = cx + dx, ny = cy + dy;
            if (!mask.in_bounds(nx, ny)) continue;
            size_t idx = static_cast<size_t>(ny) * mask.width + nx;
            if (mask.at(nx, ny) && out.labels[idx] < 0) {
              out.labels[idx] = id;
              stack.emplace_back(nx, ny);
            }
          }
        }
      }
    }
  }
  return out;
}

/// Mask of one labeled component.
inline BinaryMask component_mask(const ComponentLabels& labels, int id) {
  BinaryMask out(labels.width, labels.height, false);
  for (size_t i = 0; i < labels.labels.size(); ++i)
    if (labels.labels[i] == id) out.bits[i] = 1;
  return out;
}

}  // namespace bleedmeter
