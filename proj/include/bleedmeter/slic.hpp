#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bleedmeter/filter.hpp"
#include "bleedmeter/types.hpp"

namespace bleedmeter {

struct SlicParams {
  int n_clusters = 250;
  double compactness = 10.0;
  double sigma = 1.0;
  int max_iterations = 10;

  void validate() const {
    if (n_clusters < 2) throw Error("SlicParams: n_clusters must be >= 2");
    if (compactness <= 0.0) throw Error("SlicParams: compactness must be > 0");
    if (sigma < 0.0) throw Error("SlicParams: sigma must be >= 0");
    if (max_iterations < 1) throw Error("SlicParams: max_iterations must be >= 1");
  }
};

/// Per-pixel superpixel assignment. Labels are compact: every label in
/// [0, n_clusters) owns at least one pixel.
struct ClusterMap {
  int width = 0;
  int height = 0;
  std::vector<int> labels;
  int n_clusters = 0;

  int at(int x, int y) const { return labels[static_cast<size_t>(y) * width + x]; }
};

namespace detail {

struct SlicCenter {
  double value = 0.0;
  double x = 0.0;
  double y = 0.0;
};

// Reassign every non-dominant fragment of each label to the adjacent label it
// touches the most (4-connectivity). Keeps the partition total.
inline void absorb_orphan_fragments(std::vector<int>& labels, int w, int h) {
  const size_t n = static_cast<size_t>(w) * h;
  std::vector<int> frag(n, -1);
  std::vector<int> frag_label;
  std::vector<std::vector<size_t>> frag_members;

  std::vector<size_t> stack;
  for (size_t start = 0; start < n; ++start) {
    if (frag[start] >= 0) continue;
    const int id = static_cast<int>(frag_members.size());
    frag_label.push_back(labels[start]);
    frag_members.emplace_back();
    frag[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const size_t cur = stack.back();
      stack.pop_back();
      frag_members[id].push_back(cur);
      const int cx = static_cast<int>(cur % w), cy = static_cast<int>(cur / w);
      const int nbr[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (auto& d : nbr) {
        const int nx = cx + d[0], ny = cy + d[1];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        const size_t ni = static_cast<size_t>(ny) * w + nx;
        if (frag[ni] < 0 && labels[ni] == labels[cur]) {
          frag[ni] = id;
          stack.push_back(ni);
        }
      }
    }
  }

  // Dominant fragment per label: the largest, earliest on ties.
  const int n_frags = static_cast<int>(frag_members.size());
  std::vector<int> dominant;  // label -> fragment id
  for (int f = 0; f < n_frags; ++f) {
    const int lbl = frag_label[f];
    if (lbl >= static_cast<int>(dominant.size())) dominant.resize(lbl + 1, -1);
    if (dominant[lbl] < 0 || frag_members[f].size() > frag_members[dominant[lbl]].size())
      dominant[lbl] = f;
  }

  for (int f = 0; f < n_frags; ++f) {
    if (dominant[frag_label[f]] == f) continue;
    // Count 4-neighbor contacts with each other label.
    std::vector<std::pair<int, int>> contact;  // (label, count)
    const std::vector<size_t>& members = frag_members[f];
    for (size_t cur : members) {
      const int cx = static_cast<int>(cur % w), cy = static_cast<int>(cur / w);
      const int nbr[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (auto& d : nbr) {
        const int nx = cx + d[0], ny = cy + d[1];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        const size_t ni = static_cast<size_t>(ny) * w + nx;
        if (frag[ni] == f) continue;
        const int other = labels[ni];
        auto it = std::find_if(contact.begin(), contact.end(),
                               [other](const auto& c) { return c.first == other; });
        if (it == contact.end())
          contact.emplace_back(other, 1);
        else
          ++it->second;
      }
    }
    if (contact.empty()) continue;  // fragment spans the whole raster
    int best_label = contact[0].first, best_count = contact[0].second;
    for (const auto& [lbl, cnt] : contact)
      if (cnt > best_count || (cnt == best_count && lbl < best_label)) {
        best_label = lbl;
        best_count = cnt;
      }
    for (size_t cur : members) labels[cur] = best_label;
  }
}

}  // namespace detail

/// SLIC superpixels over one scalar channel. Feature space is (value, x, y)
/// with distance D = sqrt(d_value^2 + (d_xy / S)^2 * compactness^2), S the
/// seed grid spacing sqrt(N / n_clusters). Seeding is grid-based so the
/// result is deterministic for fixed inputs and parameters.
inline ClusterMap slic(const Plane& channel, const SlicParams& params) {
  params.validate();
  const int w = channel.width, h = channel.height;
  const size_t n = channel.pixel_count();
  if (static_cast<size_t>(params.n_clusters) > n)
    throw TooManyClusters("slic: n_clusters exceeds pixel count");

  const Plane smoothed =
      params.sigma > 0.0 ? gaussian_blur(channel, params.sigma) : channel;

  // Aspect-balanced seed grid: nx * ny tracks n_clusters even when the
  // nominal spacing exceeds one image dimension.
  const double spacing = std::sqrt(static_cast<double>(n) / params.n_clusters);
  const int ny = std::max(
      1, static_cast<int>(std::lround(std::sqrt(params.n_clusters * static_cast<double>(h) / w))));
  const int nx = std::max(1, static_cast<int>(std::lround(static_cast<double>(params.n_clusters) / ny)));

  // Seeds at cell centers, nudged to the lowest-gradient spot in a 3x3
  // neighborhood so they avoid sitting on an edge.
  const Plane grad = sobel_magnitude(smoothed);
  std::vector<detail::SlicCenter> centers;
  centers.reserve(static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      int cx = std::clamp(static_cast<int>((i + 0.5) * w / nx), 0, w - 1);
      int cy = std::clamp(static_cast<int>((j + 0.5) * h / ny), 0, h - 1);
      int best_x = -1, best_y = -1;
      double best_g = std::numeric_limits<double>::infinity();
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int px = cx + dx, py = cy + dy;
          if (px < 0 || px >= w || py < 0 || py >= h) continue;
          if (grad.at(px, py) < best_g) {
            best_g = grad.at(px, py);
            best_x = px;
            best_y = py;
          }
        }
      }
      centers.push_back({smoothed.at(best_x, best_y), static_cast<double>(best_x),
                         static_cast<double>(best_y)});
    }
  }

  const double inv_s = 1.0 / spacing;
  const double m = params.compactness;
  const int window = static_cast<int>(std::ceil(std::max(
      static_cast<double>(w) / nx, static_cast<double>(h) / ny)));

  std::vector<int> labels(n, -1);
  std::vector<double> best_dist(n);
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    std::fill(best_dist.begin(), best_dist.end(), std::numeric_limits<double>::infinity());
    std::fill(labels.begin(), labels.end(), -1);
    for (size_t c = 0; c < centers.size(); ++c) {
      const auto& ctr = centers[c];
      const int x0 = std::max(0, static_cast<int>(std::floor(ctr.x)) - window);
      const int x1 = std::min(w - 1, static_cast<int>(std::ceil(ctr.x)) + window);
      const int y0 = std::max(0, static_cast<int>(std::floor(ctr.y)) - window);
      const int y1 = std::min(h - 1, static_cast<int>(std::ceil(ctr.y)) + window);
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const size_t idx = static_cast<size_t>(y) * w + x;
          const double dv = smoothed.values[idx] - ctr.value;
          const double dx = (x - ctr.x) * inv_s * m;
          const double dy = (y - ctr.y) * inv_s * m;
          const double d2 = dv * dv + dx * dx + dy * dy;
          if (d2 < best_dist[idx]) {
            best_dist[idx] = d2;
            labels[idx] = static_cast<int>(c);
          }
        }
      }
    }

    // Any pixel missed by every window goes to the nearest center outright.
    for (size_t idx = 0; idx < n; ++idx) {
      if (labels[idx] >= 0) continue;
      const int x = static_cast<int>(idx % w), y = static_cast<int>(idx / w);
      double best = std::numeric_limits<double>::infinity();
      for (size_t c = 0; c < centers.size(); ++c) {
        const double dv = smoothed.values[idx] - centers[c].value;
        const double dx = (x - centers[c].x) * inv_s * m;
        const double dy = (y - centers[c].y) * inv_s * m;
        const double d2 = dv * dv + dx * dx + dy * dy;
        if (d2 < best) {
          best = d2;
          labels[idx] = static_cast<int>(c);
        }
      }
    }

    // Recompute centers; stop once assignments are stable.
    std::vector<detail::SlicCenter> next(centers.size());
    std::vector<size_t> counts(centers.size(), 0);
    for (size_t idx = 0; idx < n; ++idx) {
      const int c = labels[idx];
      next[c].value += smoothed.values[idx];
      next[c].x += static_cast<double>(idx % w);
      next[c].y += static_cast<double>(idx / w);
      ++counts[c];
    }
    bool moved = false;
    for (size_t c = 0; c < centers.size(); ++c) {
      if (counts[c] == 0) continue;  // keep the stale center; it may re-acquire
      next[c].value /= counts[c];
      next[c].x /= counts[c];
      next[c].y /= counts[c];
      if (next[c].value != centers[c].value || next[c].x != centers[c].x ||
          next[c].y != centers[c].y)
        moved = true;
      centers[c] = next[c];
    }
    if (!moved) break;
  }

  detail::absorb_orphan_fragments(labels, w, h);

  // Compact to labels 0..K-1 in first-appearance order.
  ClusterMap out;
  out.width = w;
  out.height = h;
  out.labels.assign(n, -1);
  std::vector<int> remap(centers.size(), -1);
  int next_id = 0;
  for (size_t idx = 0; idx < n; ++idx) {
    int& r = remap[labels[idx]];
    if (r < 0) r = next_id++;
    out.labels[idx] = r;
  }
  out.n_clusters = next_id;
  return out;
}

}  // namespace bleedmeter
