#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bleedmeter/canny.hpp"
#include "bleedmeter/color.hpp"
#include "bleedmeter/filter.hpp"
#include "bleedmeter/morphology.hpp"
#include "bleedmeter/scribble.hpp"
#include "bleedmeter/slic.hpp"
#include "bleedmeter/types.hpp"

namespace bleedmeter {

/// Evaluation kernel: an odd window size, or the whole frame.
struct KernelSpec {
  bool full = false;
  int size = 7;

  static KernelSpec of(int k) {
    KernelSpec s;
    s.size = k;
    s.validate();
    return s;
  }
  static KernelSpec full_frame() {
    KernelSpec s;
    s.full = true;
    return s;
  }
  void validate() const {
    if (!full && (size < 1 || size % 2 == 0))
      throw Error("KernelSpec: size must be odd and >= 1");
  }
  int radius() const { return (size - 1) / 2; }
};

/// PSNR in dB, or the distinguished "identical" value when MSE is zero.
struct PsnrValue {
  bool identical = false;
  double db = 0.0;
};

/// Mean squared difference over `region` (nullptr = whole frame), pooled
/// across all channels in the set.
inline double mse(std::span<const Plane> x, std::span<const Plane> y, const BinaryMask* region) {
  if (x.size() != y.size() || x.empty()) throw DimensionMismatch("mse: channel count differs");
  for (size_t c = 0; c < x.size(); ++c) {
    require_same_dims(x[c], y[c], "mse");
    require_same_dims(x[0], x[c], "mse");
  }
  if (region) require_same_dims(x[0], *region, "mse");

  double sum = 0.0;
  size_t n = 0;
  const size_t plane_px = x[0].pixel_count();
  for (size_t i = 0; i < plane_px; ++i) {
    if (region && !region->bits[i]) continue;
    for (size_t c = 0; c < x.size(); ++c) {
      const double d = x[c].values[i] - y[c].values[i];
      sum += d * d;
    }
    n += x.size();
  }
  if (n == 0) throw EmptyRegion("mse: region has no pixels");
  return sum / static_cast<double>(n);
}

inline double mse(const RgbImage& x, const RgbImage& y, const BinaryMask* region) {
  require_same_dims(x, y, "mse");
  if (region) require_same_dims(x, *region, "mse");
  double sum = 0.0;
  size_t n = 0;
  const size_t px = static_cast<size_t>(x.width) * x.height;
  for (size_t i = 0; i < px; ++i) {
    if (region && !region->bits[i]) continue;
    for (int c = 0; c < 3; ++c) {
      const double d =
          static_cast<double>(x.data[i * 3 + c]) - static_cast<double>(y.data[i * 3 + c]);
      sum += d * d;
    }
    n += 3;
  }
  if (n == 0) throw EmptyRegion("mse: region has no pixels");
  return sum / static_cast<double>(n);
}

/// PSNR over 8-bit RGB with MAX = 255, restricted to `region` (nullptr =
/// whole frame).
inline PsnrValue psnr(const RgbImage& pred, const RgbImage& gt, const BinaryMask* region) {
  const double m = mse(pred, gt, region);
  if (m == 0.0) return PsnrValue{true, 0.0};
  return PsnrValue{false, 10.0 * std::log10(255.0 * 255.0 / m)};
}

/// Union of KxK windows centered on each on-pixel; Full yields an all-ones
/// mask.
inline BinaryMask local_region(const BinaryMask& edges, const KernelSpec& kernel) {
  kernel.validate();
  if (kernel.full) return BinaryMask(edges.width, edges.height, true);
  return dilate_chebyshev(edges, kernel.radius());
}

/// Signed Sobel-magnitude difference per chroma channel: S(pred) - S(base).
inline std::pair<Plane, Plane> s_diff(const LabImage& pred, const LabImage& base) {
  require_same_dims(pred, base, "s_diff");
  const Plane sa_pred = sobel_magnitude(pred.a), sa_base = sobel_magnitude(base.a);
  const Plane sb_pred = sobel_magnitude(pred.b), sb_base = sobel_magnitude(base.b);
  Plane da(pred.width, pred.height), db(pred.width, pred.height);
  for (size_t i = 0; i < da.values.size(); ++i) {
    da.values[i] = sa_pred.values[i] - sa_base.values[i];
    db.values[i] = sb_pred.values[i] - sb_base.values[i];
  }
  return {std::move(da), std::move(db)};
}

namespace detail {

// Mean of (S_x - S_y)^2 over the chroma channels, restricted to the on-pixels
// of `mask` (or its complement).
inline double masked_gradient_discrepancy(const LabImage& x, const LabImage& y,
                                          const BinaryMask& mask, bool over_complement,
                                          const char* what) {
  require_same_dims(x, y, what);
  require_same_dims(x, mask, what);
  const Plane sxa = sobel_magnitude(x.a), sya = sobel_magnitude(y.a);
  const Plane sxb = sobel_magnitude(x.b), syb = sobel_magnitude(y.b);
  double sum = 0.0;
  size_t n = 0;
  for (size_t i = 0; i < mask.bits.size(); ++i) {
    const bool in = mask.bits[i] != 0;
    if (in == over_complement) continue;
    const double da = sxa.values[i] - sya.values[i];
    const double db = sxb.values[i] - syb.values[i];
    sum += da * da + db * db;
    n += 2;
  }
  if (n == 0) throw EmptyRegion(std::string(what) + ": evaluation region is empty");
  return sum / static_cast<double>(n);
}

}  // namespace detail

/// Mean squared gradient discrepancy against the ground truth inside the
/// region mask. Zero when the prediction's chroma gradients match the ground
/// truth's over the region; lower is better.
inline double edge_fidelity(const LabImage& pred, const LabImage& gt, const RegionMask& m) {
  return detail::masked_gradient_discrepancy(pred, gt, m.mask, false, "edge_fidelity");
}

/// Mean squared gradient discrepancy against the initial output outside the
/// region mask; measures off-target distortion. Lower is better.
inline double consistency_score(const LabImage& pred, const LabImage& init, const RegionMask& m) {
  return detail::masked_gradient_discrepancy(pred, init, m.mask, true, "consistency_score");
}

namespace detail {

// Clusters whose mean channel values coincide (within tolerance) act as one
// effective cluster: a fully bled region reads as a single color no matter
// how the spatial tiling fell out.
constexpr double kClusterValueTolerance = 1e-9;

inline std::vector<int> effective_labels(const ClusterMap& cm, const Plane& channel) {
  std::vector<double> sum(cm.n_clusters, 0.0);
  std::vector<size_t> count(cm.n_clusters, 0);
  for (size_t i = 0; i < cm.labels.size(); ++i) {
    sum[cm.labels[i]] += channel.values[i];
    ++count[cm.labels[i]];
  }
  std::vector<std::pair<double, int>> means(cm.n_clusters);
  for (int c = 0; c < cm.n_clusters; ++c)
    means[c] = {sum[c] / static_cast<double>(count[c]), c};
  std::sort(means.begin(), means.end());

  std::vector<int> eff(cm.n_clusters, 0);
  int next = 0;
  for (size_t i = 0; i < means.size(); ++i) {
    if (i > 0 && means[i].first - means[i - 1].first > kClusterValueTolerance) ++next;
    eff[means[i].second] = next;
  }
  return eff;
}

}  // namespace detail

/// Per-edge-pixel CDR term for one channel; term = 1 means every ground-truth
/// cluster boundary at this pixel survived in the prediction.
struct CdrEdgeTerm {
  int x = 0;
  int y = 0;
  double term = 0.0;
};

struct CdrChannelDetail {
  bool defined = false;
  double score = 0.0;
  std::vector<CdrEdgeTerm> terms;
};

struct CdrResult {
  double value = 0.0;
  CdrChannelDetail a, b;
};

namespace detail {

inline CdrChannelDetail cdr_channel(const Plane& gt_channel, const Plane& pred_channel,
                                    const KernelSpec& kernel, const CannyParams& edge_params,
                                    const SlicParams& slic_params) {
  CdrChannelDetail out;
  const BinaryMask e = canny(gt_channel, edge_params);
  if (!e.any()) return out;

  const ClusterMap cm_gt = slic(gt_channel, slic_params);
  const ClusterMap cm_pred = slic(pred_channel, slic_params);
  const std::vector<int> eff_gt = effective_labels(cm_gt, gt_channel);
  const std::vector<int> eff_pred = effective_labels(cm_pred, pred_channel);

  const int r = kernel.radius();
  const int w = e.width, h = e.height;
  double total = 0.0;
  size_t included = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!e.at(x, y)) continue;
      const int gt_here = eff_gt[cm_gt.at(x, y)];
      const int pred_here = eff_pred[cm_pred.at(x, y)];
      int omega = 0, same_in_pred = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
          if (eff_gt[cm_gt.at(nx, ny)] == gt_here) continue;
          ++omega;
          if (eff_pred[cm_pred.at(nx, ny)] == pred_here) ++same_in_pred;
        }
      }
      if (omega == 0) continue;  // no differing-cluster neighbor in the window
      const double term = 1.0 - static_cast<double>(same_in_pred) / omega;
      out.terms.push_back({x, y, term});
      total += term;
      ++included;
    }
  }
  if (included == 0) return out;
  out.defined = true;
  out.score = total / static_cast<double>(included);
  return out;
}

}  // namespace detail

/// Cluster Discrepancy Ratio with per-pixel detail. One score per chroma
/// channel, averaged; a channel with no usable edge pixels drops out of the
/// average.
inline CdrResult cdr_detailed(const LabImage& gt, const LabImage& pred, const KernelSpec& kernel,
                              const CannyParams& edge_params, const SlicParams& slic_params) {
  kernel.validate();
  if (kernel.full) throw KernelFullUnsupported("cdr: kernel Full is undefined");
  require_same_dims(gt, pred, "cdr");

  CdrResult out;
  out.a = detail::cdr_channel(gt.a, pred.a, kernel, edge_params, slic_params);
  out.b = detail::cdr_channel(gt.b, pred.b, kernel, edge_params, slic_params);
  if (!out.a.defined && !out.b.defined)
    throw NoEdges("cdr: no chroma edges in either channel");
  if (out.a.defined && out.b.defined)
    out.value = 0.5 * (out.a.score + out.b.score);
  else
    out.value = out.a.defined ? out.a.score : out.b.score;
  return out;
}

/// Cluster Discrepancy Ratio in [0,1]; higher = better boundary preservation.
inline double cdr(const LabImage& gt, const LabImage& pred, const KernelSpec& kernel,
                  const CannyParams& edge_params, const SlicParams& slic_params) {
  return cdr_detailed(gt, pred, kernel, edge_params, slic_params).value;
}

struct ScoreParams {
  CannyParams canny;
  SlicParams slic;
  int region_radius = 3;
  std::uint64_t seed = 0;
};

/// Structured scoring output. Metrics whose inputs were absent are left
/// unset and listed in `skipped`.
struct MetricsReport {
  std::optional<PsnrValue> psnr_global;
  std::optional<PsnrValue> psnr_local;
  std::optional<double> cdr;
  std::optional<double> edge_fidelity;
  std::optional<double> consistency;
  KernelSpec kernel;
  std::vector<std::string> skipped;
  ScoreParams params;
};

/// Full evaluation of one prediction. `init` enables the consistency score;
/// `scribble` enables the local metrics. Local PSNR is measured along the
/// scribble skeleton when it is known, otherwise along the stroke mask.
inline MetricsReport score_pair(const RgbImage& pred, const RgbImage& gt, const RgbImage* init,
                                const Scribble* scribble, const KernelSpec& kernel,
                                const ScoreParams& params) {
  kernel.validate();
  require_same_dims(pred, gt, "score_pair");
  if (init) require_same_dims(pred, *init, "score_pair");
  if (scribble) require_same_dims(pred, scribble->mask, "score_pair");

  MetricsReport report;
  report.kernel = kernel;
  report.params = params;

  report.psnr_global = psnr(pred, gt, nullptr);

  const LabImage lab_pred = rgb_to_lab(pred);
  const LabImage lab_gt = rgb_to_lab(gt);

  if (scribble) {
    const BinaryMask& along =
        scribble->skeleton.any() ? scribble->skeleton : scribble->mask;
    const BinaryMask region = local_region(along, kernel);
    report.psnr_local = psnr(pred, gt, kernel.full ? nullptr : &region);

    const RegionMask m = region_mask(*scribble, params.region_radius);
    report.edge_fidelity = edge_fidelity(lab_pred, lab_gt, m);
    if (init) {
      report.consistency = consistency_score(lab_pred, rgb_to_lab(*init), m);
    } else {
      report.skipped.push_back("consistency");
    }
  } else {
    report.skipped.push_back("psnr_local");
    report.skipped.push_back("edge_fidelity");
    report.skipped.push_back("consistency");
  }

  if (kernel.full) {
    report.skipped.push_back("cdr");
  } else {
    report.cdr = cdr(lab_gt, lab_pred, kernel, params.canny, params.slic);
  }
  return report;
}

}  // namespace bleedmeter
