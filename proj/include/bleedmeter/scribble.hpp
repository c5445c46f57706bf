#pragma once

#include <cstdint>
#include <vector>

#include "bleedmeter/canny.hpp"
#include "bleedmeter/morphology.hpp"
#include "bleedmeter/rng.hpp"
#include "bleedmeter/types.hpp"

namespace bleedmeter {

/// A synthesized user stroke marking one bleeding edge. `skeleton` is the
/// selected edge component before widening; `mask` is the drawn stroke.
struct Scribble {
  BinaryMask mask;
  BinaryMask skeleton;
  int width = 1;
  int source_component_id = 0;
};

struct ScribbleParams {
  CannyParams canny_gt;
  int width_min = 1;
  int width_max = 5;
  int min_component_length = 5;
  int init_edge_dilation_radius = 1;
  std::uint64_t seed = 0;

  void validate() const {
    canny_gt.validate();
    if (width_min < 1 || width_max > 11 || width_min > width_max)
      throw InvalidWidth("ScribbleParams: width range must lie within [1,11]");
    if (min_component_length < 1)
      throw Error("ScribbleParams: min_component_length must be >= 1");
    if (init_edge_dilation_radius < 0)
      throw Error("ScribbleParams: init_edge_dilation_radius must be >= 0");
  }

  /// Relaxed Canny parameters for the initial colorization.
  CannyParams canny_init() const { return canny_gt.relaxed_by_gap(); }
};

/// Pixels within `radius` Chebyshev distance of a scribble.
struct RegionMask {
  BinaryMask mask;
  int radius = 0;
};

/// Union of the Canny edge maps of the a and b chroma planes. `degenerate`
/// (when non-null) is set when both planes are constant after blur, in which
/// case the mask is empty.
inline BinaryMask chroma_edges(const LabImage& img, const CannyParams& params,
                               bool* degenerate = nullptr) {
  bool deg_a = false, deg_b = false;
  BinaryMask ea = canny(img.a, params, &deg_a);
  BinaryMask eb = canny(img.b, params, &deg_b);
  if (degenerate) *degenerate = deg_a && deg_b;
  for (size_t i = 0; i < ea.bits.size(); ++i) ea.bits[i] |= eb.bits[i];
  return ea;
}

/// Edges present in gt_edges but absent from init_edges, with the init edges
/// dilated by `dilation_radius` to absorb one-pixel drift between the two
/// Canny runs.
inline BinaryMask edge_diff(const BinaryMask& gt_edges, const BinaryMask& init_edges,
                            int dilation_radius) {
  require_same_dims(gt_edges, init_edges, "edge_diff");
  const BinaryMask grown = dilate_chebyshev(init_edges, dilation_radius);
  BinaryMask out(gt_edges.width, gt_edges.height, false);
  for (size_t i = 0; i < out.bits.size(); ++i)
    out.bits[i] = gt_edges.bits[i] && !grown.bits[i];
  return out;
}

/// One 8-connected component of `diff`, chosen uniformly (seeded) among those
/// with at least `min_length` pixels. Returns the chosen component id through
/// `chosen_id` when non-null.
inline BinaryMask select_component(const BinaryMask& diff, int min_length, std::uint64_t seed,
                                   int* chosen_id = nullptr) {
  const ComponentLabels comps = label_components(diff, /*eight_connected=*/true);
  std::vector<int> eligible;
  for (int id = 0; id < comps.n_components(); ++id)
    if (comps.sizes[id] >= static_cast<size_t>(min_length)) eligible.push_back(id);
  if (eligible.empty())
    throw NoBleedingEdge("select_component: no edge component of at least " +
                         std::to_string(min_length) + " pixels");
  SplitMix64 rng(seed);
  const int pick = eligible[rng.below(eligible.size())];
  if (chosen_id) *chosen_id = pick;
  return component_mask(comps, pick);
}

/// Widen an edge component into a stroke with a disk structuring element of
/// diameter `width`. Width 1 leaves the component unchanged.
inline Scribble width_transform(const BinaryMask& component, int width) {
  if (width < 1 || width > 11) throw InvalidWidth("width_transform: width must be in [1,11]");
  if (!component.any()) throw Error("width_transform: component is empty");
  Scribble s;
  s.skeleton = component;
  s.mask = width == 1 ? component : dilate_disk(component, width);
  s.width = width;
  return s;
}

/// Chebyshev dilation of the scribble by `radius`; the support of the masked
/// edge metrics.
inline RegionMask region_mask(const Scribble& scribble, int radius) {
  if (radius < 0) throw Error("region_mask: radius must be >= 0");
  return RegionMask{dilate_chebyshev(scribble.mask, radius), radius};
}

/// Full pseudo-scribble pipeline: chroma edges of the ground truth (strict
/// threshold) and of the initial output (high threshold relaxed by th_gap),
/// the difference of the two, one random eligible component, one random
/// stroke width. Deterministic for a fixed seed.
inline Scribble generate_pseudo_scribble(const LabImage& gt, const LabImage& init,
                                         const ScribbleParams& params) {
  params.validate();
  require_same_dims(gt, init, "generate_pseudo_scribble");

  const BinaryMask gt_edges = chroma_edges(gt, params.canny_gt);
  const BinaryMask init_edges = chroma_edges(init, params.canny_init());
  const BinaryMask diff = edge_diff(gt_edges, init_edges, params.init_edge_dilation_radius);

  SplitMix64 rng(params.seed);
  const ComponentLabels comps = label_components(diff, /*eight_connected=*/true);
  std::vector<int> eligible;
  for (int id = 0; id < comps.n_components(); ++id)
    if (comps.sizes[id] >= static_cast<size_t>(params.min_component_length))
      eligible.push_back(id);
  if (eligible.empty())
    throw NoBleedingEdge("generate_pseudo_scribble: no bleeding edge found");
  const int pick = eligible[rng.below(eligible.size())];
  const int width =
      static_cast<int>(rng.between(params.width_min, params.width_max));

  Scribble s = width_transform(component_mask(comps, pick), width);
  s.source_component_id = pick;
  return s;
}

}  // namespace bleedmeter
