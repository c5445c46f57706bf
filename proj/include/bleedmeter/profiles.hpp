#pragma once

#include <string>
#include <vector>

#include "bleedmeter/canny.hpp"
#include "bleedmeter/types.hpp"

namespace bleedmeter {

// Edge-extractor settings tuned per source dataset. Photographic sets share
// one profile; line-art sets run a tighter blur or higher threshold.
inline CannyParams profile_canny_params(const std::string& name) {
  if (name == "imagenet" || name == "coco" || name == "places")
    return CannyParams{1.2, 0.7, 0.2, 0.4};
  if (name == "danbooru") return CannyParams{0.7, 0.8, 0.2, 0.5};
  if (name == "yumi") return CannyParams{1.3, 0.7, 0.2, 0.4};
  throw Error("unknown profile: " + name);
}

inline const std::vector<std::string>& profile_names() {
  static const std::vector<std::string> names = {"imagenet", "coco", "places", "danbooru",
                                                 "yumi"};
  return names;
}

}  // namespace bleedmeter
