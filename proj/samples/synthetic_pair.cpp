// Builds a synthetic ground-truth/bled pair, generates a pseudo-scribble,
// scores the pair, and prints the JSON report. A minimal end-to-end tour of
// the library API; run it with an output directory to also get the PNGs.

#include <filesystem>
#include <iostream>

#include "bleedmeter/bleedmeter.hpp"

using namespace bleedmeter;

namespace {

RgbImage two_region(int w, int h, int split) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      img.at(x, y, 0) = x < split ? 200 : 40;
      img.at(x, y, 1) = x < split ? 60 : 170;
      img.at(x, y, 2) = 60;
    }
  return img;
}

// Fake a color-bleeding output: the left color spills `extent` pixels past
// the boundary, then gets softened a little.
RgbImage bleed(int w, int h, int split, int extent, double soften) {
  LabImage lab = rgb_to_lab(two_region(w, h, split + extent));
  lab.a = gaussian_blur(lab.a, soften);
  lab.b = gaussian_blur(lab.b, soften);
  return lab_to_rgb(lab);
}

}  // namespace

int main(int argc, char** argv) {
  const RgbImage gt = two_region(128, 128, 64);
  const RgbImage init = bleed(128, 128, 64, 4, 1.5);  // heavy bleeding: the "before"
  const RgbImage pred = bleed(128, 128, 64, 1, 0.7);  // milder bleeding: the "after"

  ScribbleParams sp;
  sp.canny_gt = profile_canny_params("imagenet");
  sp.seed = 42;
  const Scribble scribble = generate_pseudo_scribble(rgb_to_lab(gt), rgb_to_lab(init), sp);
  std::cout << "scribble: width " << scribble.width << ", " << scribble.mask.count()
            << " px over component " << scribble.source_component_id << "\n";

  ScoreParams params;
  params.canny = sp.canny_gt;
  params.seed = sp.seed;
  const MetricsReport report =
      score_pair(pred, gt, &init, &scribble, KernelSpec::of(7), params);
  std::cout << report_to_json(report);

  if (argc > 1) {
    const std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);
    write_png_rgb((dir / "gt.png").string(), gt);
    write_png_rgb((dir / "init.png").string(), init);
    write_png_rgb((dir / "pred.png").string(), pred);
    write_png_mask((dir / "scribble.png").string(), scribble.mask);
    std::cout << "wrote PNGs to " << dir.string() << "\n";
  }
  return 0;
}
