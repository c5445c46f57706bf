#include <catch2/catch_amalgamated.hpp>

#include "bleedmeter/color.hpp"
#include "bleedmeter/scribble.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace bleedmeter;

namespace {

const CannyParams kCanny{1.2, 0.7, 0.2, 0.4};

LabImage split_a_plane(int w, int h, int split_x, double lo, double hi) {
  LabImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      img.L.at(x, y) = 50.0;
      img.a.at(x, y) = x < split_x ? lo : hi;
      img.b.at(x, y) = 0.0;
    }
  return img;
}

}  // namespace

TEST_CASE("chroma_edges of a grayscale image is empty and degenerate") {
  LabImage gray(16, 16);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) gray.L.at(x, y) = (x * 16 + y) % 97;  // luma varies, chroma flat
  bool degenerate = false;
  const BinaryMask m = chroma_edges(gray, kCanny, &degenerate);
  CHECK(degenerate);
  CHECK_FALSE(m.any());
}

TEST_CASE("red/green split gives one vertical chroma edge") {
  const RgbImage rgb = helpers::two_region_rgb(24, 24, 12, {220, 30, 30}, {30, 200, 30});
  const BinaryMask m = chroma_edges(rgb_to_lab(rgb), kCanny);
  REQUIRE(m.any());
  CHECK(label_components(m).n_components() == 1);
  for (int y = 0; y < 24; ++y)
    for (int x = 0; x < 24; ++x)
      if (m.at(x, y)) CHECK(std::abs(x - 12) <= 1);
}

TEST_CASE("a-plane-only split equals canny of the a plane") {
  const LabImage img = split_a_plane(20, 20, 10, -30.0, 40.0);
  const BinaryMask both = chroma_edges(img, kCanny);
  const BinaryMask a_only = canny(img.a, kCanny);
  CHECK(both.bits == a_only.bits);
}

TEST_CASE("edge_diff set algebra") {
  BinaryMask gt(16, 16), init(16, 16);
  for (int y = 2; y < 14; ++y) gt.at(10, y) = 1;

  SECTION("identical maps cancel at radius 0") {
    CHECK_FALSE(edge_diff(gt, gt, 0).any());
  }
  SECTION("empty subtrahend leaves gt unchanged") {
    CHECK(edge_diff(gt, init, 1).bits == gt.bits);
  }
  SECTION("one-pixel drift is absorbed by radius 1 only") {
    for (int y = 2; y < 14; ++y) init.at(11, y) = 1;
    CHECK_FALSE(edge_diff(gt, init, 1).any());
    CHECK(edge_diff(gt, init, 0).bits == gt.bits);
  }
  SECTION("dimension mismatch throws") {
    CHECK_THROWS_AS(edge_diff(gt, BinaryMask(8, 8), 1), DimensionMismatch);
  }
  SECTION("result is always a subset of gt") {
    const BinaryMask noisy = [] {
      SplitMix64 rng(5);
      BinaryMask m(16, 16);
      for (auto& b : m.bits) b = rng.unit() < 0.2;
      return m;
    }();
    const BinaryMask d = edge_diff(gt, noisy, 1);
    for (size_t i = 0; i < d.bits.size(); ++i)
      if (d.bits[i]) CHECK(gt.bits[i]);
  }
}

TEST_CASE("select_component selection rules") {
  BinaryMask diff(32, 32);

  SECTION("single component is always chosen") {
    for (int x = 4; x < 12; ++x) diff.at(x, 5) = 1;
    for (std::uint64_t seed : {0ull, 9ull, 77ull})
      CHECK(select_component(diff, 5, seed).count() == 8);
  }

  SECTION("length filter forces the large component") {
    for (int x = 4; x < 7; ++x) diff.at(x, 2) = 1;    // 3 px
    for (int x = 0; x < 20; ++x) diff.at(x, 20) = 1;  // 20 px
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const BinaryMask chosen = select_component(diff, 5, seed);
      CHECK(chosen.count() == 20);
      CHECK(chosen.at(5, 20));
    }
  }

  SECTION("two eligible components are chosen about evenly") {
    for (int x = 0; x < 10; ++x) diff.at(x, 2) = 1;
    for (int x = 0; x < 10; ++x) diff.at(x, 20) = 1;
    int first = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
      if (select_component(diff, 5, seed).at(0, 2)) ++first;
    CHECK(first >= 35);
    CHECK(first <= 65);
  }

  SECTION("nothing eligible raises NoBleedingEdge") {
    diff.at(3, 3) = 1;
    CHECK_THROWS_AS(select_component(diff, 5, 0), NoBleedingEdge);
  }
}

TEST_CASE("width_transform widens with a disk") {
  BinaryMask line(32, 16);
  for (int x = 5; x < 25; ++x) line.at(x, 8) = 1;

  SECTION("width 1 is the identity") {
    const Scribble s = width_transform(line, 1);
    CHECK(s.mask.bits == line.bits);
    CHECK(s.width == 1);
  }

  SECTION("width 3 matches the brute-force dilation") {
    const Scribble s = width_transform(line, 3);
    const BinaryMask slow = oracles::dilate_by_predicate(line, disk_offsets(3));
    CHECK(s.mask.bits == slow.bits);
    CHECK(s.mask.count() == 62);
    CHECK(s.skeleton.bits == line.bits);
  }

  SECTION("wider strokes cover narrower ones") {
    for (int w1 = 1; w1 <= 11; ++w1)
      for (int w2 = w1; w2 <= 11; ++w2) {
        const Scribble s1 = width_transform(line, w1);
        const Scribble s2 = width_transform(line, w2);
        for (size_t i = 0; i < s1.mask.bits.size(); ++i)
          if (s1.mask.bits[i]) CHECK(s2.mask.bits[i]);
      }
  }

  SECTION("stroke stays within ceil(width/2) of the skeleton") {
    for (int w = 1; w <= 11; ++w) {
      const Scribble s = width_transform(line, w);
      const int bound = (w + 1) / 2;
      const BinaryMask allowed = dilate_chebyshev(line, bound);
      for (size_t i = 0; i < s.mask.bits.size(); ++i)
        if (s.mask.bits[i]) CHECK(allowed.bits[i]);
    }
  }

  SECTION("invalid widths throw") {
    CHECK_THROWS_AS(width_transform(line, 0), InvalidWidth);
    CHECK_THROWS_AS(width_transform(line, 12), InvalidWidth);
  }
}

TEST_CASE("region_mask is a Chebyshev dilation") {
  BinaryMask m(32, 32);
  m.at(16, 16) = 1;
  Scribble s;
  s.mask = m;
  s.skeleton = m;

  CHECK(region_mask(s, 0).mask.bits == m.bits);
  CHECK(region_mask(s, 3).mask.count() == 49);

  // L-shaped scribble against the brute-force union.
  BinaryMask ell(32, 32);
  for (int y = 5; y < 15; ++y) ell.at(5, y) = 1;
  for (int x = 5; x < 12; ++x) ell.at(x, 14) = 1;
  Scribble sl;
  sl.mask = ell;
  const RegionMask r = region_mask(sl, 3);
  const BinaryMask slow = oracles::chebyshev_union(ell, 3);
  REQUIRE(r.mask.bits == slow.bits);

  // Nested radii.
  const RegionMask r1 = region_mask(sl, 1);
  for (size_t i = 0; i < r1.mask.bits.size(); ++i)
    if (r1.mask.bits[i]) CHECK(r.mask.bits[i]);
}

TEST_CASE("generate_pseudo_scribble end to end") {
  const auto [left, right] = helpers::random_color_pair(21);
  const RgbImage gt_rgb = helpers::two_region_rgb(48, 48, 24, left, right);
  const LabImage gt = rgb_to_lab(gt_rgb);

  ScribbleParams params;
  params.canny_gt = kCanny;
  params.seed = 99;

  SECTION("a perfect colorization has no bleeding edge") {
    CHECK_THROWS_AS(generate_pseudo_scribble(gt, gt, params), NoBleedingEdge);
  }

  SECTION("a bled init yields a scribble hugging the boundary") {
    const LabImage init =
        rgb_to_lab(helpers::bleed_two_region(48, 48, 24, left, right, 3, 1.0));
    const Scribble s = generate_pseudo_scribble(gt, init, params);
    REQUIRE(s.mask.any());
    CHECK(s.width >= params.width_min);
    CHECK(s.width <= params.width_max);
    for (int y = 0; y < 48; ++y)
      for (int x = 0; x < 48; ++x)
        if (s.skeleton.at(x, y)) CHECK(std::abs(x - 24) <= 2);

    // The skeleton is a subset of the ground truth's chroma edges.
    const BinaryMask gt_edges = chroma_edges(gt, params.canny_gt);
    for (size_t i = 0; i < s.skeleton.bits.size(); ++i)
      if (s.skeleton.bits[i]) CHECK(gt_edges.bits[i]);

    // Stroke stays within ceil(width/2) of the skeleton.
    const BinaryMask allowed = dilate_chebyshev(s.skeleton, (s.width + 1) / 2);
    for (size_t i = 0; i < s.mask.bits.size(); ++i)
      if (s.mask.bits[i]) CHECK(allowed.bits[i]);
  }

  SECTION("fixed seed reproduces the scribble bit for bit") {
    const LabImage init =
        rgb_to_lab(helpers::bleed_two_region(48, 48, 24, left, right, 3, 1.0));
    const Scribble s1 = generate_pseudo_scribble(gt, init, params);
    const Scribble s2 = generate_pseudo_scribble(gt, init, params);
    CHECK(s1.mask.bits == s2.mask.bits);
    CHECK(s1.skeleton.bits == s2.skeleton.bits);
    CHECK(s1.width == s2.width);
    CHECK(s1.source_component_id == s2.source_component_id);
  }

  SECTION("dimension mismatch throws") {
    CHECK_THROWS_AS(generate_pseudo_scribble(gt, LabImage(8, 8), params), DimensionMismatch);
  }
}
