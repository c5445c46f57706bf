#include <catch2/catch_amalgamated.hpp>

#include "bleedmeter/color.hpp"
#include "bleedmeter/rng.hpp"
#include "oracles.hpp"

using namespace bleedmeter;

TEST_CASE("rgb_to_lab hits the anchor colors") {
  double L, a, b;

  rgb_to_lab_pixel(0, 0, 0, L, a, b);
  CHECK(L == Catch::Approx(0.0).margin(1e-9));
  CHECK(a == Catch::Approx(0.0).margin(1e-9));
  CHECK(b == Catch::Approx(0.0).margin(1e-9));

  rgb_to_lab_pixel(255, 255, 255, L, a, b);
  CHECK(L == Catch::Approx(100.0).margin(1e-4));
  CHECK(std::fabs(a) < 0.01);
  CHECK(std::fabs(b) < 0.01);

  // Mid gray, frozen from the closed-form reference computation.
  rgb_to_lab_pixel(128, 128, 128, L, a, b);
  CHECK(L == Catch::Approx(53.585013452169036).margin(1e-9));
  CHECK(std::fabs(a) < 0.01);
  CHECK(std::fabs(b) < 0.01);
}

TEST_CASE("rgb_to_lab matches the reference formula on random pixels") {
  SplitMix64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const int r = static_cast<int>(rng.below(256));
    const int g = static_cast<int>(rng.below(256));
    const int b = static_cast<int>(rng.below(256));
    double L, a, bb;
    rgb_to_lab_pixel(static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                     static_cast<std::uint8_t>(b), L, a, bb);
    const auto ref = oracles::srgb_to_lab_reference(r, g, b);
    CHECK(L == Catch::Approx(std::clamp(ref.L, 0.0, 100.0)).margin(1e-9));
    CHECK(a == Catch::Approx(ref.a).margin(1e-9));
    CHECK(bb == Catch::Approx(ref.b).margin(1e-9));
  }
}

TEST_CASE("lab_to_rgb inverts the anchors") {
  std::uint8_t r, g, b;
  lab_to_rgb_pixel(0.0, 0.0, 0.0, r, g, b);
  CHECK(static_cast<int>(r) == 0);
  CHECK(static_cast<int>(g) == 0);
  CHECK(static_cast<int>(b) == 0);

  lab_to_rgb_pixel(53.585013452169036, 0.0, 0.0, r, g, b);
  CHECK(std::abs(static_cast<int>(r) - 128) <= 1);
  CHECK(std::abs(static_cast<int>(g) - 128) <= 1);
  CHECK(std::abs(static_cast<int>(b) - 128) <= 1);
}

TEST_CASE("round trip stays within one 8-bit level per channel") {
  SplitMix64 rng(7);
  for (int i = 0; i < 100000; ++i) {
    const auto r = static_cast<std::uint8_t>(rng.below(256));
    const auto g = static_cast<std::uint8_t>(rng.below(256));
    const auto b = static_cast<std::uint8_t>(rng.below(256));
    double L, a, bb;
    rgb_to_lab_pixel(r, g, b, L, a, bb);
    std::uint8_t r2, g2, b2;
    lab_to_rgb_pixel(L, a, bb, r2, g2, b2);
    REQUIRE(std::abs(static_cast<int>(r) - r2) <= 1);
    REQUIRE(std::abs(static_cast<int>(g) - g2) <= 1);
    REQUIRE(std::abs(static_cast<int>(b) - b2) <= 1);
  }
}

TEST_CASE("image-level conversion keeps L in range and dimensions intact") {
  RgbImage img(5, 4);
  SplitMix64 rng(3);
  for (auto& byte : img.data) byte = static_cast<std::uint8_t>(rng.below(256));
  const LabImage lab = rgb_to_lab(img);
  REQUIRE(lab.width == 5);
  REQUIRE(lab.height == 4);
  for (double v : lab.L.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 100.0);
  }
  const RgbImage back = lab_to_rgb(lab);
  for (size_t i = 0; i < img.data.size(); ++i)
    CHECK(std::abs(static_cast<int>(img.data[i]) - back.data[i]) <= 1);
}

TEST_CASE("resize_bilinear preserves constant images and dimensions") {
  RgbImage img(10, 6);
  for (size_t i = 0; i < img.data.size(); i += 3) {
    img.data[i] = 40;
    img.data[i + 1] = 90;
    img.data[i + 2] = 200;
  }
  const RgbImage out = resize_bilinear(img, 256, 256);
  REQUIRE(out.width == 256);
  REQUIRE(out.height == 256);
  for (size_t i = 0; i < out.data.size(); i += 3) {
    CHECK(static_cast<int>(out.data[i]) == 40);
    CHECK(static_cast<int>(out.data[i + 1]) == 90);
    CHECK(static_cast<int>(out.data[i + 2]) == 200);
  }
}
