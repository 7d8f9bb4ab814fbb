// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "cghw/analysis.hpp"
#include "cghw/errors.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace cghw;
using Catch::Approx;

namespace {

GrayImage every_value_once() {
  GrayImage img(16, 16);
  for (std::size_t t = 0; t < 256; ++t) img.pixels()[t] = static_cast<std::uint8_t>(t);
  return img;
}

GrayImage complement(const GrayImage& img) {
  GrayImage c = img;
  for (auto& p : c.pixels()) p = static_cast<std::uint8_t>(p ^ 0xFF);
  return c;
}

// Expected UACI (in percent) of two independent uniform 8-bit images, by
// summing over all 256^2 value pairs.
double expected_uaci_uniform() {
  double sum = 0.0;
  for (int u = 0; u < 256; ++u)
    for (int v = 0; v < 256; ++v) sum += std::abs(u - v) / 255.0;
  return 100.0 * sum / (256.0 * 256.0);
}

}  // namespace

TEST_CASE("histogram", "[analysis]") {
  const Histogram h = histogram(GrayImage(4, 4, 7));
  CHECK(h[7] == 16);
  CHECK(std::accumulate(h.begin(), h.end(), std::uint64_t{0}) == 16);
  const Histogram u = histogram(every_value_once());
  CHECK(std::all_of(u.begin(), u.end(), [](auto c) { return c == 1; }));
}

TEST_CASE("histogram conserves the pixel count", "[analysis][property]") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 30; ++trial) {
    const GrayImage img = testing::random_image(1 + gen() % 50, 1 + gen() % 50, gen());
    const Histogram h = histogram(img);
    REQUIRE(std::accumulate(h.begin(), h.end(), std::uint64_t{0}) == img.size());
  }
}

TEST_CASE("entropy", "[analysis]") {
  const EntropyResult uniform = entropy(every_value_once());
  CHECK(uniform.bits == 8.0);
  CHECK(uniform.normalized == 1.0);
  const EntropyResult flat = entropy(GrayImage(9, 3, 200));
  CHECK(flat.bits == 0.0);
  CHECK(flat.normalized == 0.0);

  GrayImage two(4, 1, 10);
  two.pixels()[3] = 20;
  const double expected = 0.75 * std::log2(4.0 / 3.0) + 0.25 * std::log2(4.0);
  CHECK(entropy(two).bits == Approx(expected).margin(1e-15));
  CHECK(entropy(two).bits == Approx(0.8113).margin(1e-4));
  CHECK_THROWS_AS(entropy(GrayImage()), DimensionError);
}

TEST_CASE("entropy bounds and permutation invariance", "[analysis][property]") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 20; ++trial) {
    GrayImage img = testing::random_image(32, 32, gen());
    for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(p >> (trial % 8));
    const EntropyResult e = entropy(img);
    REQUIRE(e.bits >= 0.0);
    REQUIRE(e.bits <= 8.0);
    REQUIRE(e.normalized == e.bits / 8.0);
    GrayImage shuffled = img;
    std::shuffle(shuffled.pixels().begin(), shuffled.pixels().end(), gen);
    REQUIRE(entropy(shuffled).bits == Approx(e.bits).margin(1e-12));
  }
}

TEST_CASE("correlation of explicit samples", "[analysis]") {
  const std::vector<double> x = {1, 2, 3, 4}, y = {2, 4, 6, 8};
  CHECK(correlation_of_samples(x, y) == Approx(1.0).margin(1e-15));
  CHECK(correlation_of_samples(x, x) == Approx(1.0).margin(1e-15));

  std::mt19937_64 gen(4);
  std::vector<double> a(3000), b(3000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<double>(gen() % 256);
    b[i] = 255.0 - a[i];
  }
  CHECK(std::fabs(correlation_of_samples(a, b) + 1.0) < 1e-12);

  const std::vector<double> c(5, 3.0);
  CHECK_THROWS_AS(correlation_of_samples(c, std::vector<double>{1, 2, 3, 4, 5}), DomainError);
  CHECK_THROWS_AS(correlation_of_samples(x, c), DimensionError);
}

TEST_CASE("correlation bounds and affine invariance", "[analysis][property]") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0, 255);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(200), y(200), xs(200), ys(200);
    const double mix = trial / 50.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = u(gen);
      y[i] = mix * x[i] + (1 - mix) * u(gen);
      xs[i] = 3.5 * x[i] - 17.0;
      ys[i] = 0.25 * y[i] + 40.0;
    }
    const double r = correlation_of_samples(x, y);
    REQUIRE(r >= -1.0);
    REQUIRE(r <= 1.0);
    REQUIRE(correlation_of_samples(xs, ys) == Approx(r).margin(1e-12));
  }
}

TEST_CASE("image correlation", "[analysis]") {
  // ramp width below 256 so neighbouring columns never wrap
  const GrayImage ramp = testing::horizontal_ramp(200, 200);
  for (Direction d : {Direction::kHorizontal, Direction::kVertical, Direction::kDiagonal}) {
    CHECK(correlation(ramp, d) == Approx(1.0).margin(1e-12));
  }
  CHECK_THROWS_AS(correlation(GrayImage(20, 20, 9), Direction::kVertical), DomainError);

  const GrayImage noise = testing::random_image(256, 256, 6);
  for (Direction d : {Direction::kHorizontal, Direction::kVertical, Direction::kDiagonal}) {
    const double r = correlation(noise, d, 3000, 42);
    CHECK(std::fabs(r) < 0.06);
    CHECK(correlation(noise, d, 3000, 42) == r);
  }
  CHECK(correlation(noise, Direction::kHorizontal, 3000, 1) !=
        correlation(noise, Direction::kHorizontal, 3000, 2));
  CHECK_THROWS_AS(correlation(GrayImage(1, 1, 0), Direction::kHorizontal), DimensionError);
}

TEST_CASE("npcr", "[analysis]") {
  const GrayImage a = testing::random_image(64, 64, 7);
  CHECK(npcr(a, a) == 0.0);
  CHECK(npcr(a, complement(a)) == 100.0);
  CHECK_THROWS_AS(npcr(a, GrayImage(64, 32)), DimensionError);

  const GrayImage b = testing::random_image(256, 256, 100);
  const GrayImage c = testing::random_image(256, 256, 101);
  CHECK(npcr(b, c) == Approx(100.0 * 255.0 / 256.0).margin(0.15));
}

TEST_CASE("uaci", "[analysis]") {
  const GrayImage a = every_value_once();
  CHECK(uaci(a, a) == 0.0);
  // mean of |2v - 255| / 255 over v = 0..255 is 128/255
  CHECK(uaci(a, complement(a)) == Approx(100.0 * 128.0 / 255.0).margin(1e-12));
  CHECK(uaci(a, complement(a)) == Approx(50.196).margin(1e-3));

  const double ideal = expected_uaci_uniform();
  CHECK(ideal == Approx(33.4635).margin(1e-4));
  const GrayImage b = testing::random_image(256, 256, 200);
  const GrayImage c = testing::random_image(256, 256, 201);
  CHECK(uaci(b, c) == Approx(ideal).margin(0.3));
}

TEST_CASE("npcr and uaci are symmetric and vanish only on equal images", "[analysis][property]") {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 30; ++trial) {
    const GrayImage a = testing::random_image(16, 16, gen());
    GrayImage b = a;
    b.pixels()[gen() % b.size()] ^= static_cast<std::uint8_t>(1 + gen() % 255);
    REQUIRE(npcr(a, b) == npcr(b, a));
    REQUIRE(uaci(a, b) == uaci(b, a));
    REQUIRE(npcr(a, b) > 0.0);
    REQUIRE(uaci(a, b) > 0.0);
  }
}

TEST_CASE("mean intensity", "[analysis]") {
  CHECK(mean_intensity(GrayImage(5, 5, 100)) == 100.0);
  CHECK(mean_intensity(testing::checkerboard(8, 8, 1)) == 127.5);
  CHECK_THROWS_AS(mean_intensity(GrayImage()), DimensionError);
}

TEST_CASE("report formats", "[analysis]") {
  const GrayImage img = testing::random_image(64, 64, 3);
  const GrayImage ref = testing::random_image(64, 64, 4);
  const MetricsReport r = analyze(img, &ref, 42);
  const std::string text = to_text(r);
  for (const char* key : {"entropy_bits ", "normalized_entropy ", "corr_h ", "corr_v ",
                          "corr_d ", "mean_intensity ", "npcr_percent ", "uaci_percent ",
                          "histogram "}) {
    CHECK(text.find(std::string("\n") + key) != std::string::npos);
  }
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["npcr_percent"].get<double>() == Approx(npcr(img, ref)).margin(1e-12));
  CHECK(j["histogram"].size() == 256);
  CHECK(j["corr_seed"].get<int>() == 42);

  const MetricsReport flat = analyze(GrayImage(8, 8, 1));
  CHECK_FALSE(flat.corr_h.has_value());
  CHECK(to_text(flat).find("corr_h undefined") != std::string::npos);
  CHECK(to_text(flat).find("npcr_percent") == std::string::npos);
  CHECK(nlohmann::json::parse(to_json(flat))["corr_v"].is_null());
}
