// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "cghw/analysis.hpp"
#include "cghw/cipher.hpp"
#include "cghw/errors.hpp"
#include "test_support.hpp"

using namespace cghw;
using Catch::Approx;

TEST_CASE("keyed permutations", "[cipher]") {
  const std::vector<double> up = {0.1, 0.2, 0.3, 0.4, 0.5};
  const PermutationPair id = keyed_permutations(up, 3, 2);
  CHECK(id.row_perm == std::vector<std::size_t>{0, 1, 2});
  CHECK(id.col_perm == std::vector<std::size_t>{0, 1});

  const std::vector<double> s = {0.9, 0.1, 0.5};
  CHECK(keyed_permutations(s, 3, 0).row_perm == std::vector<std::size_t>{1, 2, 0});

  const std::vector<double> ties = {0.5, 0.2, 0.5, 0.2};
  CHECK(argsort(ties) == std::vector<std::size_t>{1, 3, 0, 2});

  CHECK_THROWS_AS(keyed_permutations(s, 2, 2), DimensionError);
}

TEST_CASE("permutation round trip", "[cipher][property]") {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t h = 1 + gen() % 40, w = 1 + gen() % 40;
    const PermutationPair p = keyed_permutations(testing::random_stream(h + w, gen), h, w);
    std::vector<std::size_t> sorted = p.row_perm;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> iota(h);
    std::iota(iota.begin(), iota.end(), std::size_t{0});
    REQUIRE(sorted == iota);
    const Matrix m = testing::random_matrix(h, w, gen);
    REQUIRE(unpermute(permute(m, p), p) == m);
  }
  CHECK_THROWS_AS(invert_permutation(std::vector<std::size_t>{0, 0}), DomainError);
  CHECK_THROWS_AS(permute(Matrix(2, 2), PermutationPair{{0}, {0, 1}}), DimensionError);
}

TEST_CASE("data-sorted permutations order rows and columns by mean", "[cipher]") {
  Matrix b(3, 2);
  const double v[3][2] = {{5, 1}, {0, 0}, {2, 9}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) b(i, j) = v[i][j];
  const PermutationPair p = data_sorted_permutations(b);
  CHECK(p.row_perm == std::vector<std::size_t>{1, 0, 2});
  CHECK(p.col_perm == std::vector<std::size_t>{0, 1});
}

TEST_CASE("xor mask", "[cipher]") {
  std::mt19937_64 gen(3);
  const std::vector<double> stream = testing::random_stream(100, gen);
  std::vector<std::uint16_t> samples(100);
  for (auto& s : samples) s = static_cast<std::uint16_t>(gen() & 0xFFFF);
  CHECK(xor_mask(xor_mask(samples, stream, 16), stream, 16) == samples);

  const std::vector<double> zeros(3, 0.0);
  const std::vector<std::uint16_t> few = {1, 2, 250};
  CHECK(xor_mask(few, zeros, 8) == few);

  const std::vector<double> one = {1.0};
  CHECK(xor_mask(std::vector<std::uint16_t>{0xFF}, one, 8) == std::vector<std::uint16_t>{0});
  CHECK(xor_mask(std::vector<std::uint16_t>{0}, one, 16) ==
        std::vector<std::uint16_t>{0xFFFF});
  // floor(0.5 * 255) = 127
  CHECK(xor_mask(std::vector<std::uint16_t>{0}, std::vector<double>{0.5}, 8)[0] == 127);

  CHECK_THROWS_AS(xor_mask(few, std::vector<double>{0.1, 0.2}, 8), DimensionError);
  CHECK_THROWS_AS(xor_mask(few, zeros, 12), DomainError);
}

TEST_CASE("quantization error is at most half a step", "[cipher]") {
  std::mt19937_64 gen(8);
  const Matrix g = testing::random_matrix(16, 10, gen, -300.0, 900.0);
  for (int depth : {8, 16}) {
    const Quantized q = quantize(g, depth);
    const double step = (q.qmax - q.qmin) / ((1 << depth) - 1);
    const Matrix back = dequantize(q.samples, 16, 10, q.qmin, q.qmax, depth);
    CHECK(testing::max_abs_diff(back, g) <= step / 2 + 1e-9);
    CHECK(*std::max_element(q.samples.begin(), q.samples.end()) == (1 << depth) - 1);
    CHECK(*std::min_element(q.samples.begin(), q.samples.end()) == 0);
  }
  const Quantized flat = quantize(Matrix(4, 4, 3.0), 8);
  CHECK(flat.qmin == 3.0);
  CHECK(flat.qmax == 4.0);
  CHECK(std::all_of(flat.samples.begin(), flat.samples.end(), [](auto v) { return v == 0; }));
}

TEST_CASE("stream layout segments are disjoint and cover each stream", "[cipher]") {
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{4, 4}, {8, 12}, {256, 256}}) {
    const StreamLayout l{m, n};
    CHECK(l.row_matrix_offset() == 0);
    CHECK(l.col_matrix_offset() == l.row_matrix_offset() + 2 * m);
    CHECK(l.row_perm_offset() == l.col_matrix_offset() + 2 * n);
    CHECK(l.col_perm_offset() == l.row_perm_offset() + m / 2);
    CHECK(l.col_perm_offset() + n / 2 == l.s1_length());
    CHECK(l.s2_length() == 2 * m + 2 * n);
    CHECK(l.s3_length() == m * n);
  }
}

TEST_CASE("lossless16 round trip is exact", "[cipher][property]") {
  for (int k = 0; k < 20; ++k) {
    const KeyMaterial keys = testing::random_key(1000 + k);
    const GrayImage img = testing::random_image(64, 64, 50 + k);
    REQUIRE(decrypt(encrypt(img, keys), keys) == img);
  }
  for (const auto& [name, img] : testing::corpus()) {
    INFO(name);
    const KeyMaterial keys = derive_all(img);
    REQUIRE(decrypt(encrypt(img, keys, CipherMode::kLossless16), keys) == img);
  }
}

TEST_CASE("non-square images round trip", "[cipher]") {
  const GrayImage img = testing::random_image(12, 6, 9);
  const KeyMaterial keys = derive_all(img);
  const CipherEnvelope env = encrypt(img, keys);
  CHECK(env.width == 12);
  CHECK(env.height == 6);
  CHECK(decrypt(env, keys) == img);
}

TEST_CASE("encryption is deterministic", "[cipher]") {
  const GrayImage img = testing::fixture("camera");
  const KeyMaterial keys = derive_all(img);
  CHECK(encrypt(img, keys) == encrypt(img, keys));
  CHECK(encrypt(img, keys, CipherMode::kPaper8) == encrypt(img, keys, CipherMode::kPaper8));
}

TEST_CASE("tiny change of the mask seed changes almost every sample", "[cipher]") {
  const GrayImage img = testing::fixture("coins");
  const KeyMaterial keys = derive_all(img);
  KeyMaterial other = keys;
  other.stream(3).params.x0 += 1e-10;
  auto changed = [&](CipherMode mode) {
    const CipherEnvelope a = encrypt(img, keys, mode);
    const CipherEnvelope b = encrypt(img, other, mode);
    std::size_t diff = 0;
    for (std::size_t t = 0; t < a.payload.size(); ++t) diff += a.payload[t] != b.payload[t];
    return static_cast<double>(diff) / static_cast<double>(a.payload.size());
  };
  CHECK(changed(CipherMode::kLossless16) > 0.99);
  // 8-bit mask bytes pile up near 0 and 255 (the orbit density is arcsine-like),
  // so independent masks collide more often than 1/256.
  CHECK(changed(CipherMode::kPaper8) > 0.95);
}

TEST_CASE("pipeline sub-bands equal the dense oracle on a 4x4 image", "[cipher]") {
  const GrayImage img = testing::random_image(4, 4, 77);
  const KeyMaterial keys = testing::random_key(5);
  EncryptionTrace trace;
  encrypt(img, keys, CipherMode::kLossless16, &trace);

  // Rebuild the S1 matrices straight from the keystream.
  const KeyStream s1 = orbit(keys.stream(1).params, StreamLayout{4, 4}.s1_length());
  const Matrix r = build_analysis_matrix(s1.segment(0, 8), 4).dense();
  const Matrix c = build_analysis_matrix(s1.segment(8, 8), 4).dense();
  const Matrix f = testing::naive_product(testing::naive_product(r, testing::to_matrix(img)),
                                          testing::naive_transpose(c));
  CHECK(testing::max_abs_diff(assemble(trace.bands), f) < 1e-12);
  CHECK(trace.row1.source() == "S1[0,8)");
  CHECK(trace.col2.source() == "S2[8,16)");
  // Every band is shuffled with the same pair.
  CHECK(permute(trace.bands.hh, trace.perms) == trace.shuffled.hh);
  CHECK(permute(trace.bands.ll, trace.perms) == trace.shuffled.ll);
}

TEST_CASE("paper8 round trip stays within the quantization bound", "[cipher]") {
  const GrayImage img = testing::fixture("camera");
  const KeyMaterial keys = derive_all(img);
  const CipherEnvelope env = encrypt(img, keys, CipherMode::kPaper8);
  CHECK(env.mode == CipherMode::kPaper8);
  CHECK(std::all_of(env.payload.begin(), env.payload.end(), [](auto v) { return v <= 255; }));
  const GrayImage back = decrypt(env, keys);
  int worst = 0;
  for (std::size_t t = 0; t < img.size(); ++t)
    worst = std::max(worst, std::abs(int(img.pixels()[t]) - int(back.pixels()[t])));
  CHECK(worst > 0);   // quantization to 8 bits is lossy
  CHECK(worst <= 32); // corpus-wide calibration lives in the acceptance suite
}

TEST_CASE("wrong key decrypts to noise", "[cipher]") {
  const GrayImage img = testing::fixture("camera");
  const KeyMaterial keys = derive_all(img);
  KeyMaterial wrong = keys;
  wrong.stream(1).params.x0 += 1e-10;
  const GrayImage noise = decrypt(encrypt(img, keys), wrong);
  CHECK(npcr(noise, img) > 99.0);
  CHECK(uaci(noise, img) > 20.0);
  // Out-of-range reconstructions saturate at 0 and 255, which caps the entropy.
  CHECK(entropy(noise).normalized > 0.8);
}

TEST_CASE("encrypt and decrypt reject bad input", "[cipher]") {
  const KeyMaterial keys = testing::random_key(1);
  CHECK_THROWS_AS(encrypt(GrayImage(5, 8, 1), keys), DimensionError);
  CHECK_THROWS_AS(encrypt(GrayImage(2, 2, 1), keys), DimensionError);

  const CipherEnvelope good = encrypt(GrayImage(8, 8, 3), keys);
  CipherEnvelope bad = good;
  bad.format_version = 2;
  CHECK_THROWS_AS(decrypt(bad, keys), FormatError);
  bad = good;
  bad.payload.pop_back();
  CHECK_THROWS_AS(decrypt(bad, keys), DimensionError);
  bad = good;
  bad.qmax = bad.qmin;
  CHECK_THROWS_AS(decrypt(bad, keys), FormatError);
  bad = good;
  bad.mode = CipherMode::kPaper8;  // 16-bit samples no longer fit
  CHECK_THROWS_AS(bad.validate(), FormatError);

  KeyMaterial sorted = keys;
  sorted.permutation = PermutationVariant::kDataSort;
  CHECK_NOTHROW(encrypt(GrayImage(8, 8, 3), sorted));
  CHECK_THROWS_AS(decrypt(good, sorted), DomainError);
}

TEST_CASE("a collapsing keystream aborts encryption", "[cipher]") {
  KeyMaterial keys = testing::random_key(2);
  keys.stream(2).params = ChaoticParams{0.3, 2.05, 2};
  CHECK_THROWS_AS(encrypt(GrayImage(8, 8, 3), keys), DegenerateStreamError);
}

TEST_CASE("all-black image", "[cipher]") {
  const GrayImage black(16, 16, 0);
  const KeyMaterial keys = derive_all(black);
  const CipherEnvelope env = encrypt(black, keys);
  CHECK(env.qmin < env.qmax);
  CHECK(decrypt(env, keys) == black);
  CHECK(decrypt(encrypt(black, keys, CipherMode::kPaper8), keys) == black);
}

TEST_CASE("payload image view", "[cipher]") {
  const GrayImage img = testing::random_image(8, 8, 1);
  const KeyMaterial keys = derive_all(img);
  const CipherEnvelope env = encrypt(img, keys, CipherMode::kPaper8);
  const GrayImage view = payload_image(env);
  CHECK(view.width() == 8);
  CHECK(view.pixels()[5] == env.payload[5]);
  CHECK_THROWS_AS(payload_image(encrypt(img, keys)), DomainError);
}
