// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#include "cghw/key_schedule.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "cghw/errors.hpp"

namespace cghw {

bool KeyMaterial::same_secret(const KeyMaterial& other) const {
  return streams == other.streams && strict_eq14 == other.strict_eq14 &&
         permutation == other.permutation;
}

SeedPair derive_seed_pair(const GrayImage& image, std::size_t index) {
  if (image.empty()) {
    throw DimensionError("cannot derive keys from an empty image");
  }
  const std::size_t m = image.height();
  const std::size_t n = image.width();
  if (index < 1 || index > std::min(m, n)) {
    throw DimensionError("seed index " + std::to_string(index) + " outside [1, " +
                         std::to_string(std::min(m, n)) + "]");
  }
  std::uint64_t total = 0;
  for (std::uint8_t p : image.pixels()) {
    total += p;
  }
  const std::uint64_t modulus = std::max<std::uint64_t>(1, total / (m * n));

  std::uint64_t col_sum = 0;
  for (std::size_t i = 0; i < m; ++i) {
    col_sum += image.at(i, index - 1);
  }
  std::uint64_t row_sum = 0;
  for (std::size_t j = 0; j < n; ++j) {
    row_sum += image.at(index - 1, j);
  }
  // The modulus is floor(mean) <= 255, so both residues fit in a byte.
  SeedPair pair;
  pair.lambda = static_cast<std::uint8_t>((col_sum % modulus) ^ 0xFFu);
  pair.mu = static_cast<std::uint8_t>((row_sum % modulus) ^ 0xFFu);
  return pair;
}

double degenerate_seed_replacement(int k) { return 0.123456789 + 0.1 * (k - 1); }

ChaoticParams derive_stream_params(SeedPair pair, int k, bool strict_eq14) {
  if (k < 1 || k > kStreamCount) {
    throw DomainError("stream index k=" + std::to_string(k) + " outside [1,3]");
  }
  const int degree = k + 1;
  const unsigned raw = static_cast<unsigned>(pair.lambda ^ pair.mu);
  // raw / 255 is exactly 0 or 1 at the ends and never exactly 1/2.
  double x = static_cast<double>(raw) / 255.0;
  if (raw == 0 || raw == 255 || 2 * raw == 255) {
    x = degenerate_seed_replacement(k);
  }
  ChaoticParams params;
  params.x0 = x;
  params.degree = degree;
  params.a = strict_eq14 ? degree * (1.0 + x) : degree * (1.0 + x) / 2.0;
  return params;
}

KeyMaterial derive_all(const GrayImage& image, const DeriveOptions& options) {
  const std::size_t m = image.height();
  const std::size_t n = image.width();
  if (m < 4 || n < 4) {
    throw DimensionError("key derivation needs an image of at least 4x4, got " +
                         std::to_string(n) + "x" + std::to_string(m));
  }
  if (m % 2 != 0 || n % 2 != 0) {
    throw DimensionError("image dimensions must be even, got " + std::to_string(n) + "x" +
                         std::to_string(m));
  }
  KeyMaterial keys;
  keys.provenance = Provenance::kDerivedFromImage;
  keys.strict_eq14 = options.strict_eq14;
  keys.permutation = options.permutation;
  for (int k = 1; k <= kStreamCount; ++k) {
    const SeedPair pair = derive_seed_pair(image, static_cast<std::size_t>(k + 1));
    keys.seed_pairs[static_cast<std::size_t>(k - 1)] = pair;
    keys.stream(k).params = derive_stream_params(pair, k, options.strict_eq14);
    keys.stream(k).burn_in = options.burn_in;
  }
  return keys;
}

}  // namespace cghw
