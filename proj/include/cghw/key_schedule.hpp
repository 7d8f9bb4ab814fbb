// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>

#include "cghw/chaotic_map.hpp"
#include "cghw/image.hpp"

namespace cghw {

inline constexpr int kStreamCount = 3;

enum class Provenance { kDerivedFromImage, kUserSupplied };

/// How the sub-band rows and columns are shuffled.
enum class PermutationVariant {
  kKeyed,     // ranking of S1 values; invertible
  kDataSort,  // sort by row/column means of each band; encryption only
};

struct StreamKey {
  ChaoticParams params;
  std::size_t burn_in = kDefaultBurnIn;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

struct SeedPair {
  std::uint8_t lambda = 0;
  std::uint8_t mu = 0;

  friend bool operator==(const SeedPair&, const SeedPair&) = default;
};

/// Secret shared between encryptor and decryptor: parameters of S1, S2, S3.
struct KeyMaterial {
  std::array<StreamKey, kStreamCount> streams{};
  Provenance provenance = Provenance::kUserSupplied;
  /// Only meaningful for image-derived keys.
  std::array<SeedPair, kStreamCount> seed_pairs{};
  bool strict_eq14 = false;
  PermutationVariant permutation = PermutationVariant::kKeyed;

  const StreamKey& stream(int k) const { return streams.at(static_cast<std::size_t>(k - 1)); }
  StreamKey& stream(int k) { return streams.at(static_cast<std::size_t>(k - 1)); }

  /// Equality of everything the cipher consumes (parameters, burn-in, flags).
  bool same_secret(const KeyMaterial& other) const;
};

/// Column-sum / row-sum bytes for index `index` (1-based):
///   lambda = (sum_i P(i, index) mod max(1, floor(mean P))) xor 255
///   mu     = (sum_j P(index, j) mod max(1, floor(mean P))) xor 255
SeedPair derive_seed_pair(const GrayImage& image, std::size_t index);

/// Seed and control parameter for stream k from its byte pair. The stream uses
/// degree N = k + 1; a = N(1+x)/2 by default, N(1+x) when strict.
ChaoticParams derive_stream_params(SeedPair pair, int k, bool strict_eq14 = false);

/// Replacement seed for a raw x in {0, 1/2, 1}.
double degenerate_seed_replacement(int k);

struct DeriveOptions {
  bool strict_eq14 = false;
  PermutationVariant permutation = PermutationVariant::kKeyed;
  std::size_t burn_in = kDefaultBurnIn;
};

/// Full key schedule for an image with even dimensions >= 4.
KeyMaterial derive_all(const GrayImage& image, const DeriveOptions& options = {});

}  // namespace cghw
