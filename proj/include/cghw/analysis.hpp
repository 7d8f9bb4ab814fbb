// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "cghw/image.hpp"

namespace cghw {

using Histogram = std::array<std::uint64_t, 256>;

enum class Direction { kHorizontal, kVertical, kDiagonal };

inline constexpr std::size_t kDefaultPairs = 3000;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct EntropyResult {
  double bits = 0.0;
  double normalized = 0.0;
};

Histogram histogram(const GrayImage& img);
double mean_intensity(const GrayImage& img);
/// Shannon entropy over 256 levels; empty bins contribute nothing.
EntropyResult entropy(const GrayImage& img);

/// r = Cov(x,y) / sqrt(D(x) D(y)) with 1/N estimators.
/// Throws DomainError when either sample is constant.
double correlation_of_samples(std::span<const double> x, std::span<const double> y);

/// Correlation of `pairs` uniformly sampled adjacent pixel pairs. The sampling is a
/// pure function of rng_seed.
double correlation(const GrayImage& img, Direction dir, std::size_t pairs = kDefaultPairs,
                   std::uint64_t rng_seed = kDefaultSeed);

/// Percentage of positions where the two images differ.
double npcr(const GrayImage& c1, const GrayImage& c2);
/// Mean of |c1 - c2| / 255, in percent.
double uaci(const GrayImage& c1, const GrayImage& c2);

struct MetricsReport {
  std::size_t width = 0;
  std::size_t height = 0;
  Histogram histogram{};
  double mean_intensity = 0.0;
  double entropy_bits = 0.0;
  double normalized_entropy = 0.0;
  /// Empty when the sampled pixels are constant.
  std::optional<double> corr_h, corr_v, corr_d;
  std::optional<double> npcr_percent, uaci_percent;
  std::size_t pairs = kDefaultPairs;
  std::uint64_t seed = kDefaultSeed;
};

MetricsReport analyze(const GrayImage& img, const GrayImage* reference = nullptr,
                      std::uint64_t seed = kDefaultSeed, std::size_t pairs = kDefaultPairs);

/// One "key value" line per metric.
std::string to_text(const MetricsReport& report);
std::string to_json(const MetricsReport& report);

}  // namespace cghw
