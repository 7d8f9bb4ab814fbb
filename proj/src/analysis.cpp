// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#include "cghw/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "cghw/errors.hpp"

namespace cghw {

namespace {

void check_nonempty(const GrayImage& img) {
  if (img.empty()) {
    throw DimensionError("metric of an empty image");
  }
}

void check_same_shape(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionError("images differ in size: " + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()));
  }
}

}  // namespace

Histogram histogram(const GrayImage& img) {
  Histogram counts{};
  for (std::uint8_t p : img.pixels()) {
    ++counts[p];
  }
  return counts;
}

double mean_intensity(const GrayImage& img) {
  check_nonempty(img);
  std::uint64_t sum = 0;
  for (std::uint8_t p : img.pixels()) {
    sum += p;
  }
  return static_cast<double>(sum) / static_cast<double>(img.size());
}

EntropyResult entropy(const GrayImage& img) {
  check_nonempty(img);
  const Histogram counts = histogram(img);
  const double total = static_cast<double>(img.size());
  double h = 0.0;
  for (std::uint64_t c : counts) {
    if (c == 0) {
      continue;
    }
    const double p = static_cast<double>(c) / total;
    h += p * std::log2(total / static_cast<double>(c));
  }
  return {h, h / 8.0};
}

double correlation_of_samples(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw DimensionError("correlation needs two equally sized, nonempty samples");
  }
  const double n = static_cast<double>(x.size());
  double ex = 0.0, ey = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ex += x[i];
    ey += y[i];
  }
  ex /= n;
  ey /= n;
  double dx = 0.0, dy = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dx += (x[i] - ex) * (x[i] - ex);
    dy += (y[i] - ey) * (y[i] - ey);
    cov += (x[i] - ex) * (y[i] - ey);
  }
  if (dx == 0.0 || dy == 0.0) {
    throw DomainError("correlation undefined for a constant sample");
  }
  return (cov / n) / (std::sqrt(dx / n) * std::sqrt(dy / n));
}

double correlation(const GrayImage& img, Direction dir, std::size_t pairs,
                   std::uint64_t rng_seed) {
  const std::size_t di = dir == Direction::kHorizontal ? 0 : 1;
  const std::size_t dj = dir == Direction::kVertical ? 0 : 1;
  if (img.height() <= di || img.width() <= dj || pairs == 0) {
    throw DimensionError("image too small for adjacent-pixel sampling");
  }
  std::mt19937_64 gen(rng_seed);
  std::uniform_int_distribution<std::size_t> row(0, img.height() - 1 - di);
  std::uniform_int_distribution<std::size_t> col(0, img.width() - 1 - dj);

  // Pixel values are small integers, so exact integer moments make the result
  // independent of summation order.
  std::int64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t i = row(gen);
    const std::size_t j = col(gen);
    const std::int64_t x = img.at(i, j);
    const std::int64_t y = img.at(i + di, j + dj);
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const auto n = static_cast<std::int64_t>(pairs);
  // N^2 D(x) = N sxx - sx^2, likewise for y and Cov.
  const std::int64_t vx = n * sxx - sx * sx;
  const std::int64_t vy = n * syy - sy * sy;
  const std::int64_t cv = n * sxy - sx * sy;
  if (vx == 0 || vy == 0) {
    throw DomainError("correlation undefined for a constant sample");
  }
  return static_cast<double>(cv) /
         (std::sqrt(static_cast<double>(vx)) * std::sqrt(static_cast<double>(vy)));
}

double npcr(const GrayImage& c1, const GrayImage& c2) {
  check_same_shape(c1, c2);
  check_nonempty(c1);
  std::uint64_t diff = 0;
  for (std::size_t t = 0; t < c1.size(); ++t) {
    diff += c1.pixels()[t] != c2.pixels()[t] ? 1 : 0;
  }
  return 100.0 * static_cast<double>(diff) / static_cast<double>(c1.size());
}

double uaci(const GrayImage& c1, const GrayImage& c2) {
  check_same_shape(c1, c2);
  check_nonempty(c1);
  std::uint64_t sum = 0;
  for (std::size_t t = 0; t < c1.size(); ++t) {
    const int d = static_cast<int>(c1.pixels()[t]) - static_cast<int>(c2.pixels()[t]);
    sum += static_cast<std::uint64_t>(d < 0 ? -d : d);
  }
  return 100.0 * static_cast<double>(sum) / (255.0 * static_cast<double>(c1.size()));
}

MetricsReport analyze(const GrayImage& img, const GrayImage* reference, std::uint64_t seed,
                      std::size_t pairs) {
  MetricsReport r;
  r.width = img.width();
  r.height = img.height();
  r.histogram = histogram(img);
  r.mean_intensity = mean_intensity(img);
  const EntropyResult e = entropy(img);
  r.entropy_bits = e.bits;
  r.normalized_entropy = e.normalized;
  r.pairs = pairs;
  r.seed = seed;
  auto corr = [&](Direction d) -> std::optional<double> {
    try {
      return correlation(img, d, pairs, seed);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };
  r.corr_h = corr(Direction::kHorizontal);
  r.corr_v = corr(Direction::kVertical);
  r.corr_d = corr(Direction::kDiagonal);
  if (reference != nullptr) {
    r.npcr_percent = npcr(img, *reference);
    r.uaci_percent = uaci(img, *reference);
  }
  return r;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "undefined"; }

}  // namespace

std::string to_text(const MetricsReport& r) {
  std::ostringstream out;
  out << "width " << r.width << '\n';
  out << "height " << r.height << '\n';
  out << "mean_intensity " << fmt(r.mean_intensity) << '\n';
  out << "entropy_bits " << fmt(r.entropy_bits) << '\n';
  out << "normalized_entropy " << fmt(r.normalized_entropy) << '\n';
  out << "corr_h " << fmt(r.corr_h) << '\n';
  out << "corr_v " << fmt(r.corr_v) << '\n';
  out << "corr_d " << fmt(r.corr_d) << '\n';
  out << "corr_pairs " << r.pairs << '\n';
  out << "corr_seed " << r.seed << '\n';
  if (r.npcr_percent) out << "npcr_percent " << fmt(r.npcr_percent) << '\n';
  if (r.uaci_percent) out << "uaci_percent " << fmt(r.uaci_percent) << '\n';
  out << "histogram";
  for (std::uint64_t c : r.histogram) out << ' ' << c;
  out << '\n';
  return out.str();
}

std::string to_json(const MetricsReport& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json j;
  j["width"] = r.width;
  j["height"] = r.height;
  j["mean_intensity"] = r.mean_intensity;
  j["entropy_bits"] = r.entropy_bits;
  j["normalized_entropy"] = r.normalized_entropy;
  j["corr_h"] = opt(r.corr_h);
  j["corr_v"] = opt(r.corr_v);
  j["corr_d"] = opt(r.corr_d);
  j["corr_pairs"] = r.pairs;
  j["corr_seed"] = r.seed;
  if (r.npcr_percent) j["npcr_percent"] = *r.npcr_percent;
  if (r.uaci_percent) j["uaci_percent"] = *r.uaci_percent;
  j["histogram"] = r.histogram;
  return j.dump(2) + "\n";
}

}  // namespace cghw
