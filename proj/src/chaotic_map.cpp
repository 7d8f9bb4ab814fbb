// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#include "cghw/chaotic_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cghw/errors.hpp"

namespace cghw {

namespace {

void check_map_args(double x, double a) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("map argument x=" + std::to_string(x) + " outside [0,1]");
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("control parameter a must be positive and finite");
  }
}

bool near(double x, double target) { return std::fabs(x - target) < kDegeneracyTolerance; }

}  // namespace

void ChaoticParams::validate() const {
  if (!(x0 > 0.0 && x0 < 1.0)) {
    throw DomainError("seed x0 must lie in (0,1)");
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("control parameter a must be positive and finite");
  }
  if (degree < 1) {
    throw DomainError("map degree must be >= 1");
  }
}

std::span<const double> KeyStream::segment(std::size_t offset, std::size_t count) const {
  if (offset > values_.size() || count > values_.size() - offset) {
    throw DimensionError("keystream segment [" + std::to_string(offset) + ", +" +
                         std::to_string(count) + ") exceeds stream length " +
                         std::to_string(values_.size()));
  }
  return std::span<const double>(values_).subspan(offset, count);
}

double phi2(double x, double a) {
  check_map_args(x, a);
  const double d = 2.0 * x - 1.0;
  const double num = a * a * (d * d);
  const double den = 4.0 * x * (1.0 - x) + num;
  return num / den;
}

double phiN(double x, double a, int degree) {
  check_map_args(x, a);
  if (degree < 1) {
    throw DomainError("map degree must be >= 1");
  }
  const double sign = (degree % 2 == 0) ? 1.0 : -1.0;
  const double c = sign * std::cos(2.0 * degree * std::asin(std::sqrt(x)));
  const double a2 = a * a;
  const double value = a2 * (1.0 + c) / ((a2 + 1.0) + (a2 - 1.0) * c);
  // cos() rounding can push the ratio a hair outside the unit interval.
  return std::fmin(1.0, std::fmax(0.0, value));
}

double step(double x, double a, int degree) {
  return degree == 2 ? phi2(x, a) : phiN(x, a, degree);
}

bool remap_degenerate(double& x) {
  if (near(x, 0.0) || near(x, 0.5) || near(x, 1.0)) {
    x = 0.3943 + x * 1e-3;
    return true;
  }
  return false;
}

double gate_variance(std::span<const double> values) {
  const std::size_t n = std::min(values.size(), kGateWindow);
  if (n == 0) {
    return 0.0;
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean += values[i];
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - mean;
    var += d * d;
  }
  return var / static_cast<double>(n);
}

namespace {

KeyStream iterate(const ChaoticParams& params, std::size_t length, std::size_t burn_in,
                  bool reseeded) {
  std::vector<double> values;
  values.reserve(length);
  std::size_t remaps = 0;
  double x = params.x0;
  for (std::size_t i = 0; i < burn_in + length; ++i) {
    x = step(x, params.a, params.degree);
    if (remap_degenerate(x)) {
      ++remaps;
    }
    if (i >= burn_in) {
      values.push_back(x);
    }
  }
  return KeyStream(std::move(values), params, burn_in, remaps, reseeded);
}

}  // namespace

KeyStream orbit(const ChaoticParams& params, std::size_t length, const OrbitOptions& options) {
  params.validate();
  if (length == 0) {
    throw DimensionError("orbit length must be positive");
  }
  KeyStream stream = iterate(params, length, options.burn_in, false);
  if (!options.quality_gate || gate_variance(stream.values()) >= kMinStreamVariance) {
    return stream;
  }
  if (options.recover) {
    ChaoticParams reseed = params;
    reseed.x0 = 0.3943 + params.x0 * 1e-3;
    KeyStream retry = iterate(reseed, length, options.burn_in, true);
    if (gate_variance(retry.values()) >= kMinStreamVariance) {
      return retry;
    }
  }
  throw DegenerateStreamError("keystream collapsed (variance below 1e-4) for x0=" +
                              std::to_string(params.x0) + ", a=" + std::to_string(params.a) +
                              ", degree=" + std::to_string(params.degree));
}

}  // namespace cghw
