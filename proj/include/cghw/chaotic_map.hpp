// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cghw {

/// Seed, control parameter and polynomial degree of a rational order map.
struct ChaoticParams {
  double x0 = 0.5;
  double a = 1.0;
  int degree = 2;

  /// Throws DomainError unless x0 in (0,1), a > 0, degree >= 1. A seed of 1/2
  /// is accepted; its first iterate (0) is caught by the degeneracy rule.
  void validate() const;

  friend bool operator==(const ChaoticParams&, const ChaoticParams&) = default;
};

/// Iterates within this distance of 0, 1/2 or 1 are remapped.
inline constexpr double kDegeneracyTolerance = 1e-12;
/// Streams whose first emitted values have a lower variance are rejected.
inline constexpr double kMinStreamVariance = 1e-4;
inline constexpr std::size_t kGateWindow = 256;
inline constexpr std::size_t kDefaultBurnIn = 100;

struct OrbitOptions {
  std::size_t burn_in = kDefaultBurnIn;
  bool quality_gate = true;
  /// On a failed gate, re-seed once (x0 -> 0.3943 + 1e-3 x0) before giving up.
  bool recover = false;
};

class KeyStream {
 public:
  KeyStream(std::vector<double> values, ChaoticParams params, std::size_t burn_in,
            std::size_t remaps, bool reseeded)
      : values_(std::move(values)),
        params_(params),
        burn_in_(burn_in),
        remaps_(remaps),
        reseeded_(reseeded) {}

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Contiguous slice [offset, offset + count); throws DimensionError if out of range.
  std::span<const double> segment(std::size_t offset, std::size_t count) const;

  const ChaoticParams& params() const { return params_; }
  std::size_t burn_in() const { return burn_in_; }
  /// Number of iterates replaced by the degeneracy rule (burn-in included).
  std::size_t degeneracy_remaps() const { return remaps_; }
  bool reseeded() const { return reseeded_; }

 private:
  std::vector<double> values_;
  ChaoticParams params_;
  std::size_t burn_in_;
  std::size_t remaps_;
  bool reseeded_;
};

/// phi_2(x, a) = a^2 (2x-1)^2 / (4x(1-x) + a^2 (2x-1)^2).
double phi2(double x, double a);

/// General member of the family. The hypergeometric term
/// (-1)^N 2F1(-N, N; 1/2; x) is evaluated as (-1)^N cos(2N asin(sqrt x)).
double phiN(double x, double a, int degree);

/// One step of the map selected by params.degree (the phi2 closed form for degree 2).
double step(double x, double a, int degree);

/// Degeneracy rule: a value within kDegeneracyTolerance of {0, 1/2, 1}
/// becomes 0.3943 + 1e-3 * value. Returns true when the rule fired.
bool remap_degenerate(double& x);

/// Population variance of the first min(kGateWindow, n) values.
double gate_variance(std::span<const double> values);

/// Iterates burn_in times from x0 and then emits `length` iterates.
KeyStream orbit(const ChaoticParams& params, std::size_t length,
                const OrbitOptions& options = {});

}  // namespace cghw
