// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cghw/chaotic_map.hpp"
#include "cghw/image.hpp"
#include "cghw/key_schedule.hpp"
#include "cghw/wavelet.hpp"

namespace cghw {

enum class CipherMode : std::uint8_t {
  kPaper8 = 0,      // 8-bit gradient image, near-lossless
  kLossless16 = 1,  // 16-bit gradient image, exact round trip
};

inline constexpr std::uint8_t kFormatVersion = 1;

int bit_depth(CipherMode mode);

struct CipherEnvelope {
  std::uint8_t format_version = kFormatVersion;
  CipherMode mode = CipherMode::kLossless16;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  double qmin = 0.0;
  double qmax = 1.0;
  /// Row-major masked samples; values fit in bit_depth(mode) bits.
  std::vector<std::uint16_t> payload;

  /// Throws FormatError/DimensionError when the invariants do not hold.
  void validate() const;

  friend bool operator==(const CipherEnvelope&, const CipherEnvelope&) = default;
};

/// Row and column shuffles shared by the four sub-bands.
struct PermutationPair {
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
};

/// Stable argsort: ties keep their original order.
std::vector<std::size_t> argsort(std::span<const double> values);
std::vector<std::size_t> invert_permutation(std::span<const std::size_t> perm);

/// row_perm ranks the first h values, col_perm the next w.
PermutationPair keyed_permutations(std::span<const double> stream, std::size_t h,
                                   std::size_t w);
/// Rows by ascending row mean, then columns by ascending column mean.
PermutationPair data_sorted_permutations(const Matrix& band);

/// out(i, j) = band(row_perm[i], col_perm[j])
Matrix permute(const Matrix& band, const PermutationPair& perms);
Matrix unpermute(const Matrix& band, const PermutationPair& perms);

/// samples[t] xor floor(stream[t] * (2^depth - 1)).
std::vector<std::uint16_t> xor_mask(std::span<const std::uint16_t> samples,
                                    std::span<const double> stream, int depth);

struct Quantized {
  double qmin = 0.0;
  double qmax = 1.0;
  std::vector<std::uint16_t> samples;
};

/// Affine map of [min G, max G] onto {0 .. 2^depth - 1}, round half to even.
Quantized quantize(const Matrix& g, int depth);
Matrix dequantize(std::span<const std::uint16_t> samples, std::size_t rows, std::size_t cols,
                  double qmin, double qmax, int depth);

/// Where each keystream is consumed, for an image with m rows and n columns.
///
///   S1: [0, 2m) row matrix | [2m, 2m+2n) column matrix |
///       next m/2 values row permutation | next n/2 values column permutation
///   S2: [0, 2m) row matrix | [2m, 2m+2n) column matrix
///   S3: m*n mask values, row-major
struct StreamLayout {
  std::size_t rows;
  std::size_t cols;

  std::size_t s1_length() const { return 2 * rows + 2 * cols + rows / 2 + cols / 2; }
  std::size_t s2_length() const { return 2 * rows + 2 * cols; }
  std::size_t s3_length() const { return rows * cols; }
  std::size_t row_matrix_offset() const { return 0; }
  std::size_t col_matrix_offset() const { return 2 * rows; }
  std::size_t row_perm_offset() const { return 2 * rows + 2 * cols; }
  std::size_t col_perm_offset() const { return row_perm_offset() + rows / 2; }
};

struct CipherStreams {
  KeyStream s1;
  KeyStream s2;
  KeyStream s3;
};

CipherStreams generate_streams(const KeyMaterial& keys, const StreamLayout& layout);

/// Intermediate values of one encryption.
struct EncryptionTrace {
  AnalysisMatrix row1, col1, row2, col2;
  PermutationPair perms;
  SubBands bands;
  SubBands shuffled;
  Matrix gradient;
};

CipherEnvelope encrypt(const GrayImage& plain, const KeyMaterial& keys,
                       CipherMode mode = CipherMode::kLossless16,
                       EncryptionTrace* trace = nullptr);

GrayImage decrypt(const CipherEnvelope& envelope, const KeyMaterial& keys);

/// paper8 payload viewed as an 8-bit image.
GrayImage payload_image(const CipherEnvelope& envelope);

}  // namespace cghw
