// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#include "cghw/cipher.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cghw/errors.hpp"

namespace cghw {

int bit_depth(CipherMode mode) { return mode == CipherMode::kPaper8 ? 8 : 16; }

namespace {

std::uint32_t max_sample(int depth) { return (1u << depth) - 1u; }

void check_plain_shape(std::size_t width, std::size_t height) {
  if (width < 4 || height < 4 || width % 2 != 0 || height % 2 != 0) {
    throw DimensionError("image must have even dimensions >= 4, got " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
}

std::string segment_name(const char* stream, std::size_t offset, std::size_t count) {
  return std::string(stream) + "[" + std::to_string(offset) + "," +
         std::to_string(offset + count) + ")";
}

}  // namespace

void CipherEnvelope::validate() const {
  if (format_version != kFormatVersion) {
    throw FormatError("unsupported envelope version " + std::to_string(format_version));
  }
  if (mode != CipherMode::kPaper8 && mode != CipherMode::kLossless16) {
    throw FormatError("unknown cipher mode " + std::to_string(static_cast<int>(mode)));
  }
  check_plain_shape(width, height);
  if (!(qmin < qmax) || !std::isfinite(qmin) || !std::isfinite(qmax)) {
    throw FormatError("quantization range must satisfy qmin < qmax");
  }
  if (payload.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionError("payload holds " + std::to_string(payload.size()) + " samples, " +
                         "header declares " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  const std::uint32_t top = max_sample(bit_depth(mode));
  for (std::uint16_t s : payload) {
    if (s > top) {
      throw FormatError("payload sample exceeds mode bit depth");
    }
  }
}

std::vector<std::size_t> argsort(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return idx;
}

std::vector<std::size_t> invert_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || inv[perm[i]] != perm.size()) {
      throw DomainError("not a permutation");
    }
    inv[perm[i]] = i;
  }
  return inv;
}

PermutationPair keyed_permutations(std::span<const double> stream, std::size_t h,
                                   std::size_t w) {
  if (stream.size() < h + w) {
    throw DimensionError("permutation needs " + std::to_string(h + w) +
                         " keystream values, got " + std::to_string(stream.size()));
  }
  return {argsort(stream.first(h)), argsort(stream.subspan(h, w))};
}

PermutationPair data_sorted_permutations(const Matrix& band) {
  std::vector<double> row_means(band.rows(), 0.0);
  std::vector<double> col_means(band.cols(), 0.0);
  for (std::size_t i = 0; i < band.rows(); ++i) {
    for (std::size_t j = 0; j < band.cols(); ++j) {
      row_means[i] += band(i, j);
      col_means[j] += band(i, j);
    }
  }
  for (double& v : row_means) v /= static_cast<double>(band.cols());
  for (double& v : col_means) v /= static_cast<double>(band.rows());
  return {argsort(row_means), argsort(col_means)};
}

Matrix permute(const Matrix& band, const PermutationPair& perms) {
  if (perms.row_perm.size() != band.rows() || perms.col_perm.size() != band.cols()) {
    throw DimensionError("permutation sizes do not match the sub-band");
  }
  Matrix out(band.rows(), band.cols());
  for (std::size_t i = 0; i < band.rows(); ++i) {
    for (std::size_t j = 0; j < band.cols(); ++j) {
      out(i, j) = band(perms.row_perm[i], perms.col_perm[j]);
    }
  }
  return out;
}

Matrix unpermute(const Matrix& band, const PermutationPair& perms) {
  return permute(band, {invert_permutation(perms.row_perm), invert_permutation(perms.col_perm)});
}

std::vector<std::uint16_t> xor_mask(std::span<const std::uint16_t> samples,
                                    std::span<const double> stream, int depth) {
  if (depth != 8 && depth != 16) {
    throw DomainError("mask depth must be 8 or 16");
  }
  if (stream.size() < samples.size()) {
    throw DimensionError("mask stream has " + std::to_string(stream.size()) +
                         " values for " + std::to_string(samples.size()) + " samples");
  }
  const double scale = static_cast<double>(max_sample(depth));
  std::vector<std::uint16_t> out(samples.size());
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const auto mask = static_cast<std::uint16_t>(std::floor(stream[t] * scale));
    out[t] = static_cast<std::uint16_t>(samples[t] ^ mask);
  }
  return out;
}

Quantized quantize(const Matrix& g, int depth) {
  const auto [lo, hi] = std::minmax_element(g.data().begin(), g.data().end());
  Quantized q;
  q.qmin = *lo;
  q.qmax = *hi > *lo ? *hi : *lo + 1.0;
  const double top = static_cast<double>(max_sample(depth));
  const double scale = top / (q.qmax - q.qmin);
  q.samples.resize(g.data().size());
  for (std::size_t t = 0; t < q.samples.size(); ++t) {
    const double v = std::nearbyint((g.data()[t] - q.qmin) * scale);
    q.samples[t] = static_cast<std::uint16_t>(std::clamp(v, 0.0, top));
  }
  return q;
}

Matrix dequantize(std::span<const std::uint16_t> samples, std::size_t rows, std::size_t cols,
                  double qmin, double qmax, int depth) {
  if (samples.size() != rows * cols) {
    throw DimensionError("sample count does not match matrix shape");
  }
  const double step = (qmax - qmin) / static_cast<double>(max_sample(depth));
  Matrix g(rows, cols);
  for (std::size_t t = 0; t < samples.size(); ++t) {
    g.data()[t] = qmin + static_cast<double>(samples[t]) * step;
  }
  return g;
}

CipherStreams generate_streams(const KeyMaterial& keys, const StreamLayout& layout) {
  auto make = [&](int k, std::size_t length) {
    OrbitOptions options;
    options.burn_in = keys.stream(k).burn_in;
    return orbit(keys.stream(k).params, length, options);
  };
  return {make(1, layout.s1_length()), make(2, layout.s2_length()),
          make(3, layout.s3_length())};
}

namespace {

SubBands map_bands(const SubBands& b, auto&& fn) {
  return {fn(b.ll), fn(b.lh), fn(b.hl), fn(b.hh)};
}

struct Matrices {
  AnalysisMatrix row1, col1, row2, col2;
};

Matrices build_matrices(const CipherStreams& s, const StreamLayout& layout) {
  const std::size_t m = layout.rows, n = layout.cols;
  const std::size_t ro = layout.row_matrix_offset(), co = layout.col_matrix_offset();
  return {build_analysis_matrix(s.s1.segment(ro, 2 * m), m, segment_name("S1", ro, 2 * m)),
          build_analysis_matrix(s.s1.segment(co, 2 * n), n, segment_name("S1", co, 2 * n)),
          build_analysis_matrix(s.s2.segment(ro, 2 * m), m, segment_name("S2", ro, 2 * m)),
          build_analysis_matrix(s.s2.segment(co, 2 * n), n, segment_name("S2", co, 2 * n))};
}

PermutationPair stream_permutations(const CipherStreams& s, const StreamLayout& layout) {
  const std::size_t h = layout.rows / 2, w = layout.cols / 2;
  return keyed_permutations(s.s1.segment(layout.row_perm_offset(), h + w), h, w);
}

}  // namespace

CipherEnvelope encrypt(const GrayImage& plain, const KeyMaterial& keys, CipherMode mode,
                       EncryptionTrace* trace) {
  check_plain_shape(plain.width(), plain.height());
  const StreamLayout layout{plain.height(), plain.width()};
  const CipherStreams streams = generate_streams(keys, layout);
  const Matrices mats = build_matrices(streams, layout);

  Matrix image(layout.rows, layout.cols);
  std::transform(plain.pixels().begin(), plain.pixels().end(), image.data().begin(),
                 [](std::uint8_t p) { return static_cast<double>(p); });

  SubBands bands = forward1(image, mats.row1, mats.col1);
  SubBands shuffled;
  PermutationPair perms;
  if (keys.permutation == PermutationVariant::kKeyed) {
    perms = stream_permutations(streams, layout);
    shuffled = map_bands(bands, [&](const Matrix& b) { return permute(b, perms); });
  } else {
    shuffled = map_bands(bands, [](const Matrix& b) {
      return permute(b, data_sorted_permutations(b));
    });
  }
  Matrix gradient = inverse1(shuffled, mats.row2, mats.col2);

  const int depth = bit_depth(mode);
  Quantized q = quantize(gradient, depth);

  CipherEnvelope env;
  env.mode = mode;
  env.width = static_cast<std::uint32_t>(plain.width());
  env.height = static_cast<std::uint32_t>(plain.height());
  env.qmin = q.qmin;
  env.qmax = q.qmax;
  env.payload = xor_mask(q.samples, streams.s3.values(), depth);

  if (trace != nullptr) {
    *trace = EncryptionTrace{mats.row1,        mats.col1,      mats.row2,
                             mats.col2,        std::move(perms), std::move(bands),
                             std::move(shuffled), std::move(gradient)};
  }
  return env;
}

GrayImage decrypt(const CipherEnvelope& envelope, const KeyMaterial& keys) {
  envelope.validate();
  if (keys.permutation != PermutationVariant::kKeyed) {
    throw DomainError("data-sorted permutations cannot be inverted; decryption needs a keyed key");
  }
  const StreamLayout layout{envelope.height, envelope.width};
  const CipherStreams streams = generate_streams(keys, layout);
  const Matrices mats = build_matrices(streams, layout);
  const PermutationPair perms = stream_permutations(streams, layout);

  const int depth = bit_depth(envelope.mode);
  const std::vector<std::uint16_t> samples =
      xor_mask(envelope.payload, streams.s3.values(), depth);
  const Matrix gradient =
      dequantize(samples, layout.rows, layout.cols, envelope.qmin, envelope.qmax, depth);

  const SubBands shuffled = forward1(gradient, mats.row2, mats.col2);
  const SubBands bands =
      map_bands(shuffled, [&](const Matrix& b) { return unpermute(b, perms); });
  const Matrix estimate = inverse1(bands, mats.row1, mats.col1);

  GrayImage plain(envelope.width, envelope.height);
  for (std::size_t t = 0; t < plain.size(); ++t) {
    plain.pixels()[t] =
        static_cast<std::uint8_t>(std::clamp(std::nearbyint(estimate.data()[t]), 0.0, 255.0));
  }
  return plain;
}

GrayImage payload_image(const CipherEnvelope& envelope) {
  if (envelope.mode != CipherMode::kPaper8) {
    throw DomainError("only paper8 payloads are 8-bit images");
  }
  std::vector<std::uint8_t> px(envelope.payload.size());
  std::transform(envelope.payload.begin(), envelope.payload.end(), px.begin(),
                 [](std::uint16_t v) { return static_cast<std::uint8_t>(v); });
  return GrayImage(envelope.width, envelope.height, std::move(px));
}

}  // namespace cghw
