// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cghw/cipher.hpp"
#include "cghw/image.hpp"
#include "cghw/key_schedule.hpp"

namespace cghw {

// Binary PGM (P5, maxval 255). Header comments are skipped on read.
GrayImage parse_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_pgm(const GrayImage& img);
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const GrayImage& img, const std::filesystem::path& path);

// Ciphertext container, all integers little-endian:
//
//   offset  size  field
//        0     4  magic "CGHW"
//        4     1  version (1)
//        5     1  mode (0 = paper8, 1 = lossless16)
//        6     4  width  (u32)
//       10     4  height (u32)
//       14     8  qmin   (IEEE-754 binary64)
//       22     8  qmax   (IEEE-754 binary64)
//       30     -  payload, row-major, 1 or 2 bytes per sample
inline constexpr std::size_t kEnvelopeHeaderSize = 30;

std::vector<std::uint8_t> serialize_envelope(const CipherEnvelope& env);
CipherEnvelope parse_envelope(std::span<const std::uint8_t> bytes);
CipherEnvelope read_envelope(const std::filesystem::path& path);
void write_envelope(const CipherEnvelope& env, const std::filesystem::path& path);

// Key file: line-oriented text.
//
//   cghw-key 1
//   strict_eq14 0|1
//   permutation keyed|data-sort
//   provenance derived|user
//   stream 1 x0=<%.17g> a=<%.17g> N=<int> burn_in=<int>
//   stream 2 ...
//   stream 3 ...
//   end
std::string serialize_key(const KeyMaterial& keys);
KeyMaterial parse_key(std::string_view text);
KeyMaterial read_key(const std::filesystem::path& path);
void write_key(const KeyMaterial& keys, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary and renames it over `path` on success.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace cghw
