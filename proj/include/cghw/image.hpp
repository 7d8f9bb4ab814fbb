// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cghw {

/// 8-bit grayscale image, row-major. Row index i in [0, height), column j in [0, width).
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(std::size_t width, std::size_t height, std::uint8_t fill = 0)
      : width_(width), height_(height), pixels_(width * height, fill) {}
  GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t& at(std::size_t i, std::size_t j) { return pixels_[i * width_ + j]; }
  std::uint8_t at(std::size_t i, std::size_t j) const { return pixels_[i * width_ + j]; }

  std::span<std::uint8_t> pixels() { return pixels_; }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

}  // namespace cghw
