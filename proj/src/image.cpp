// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#include "cghw/image.hpp"

#include <string>

#include "cghw/errors.hpp"

namespace cghw {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != width_ * height_) {
    throw DimensionError("pixel count " + std::to_string(pixels_.size()) + " != " +
                         std::to_string(width_) + "x" + std::to_string(height_));
  }
}

}  // namespace cghw
