// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpcs {

/// Thrown when an input is structurally valid but carries no usable signal
/// (e.g. a constant image handed to a histogram splitter). Callers decide
/// the fallback.
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Axis-aligned integer rectangle. (x, y) is the top-left pixel; the box
/// covers pixel columns x..x+w-1 and rows y..y+h-1. This closed convention
/// is shared by every module.
struct Box {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    long long area() const { return static_cast<long long>(w) * h; }
    double cx() const { return x + w / 2.0; }
    double cy() const { return y + h / 2.0; }

    bool operator==(const Box&) const = default;
};

/// 8-bit grayscale raster, row-major. Samples are stored as 0..255 and read
/// as reals in [0,1] (0 = black) wherever an algorithm is defined on
/// normalized intensities.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(width) * height, fill) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("GrayImage: dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    long long pixel_count() const { return static_cast<long long>(width_) * height_; }

    std::uint8_t at(int x, int y) const {
        assert(in_bounds(x, y));
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t& at(int x, int y) {
        assert(in_bounds(x, y));
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    double norm_at(int x, int y) const { return at(x, y) / 255.0; }

    bool in_bounds(int x, int y) const {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }
    bool contains(const Box& b) const {
        return b.w > 0 && b.h > 0 && b.x >= 0 && b.y >= 0 &&
               b.x + b.w <= width_ && b.y + b.h <= height_;
    }
    Box full_box() const { return Box{0, 0, width_, height_}; }

    const std::vector<std::uint8_t>& data() const { return data_; }
    std::vector<std::uint8_t>& data() { return data_; }

    bool operator==(const GrayImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Binary foreground mask, row-major, 1 = foreground (character ink).
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int width, int height, bool fill = false)
        : width_(width), height_(height),
          mask_(static_cast<std::size_t>(width) * height, fill ? 1 : 0) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("BinaryImage: dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    long long pixel_count() const { return static_cast<long long>(width_) * height_; }

    bool get(int x, int y) const {
        assert(in_bounds(x, y));
        return mask_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    /// Out-of-range coordinates read as background.
    bool get_or_bg(int x, int y) const { return in_bounds(x, y) && get(x, y); }
    void set(int x, int y, bool v) {
        assert(in_bounds(x, y));
        mask_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
    }

    bool in_bounds(int x, int y) const {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    long long count() const {
        long long n = 0;
        for (std::uint8_t v : mask_) n += v;
        return n;
    }
    bool empty_mask() const { return count() == 0; }

    BinaryImage complement() const {
        BinaryImage out(width_, height_);
        for (std::size_t i = 0; i < mask_.size(); ++i) out.mask_[i] = mask_[i] ? 0 : 1;
        return out;
    }

    const std::vector<std::uint8_t>& raw() const { return mask_; }
    std::vector<std::uint8_t>& raw() { return mask_; }

    bool operator==(const BinaryImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> mask_;
};

/// Reads a PNG (8-bit gray or color). Color is reduced with luma weights
/// 0.299/0.587/0.114, rounded to nearest; gray files keep their samples
/// bit-exact.
GrayImage load_gray(const std::string& path);

/// Writes an 8-bit grayscale PNG.
void save_gray(const GrayImage& img, const std::string& path);

/// Extracts the subimage covered by b. b must lie fully inside img.
GrayImage crop(const GrayImage& img, const Box& b);

/// Photometric inversion, for light-on-dark plates.
GrayImage invert(const GrayImage& img);

} // namespace lpcs
