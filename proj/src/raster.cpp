// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#include "lpcs/raster.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>

namespace lpcs {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    double v = 0.299 * r + 0.587 * g + 0.114 * b;
    long rounded = std::lround(v);
    if (rounded < 0) rounded = 0;
    if (rounded > 255) rounded = 255;
    return static_cast<std::uint8_t>(rounded);
}

} // namespace

GrayImage load_gray(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("load_gray: cannot open " + path);

    png_byte header[8];
    if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8) != 0)
        throw std::runtime_error("load_gray: not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("load_gray: libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("load_gray: libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("load_gray: corrupt PNG: " + path);
    }

    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    int color_type = png_get_color_type(png, info);
    int bit_depth = png_get_bit_depth(png, info);

    if (w == 0 || h == 0) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("load_gray: zero-dimension image: " + path);
    }

    // Normalize every input to 8-bit gray or 8-bit RGB, dropping alpha.
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    int channels = png_get_channels(png, info);
    std::size_t rowbytes = png_get_rowbytes(png, info);
    std::vector<png_byte> pixels(rowbytes * h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = pixels.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage out(static_cast<int>(w), static_cast<int>(h));
    if (channels == 1) {
        for (png_uint_32 y = 0; y < h; ++y)
            for (png_uint_32 x = 0; x < w; ++x)
                out.at(static_cast<int>(x), static_cast<int>(y)) = rows[y][x];
    } else if (channels == 3) {
        for (png_uint_32 y = 0; y < h; ++y)
            for (png_uint_32 x = 0; x < w; ++x) {
                png_bytep p = rows[y] + 3 * x;
                out.at(static_cast<int>(x), static_cast<int>(y)) = luma(p[0], p[1], p[2]);
            }
    } else {
        throw std::runtime_error("load_gray: unsupported channel count in " + path);
    }
    return out;
}

void save_gray(const GrayImage& img, const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("save_gray: cannot open " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("save_gray: libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("save_gray: libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("save_gray: write failed: " + path);
    }

    png_init_io(png, fp.get());
    png_set_IHDR(png, info, img.width(), img.height(), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_bytep> rows(img.height());
    auto* base = const_cast<std::uint8_t*>(img.data().data());
    for (int y = 0; y < img.height(); ++y)
        rows[y] = base + static_cast<std::size_t>(y) * img.width();
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

GrayImage crop(const GrayImage& img, const Box& b) {
    if (!img.contains(b))
        throw std::out_of_range("crop: box outside image");
    GrayImage out(b.w, b.h);
    for (int j = 0; j < b.h; ++j)
        for (int i = 0; i < b.w; ++i)
            out.at(i, j) = img.at(b.x + i, b.y + j);
    return out;
}

GrayImage invert(const GrayImage& img) {
    GrayImage out = img;
    for (auto& v : out.data()) v = static_cast<std::uint8_t>(255 - v);
    return out;
}

} // namespace lpcs
