// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#include "lpcs/ocr.hpp"

#include "lpcs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>

namespace lpcs {

void HogParams::validate() const {
    if (bins < 2) throw std::invalid_argument("HogParams: bins must be >= 2");
    if (stride < 1 || stride > cell)
        throw std::invalid_argument("HogParams: stride must be in [1, cell]");
    if (norm_w < cell || norm_h < cell || (norm_w - cell) % stride != 0 ||
        (norm_h - cell) % stride != 0)
        throw std::invalid_argument("HogParams: normalized size must tile the cell grid");
    if (cells_x() < 2 || cells_y() < 2)
        throw std::invalid_argument("HogParams: need at least 2x2 cells for blocks");
}

namespace {

// Center-aligned bilinear resample onto a normalized double raster.
std::vector<double> resize_normalized(const GrayImage& src, int dw, int dh) {
    std::vector<double> out(static_cast<std::size_t>(dw) * dh);
    double sx = static_cast<double>(src.width()) / dw;
    double sy = static_cast<double>(src.height()) / dh;
    for (int y = 0; y < dh; ++y)
        for (int x = 0; x < dw; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            double fy = (y + 0.5) * sy - 0.5;
            int x0 = static_cast<int>(std::floor(fx));
            int y0 = static_cast<int>(std::floor(fy));
            double ax = fx - x0, ay = fy - y0;
            auto v = [&](int px, int py) {
                px = std::clamp(px, 0, src.width() - 1);
                py = std::clamp(py, 0, src.height() - 1);
                return src.norm_at(px, py);
            };
            double top = v(x0, y0) * (1 - ax) + v(x0 + 1, y0) * ax;
            double bot = v(x0, y0 + 1) * (1 - ax) + v(x0 + 1, y0 + 1) * ax;
            out[static_cast<std::size_t>(y) * dw + x] = top * (1 - ay) + bot * ay;
        }
    return out;
}

char class_at(const std::string& labels, std::size_t i) { return labels[i]; }

bool class_allowed(char c, ClassFilter f) {
    switch (f) {
        case ClassFilter::All: return true;
        case ClassFilter::Letters: return c >= 'A' && c <= 'Z';
        case ClassFilter::Digits: return c >= '0' && c <= '9';
    }
    return true;
}

} // namespace

std::vector<double> hog_descriptor(const GrayImage& chip, const HogParams& p) {
    p.validate();
    const int w = p.norm_w, h = p.norm_h;
    std::vector<double> img = resize_normalized(chip, w, h);
    auto px = [&](int x, int y) {
        x = std::clamp(x, 0, w - 1);
        y = std::clamp(y, 0, h - 1);
        return img[static_cast<std::size_t>(y) * w + x];
    };

    // Per-pixel magnitude and unsigned orientation bin.
    std::vector<double> mag(img.size());
    std::vector<int> bin(img.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double gx = (px(x + 1, y) - px(x - 1, y)) / 2.0;
            double gy = (px(x, y + 1) - px(x, y - 1)) / 2.0;
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            mag[i] = std::hypot(gx, gy);
            double theta = std::atan2(gy, gx);
            if (theta < 0) theta += std::numbers::pi;
            if (theta >= std::numbers::pi) theta -= std::numbers::pi;
            int b = static_cast<int>(theta / std::numbers::pi * p.bins);
            bin[i] = std::min(b, p.bins - 1);
        }

    const int cx = p.cells_x(), cy = p.cells_y();
    std::vector<double> cells(static_cast<std::size_t>(cx) * cy * p.bins, 0.0);
    for (int j = 0; j < cy; ++j)
        for (int i = 0; i < cx; ++i) {
            double* hist = &cells[(static_cast<std::size_t>(j) * cx + i) * p.bins];
            int x0 = i * p.stride, y0 = j * p.stride;
            for (int y = y0; y < y0 + p.cell; ++y)
                for (int x = x0; x < x0 + p.cell; ++x) {
                    std::size_t k = static_cast<std::size_t>(y) * w + x;
                    hist[bin[k]] += mag[k];
                }
        }

    std::vector<double> desc;
    desc.reserve(p.descriptor_size());
    for (int j = 0; j + 1 < cy; ++j)
        for (int i = 0; i + 1 < cx; ++i) {
            std::size_t start = desc.size();
            for (int dj = 0; dj < 2; ++dj)
                for (int di = 0; di < 2; ++di) {
                    const double* hist =
                        &cells[(static_cast<std::size_t>(j + dj) * cx + (i + di)) * p.bins];
                    desc.insert(desc.end(), hist, hist + p.bins);
                }
            double norm = 0.0;
            for (std::size_t k = start; k < desc.size(); ++k) norm += desc[k] * desc[k];
            norm = std::sqrt(norm);
            if (norm > 1e-12)
                for (std::size_t k = start; k < desc.size(); ++k) desc[k] /= norm;
        }
    return desc;
}

OcrModel train(const std::vector<std::pair<GrayImage, char>>& samples, const HogParams& p) {
    p.validate();
    OcrModel model;
    model.params = p;
    model.labels = font_alphabet();
    const int dim = p.descriptor_size();
    model.centroids.assign(model.labels.size(), std::vector<double>(dim, 0.0));
    std::vector<int> counts(model.labels.size(), 0);

    for (const auto& [chip, label] : samples) {
        auto pos = model.labels.find(label);
        if (pos == std::string::npos)
            throw std::invalid_argument(std::string("train: label '") + label +
                                        "' outside the alphabet");
        std::vector<double> d = hog_descriptor(chip, p);
        auto& c = model.centroids[pos];
        for (int k = 0; k < dim; ++k) c[k] += d[k];
        ++counts[pos];
    }
    for (std::size_t i = 0; i < model.centroids.size(); ++i) {
        if (counts[i] == 0)
            throw std::invalid_argument(std::string("train: no samples for class '") +
                                        class_at(model.labels, i) + "'");
        for (double& v : model.centroids[i]) v /= counts[i];
    }
    return model;
}

std::pair<char, double> recognize(const OcrModel& model, const GrayImage& chip,
                                  ClassFilter filter) {
    if (!model.trained()) throw std::invalid_argument("recognize: untrained model");
    std::vector<double> d = hog_descriptor(chip, model.params);

    double best = std::numeric_limits<double>::infinity();
    double second = best;
    std::size_t best_i = std::string::npos;
    for (std::size_t i = 0; i < model.centroids.size(); ++i) {
        if (!class_allowed(model.labels[i], filter)) continue;
        const auto& c = model.centroids[i];
        double dist2 = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            double diff = d[k] - c[k];
            dist2 += diff * diff;
        }
        double dist = std::sqrt(dist2);
        if (dist < best) {
            second = best;
            best = dist;
            best_i = i;
        } else if (dist < second) {
            second = dist;
        }
    }
    if (best_i == std::string::npos)
        throw std::invalid_argument("recognize: class filter excluded every class");
    double confidence = std::isinf(second) ? 0.0 : second - best;
    return {model.labels[best_i], confidence};
}

namespace {
constexpr char kMagic[8] = {'L', 'P', 'C', 'S', 'O', 'C', 'R', '1'};
}

void save_model(const OcrModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_model: cannot open " + path);
    out.write(kMagic, sizeof kMagic);
    auto put_u32 = [&](std::uint32_t v) {
        unsigned char b[4] = {static_cast<unsigned char>(v),
                              static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
        out.write(reinterpret_cast<char*>(b), 4);
    };
    put_u32(model.params.bins);
    put_u32(model.params.cell);
    put_u32(model.params.stride);
    put_u32(model.params.norm_w);
    put_u32(model.params.norm_h);
    put_u32(static_cast<std::uint32_t>(model.labels.size()));
    put_u32(model.params.descriptor_size());
    out.write(model.labels.data(), static_cast<std::streamsize>(model.labels.size()));
    for (const auto& c : model.centroids)
        out.write(reinterpret_cast<const char*>(c.data()),
                  static_cast<std::streamsize>(c.size() * sizeof(double)));
    if (!out) throw std::runtime_error("save_model: write failed: " + path);
}

OcrModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_model: cannot open " + path);
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error("load_model: bad magic in " + path);
    auto get_u32 = [&]() {
        unsigned char b[4];
        in.read(reinterpret_cast<char*>(b), 4);
        return static_cast<std::uint32_t>(b[0]) | (b[1] << 8) | (b[2] << 16) |
               (static_cast<std::uint32_t>(b[3]) << 24);
    };
    OcrModel model;
    model.params.bins = static_cast<int>(get_u32());
    model.params.cell = static_cast<int>(get_u32());
    model.params.stride = static_cast<int>(get_u32());
    model.params.norm_w = static_cast<int>(get_u32());
    model.params.norm_h = static_cast<int>(get_u32());
    std::uint32_t n_classes = get_u32();
    std::uint32_t dim = get_u32();
    model.params.validate();
    if (dim != static_cast<std::uint32_t>(model.params.descriptor_size()))
        throw std::runtime_error("load_model: dimension mismatch in " + path);
    model.labels.resize(n_classes);
    in.read(model.labels.data(), n_classes);
    model.centroids.assign(n_classes, std::vector<double>(dim));
    for (auto& c : model.centroids)
        in.read(reinterpret_cast<char*>(c.data()),
                static_cast<std::streamsize>(dim * sizeof(double)));
    if (!in) throw std::runtime_error("load_model: truncated file: " + path);
    return model;
}

} // namespace lpcs
