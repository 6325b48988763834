// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#include "lpcs/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>

namespace lpcs {

namespace {

// 5x7 dot-matrix glyphs, one row per byte, bit 4 = leftmost column.
struct Glyph {
    char ch;
    std::uint8_t rows[7];
};

constexpr Glyph kFont[] = {
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
    {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
    {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
    {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
    {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
    {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'A', {0x0E, 0x11, 0x11, 0x11, 0x1F, 0x11, 0x11}},
    {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
    {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}},
    {'D', {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
    {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
    {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}},
    {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
    {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}},
    {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}},
    {'N', {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11}},
    {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}},
    {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}},
    {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
    {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}},
    {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
    {'Y', {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}},
    {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
};

const Glyph& glyph_for(char c) {
    for (const Glyph& g : kFont)
        if (g.ch == c) return g;
    throw std::invalid_argument(std::string("no glyph for '") + c + "'");
}

constexpr std::uint8_t kInkGray = 26;
constexpr std::uint8_t kBgGray = 224;
constexpr std::uint8_t kInkRed = 242;
constexpr std::uint8_t kBgRed = 77;

struct Layout {
    int char_h;
    int char_w;
    int slot_w;
    int margin;
    int baseline_y;
};

Layout compute_layout(int width, int height) {
    Layout l{};
    l.char_h = static_cast<int>(std::lround(0.45 * height));
    l.margin = std::max(1, static_cast<int>(std::lround(0.03 * width)));
    l.slot_w = (width - 2 * l.margin) / 8;
    l.char_w = std::min<int>(std::lround(l.char_h * 5.0 / 7.0), l.slot_w - 2);
    l.baseline_y = static_cast<int>(std::lround((height - l.char_h) * 0.55));
    return l;
}

// Nearest-cell scaling of a 5x7 bitmap into char_w x char_h pixels at
// (x0, y0); returns the tight box around the painted ink.
Box paint_glyph(GrayImage& img, const Glyph& g, int x0, int y0, const Layout& l,
                std::uint8_t ink) {
    int minx = img.width(), maxx = -1, miny = img.height(), maxy = -1;
    for (int r = 0; r < l.char_h; ++r) {
        int src_r = r * 7 / l.char_h;
        for (int c = 0; c < l.char_w; ++c) {
            int src_c = c * 5 / l.char_w;
            if (!(g.rows[src_r] & (0x10 >> src_c))) continue;
            int x = x0 + c, y = y0 + r;
            if (!img.in_bounds(x, y)) continue;
            img.at(x, y) = ink;
            minx = std::min(minx, x);
            maxx = std::max(maxx, x);
            miny = std::min(miny, y);
            maxy = std::max(maxy, y);
        }
    }
    if (maxx < 0) throw std::runtime_error("paint_glyph: glyph rendered no ink");
    return Box{minx, miny, maxx - minx + 1, maxy - miny + 1};
}

void apply_gaussian_noise(GrayImage& img, double sigma, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, sigma * 255.0);
    for (auto& v : img.data()) {
        long nv = std::lround(v + dist(rng));
        v = static_cast<std::uint8_t>(std::clamp<long>(nv, 0, 255));
    }
}

void darken_rect(GrayImage& img, int x0, int y0, int x1, int y1, std::uint8_t level) {
    x0 = std::max(x0, 0);
    y0 = std::max(y0, 0);
    x1 = std::min(x1, img.width() - 1);
    y1 = std::min(y1, img.height() - 1);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            img.at(x, y) = std::min(img.at(x, y), level);
}

void apply_shadow(GrayImage& img, const Degradation& d,
                  const std::array<Box, 7>& boxes, std::uint8_t bg) {
    std::uint8_t level = static_cast<std::uint8_t>(
        std::clamp<long>(std::lround(bg - d.amount * 255.0), 0, 255));
    using ST = Degradation::ShadowType;
    if (d.shadow == ST::TouchingChar) {
        int ci = std::clamp(d.position, 0, 6);
        const Box& b = boxes[ci];
        // A tongue of shade hanging below the character, overlapping its
        // column range so it always meets the bottom ink row.
        int band_h = std::max(2, b.h / 3);
        darken_rect(img, b.x - 2, b.y + b.h, b.x + b.w - 1, b.y + b.h + band_h - 1,
                    level);
        return;
    }
    int gi = std::clamp(d.position, 0, 5);
    const Box& left = boxes[gi];
    const Box& right = boxes[gi + 1];
    int gap_x0 = left.x + left.w;
    int gap_x1 = right.x - 1;
    if (gap_x1 < gap_x0) return; // touching glyphs, no gap to shade
    int y0 = std::min(left.y, right.y);
    int y1 = std::max(left.y + left.h, right.y + right.h) - 1;
    if (d.shadow == ST::BetweenChars) {
        darken_rect(img, gap_x0, y0, gap_x1, y1, level);
    } else { // FreeStanding: clearance of one pixel on every side
        if (gap_x1 - gap_x0 < 2) return;
        darken_rect(img, gap_x0 + 1, y0 + 2, gap_x1 - 1, y1 - 2, level);
    }
}

void apply_blur(GrayImage& img, int radius) {
    if (radius < 1) return;
    auto pass = [&](bool horizontal) {
        GrayImage src = img;
        int n = 2 * radius + 1;
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) {
                int acc = 0;
                for (int k = -radius; k <= radius; ++k) {
                    int sx = horizontal ? std::clamp(x + k, 0, img.width() - 1) : x;
                    int sy = horizontal ? y : std::clamp(y + k, 0, img.height() - 1);
                    acc += src.at(sx, sy);
                }
                img.at(x, y) = static_cast<std::uint8_t>((acc + n / 2) / n);
            }
    };
    pass(true);
    pass(false);
}

void apply_skew(GrayImage& img, double degrees, std::uint8_t bg) {
    double shear = std::tan(degrees * std::numbers::pi / 180.0);
    GrayImage src = img;
    double mid = (img.height() - 1) / 2.0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            int sx = static_cast<int>(std::lround(x - shear * (y - mid)));
            img.at(x, y) = (sx >= 0 && sx < img.width()) ? src.at(sx, y) : bg;
        }
}

void apply_bridge(GrayImage& img, double level_frac, const std::array<Box, 7>& boxes,
                  std::mt19937_64& rng) {
    std::uint8_t level = static_cast<std::uint8_t>(
        std::clamp<long>(std::lround(level_frac * 255.0), 0, 255));
    // Thin gray runners across two or three gaps at rows inside the glyph band.
    int n_bridges = 2 + static_cast<int>(rng() % 2);
    for (int i = 0; i < n_bridges; ++i) {
        int gi = static_cast<int>(rng() % 6);
        const Box& left = boxes[gi];
        const Box& right = boxes[gi + 1];
        int y_lo = std::max(left.y, right.y);
        int y_hi = std::min(left.y + left.h, right.y + right.h) - 1;
        if (y_hi < y_lo) continue;
        int y = y_lo + static_cast<int>(rng() % static_cast<unsigned>(y_hi - y_lo + 1));
        darken_rect(img, left.x + left.w - 1, y, right.x, y, level);
    }
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

Degradation Degradation::gaussian_noise(double sigma) {
    return {Kind::GaussianNoise, sigma, ShadowType::BetweenChars, 0};
}
Degradation Degradation::shadow_band(ShadowType type, int position, double depth) {
    return {Kind::ShadowBand, depth, type, position};
}
Degradation Degradation::blur(int radius) {
    return {Kind::Blur, static_cast<double>(radius), ShadowType::BetweenChars, 0};
}
Degradation Degradation::skew(double degrees) {
    return {Kind::Skew, degrees, ShadowType::BetweenChars, 0};
}
Degradation Degradation::bridge_noise(double level) {
    return {Kind::BridgeNoise, level, ShadowType::BetweenChars, 0};
}

void PlateSpec::validate() const {
    if (!valid_plate_text(text))
        throw std::invalid_argument("PlateSpec: text must be 3 letters + 4 digits");
    if (width < 48 || height < 16)
        throw std::invalid_argument("PlateSpec: plate too small to render");
    double aspect = static_cast<double>(width) / height;
    if (aspect < 2.5 || aspect > 3.2)
        throw std::invalid_argument("PlateSpec: aspect ratio outside [2.5, 3.2]");
}

const std::string& font_alphabet() {
    static const std::string a = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    return a;
}

GeneratedPlate render_plate(const PlateSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(splitmix(seed));

    std::uint8_t ink = spec.style == PlateStyle::GrayBlack ? kInkGray : kInkRed;
    std::uint8_t bg = spec.style == PlateStyle::GrayBlack ? kBgGray : kBgRed;

    GrayImage img(spec.width, spec.height, bg);
    Layout l = compute_layout(spec.width, spec.height);

    std::array<Box, 7> boxes{};
    int glyph_idx = 0;
    for (int slot = 0; slot < 8; ++slot) {
        if (slot == 3) continue; // hyphen slot stays blank
        int sx = l.margin + slot * l.slot_w + (l.slot_w - l.char_w) / 2;
        const Glyph& g = glyph_for(spec.text[glyph_idx]);
        boxes[glyph_idx] = paint_glyph(img, g, sx, l.baseline_y, l, ink);
        ++glyph_idx;
    }

    // Degradations run in a fixed kind order; ground truth stays pinned to
    // the pre-degradation geometry.
    using K = Degradation::Kind;
    for (K kind : {K::GaussianNoise, K::ShadowBand, K::Blur, K::Skew, K::BridgeNoise})
        for (const Degradation& d : spec.degradations) {
            if (d.kind != kind) continue;
            switch (kind) {
                case K::GaussianNoise: apply_gaussian_noise(img, d.amount, rng); break;
                case K::ShadowBand: apply_shadow(img, d, boxes, bg); break;
                case K::Blur: apply_blur(img, static_cast<int>(std::lround(d.amount))); break;
                case K::Skew: apply_skew(img, d.amount, bg); break;
                case K::BridgeNoise: apply_bridge(img, d.amount, boxes, rng); break;
            }
        }

    GeneratedPlate out;
    out.annotation.plate_text = spec.text;
    out.annotation.plate_box = img.full_box();
    out.annotation.char_boxes = boxes;
    out.image = std::move(img);
    out.spec = spec;
    return out;
}

std::vector<GeneratedPlate> gen_corpus(int n, CorpusProfile profile, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_corpus: n must be >= 1");
    const std::string& letters = font_alphabet();

    std::vector<GeneratedPlate> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        std::uint64_t plate_seed = splitmix(seed ^ (0xA5A5A5A5ULL + i));
        std::mt19937_64 rng(plate_seed);

        PlateSpec spec;
        std::uniform_int_distribution<int> h_dist(24, 77);
        std::uniform_real_distribution<double> ratio_dist(2.6, 3.1);
        spec.height = h_dist(rng);
        spec.width = static_cast<int>(std::lround(spec.height * ratio_dist(rng)));
        spec.text.clear();
        for (int k = 0; k < 3; ++k) spec.text += letters[10 + rng() % 26];
        for (int k = 0; k < 4; ++k) spec.text += letters[rng() % 10];

        bool degrade = profile == CorpusProfile::Degraded ||
                       (profile == CorpusProfile::Mixed && rng() % 2 == 0);
        if (degrade) {
            int count = 1 + static_cast<int>(rng() % 2);
            std::array<Degradation::Kind, 5> kinds{
                Degradation::Kind::GaussianNoise, Degradation::Kind::ShadowBand,
                Degradation::Kind::Blur, Degradation::Kind::Skew,
                Degradation::Kind::BridgeNoise};
            std::shuffle(kinds.begin(), kinds.end(), rng);
            std::uniform_real_distribution<double> sigma_dist(0.02, 0.05);
            std::uniform_real_distribution<double> skew_dist(-4.0, 4.0);
            std::uniform_real_distribution<double> bridge_dist(0.42, 0.50);
            for (int k = 0; k < count; ++k) {
                switch (kinds[k]) {
                    case Degradation::Kind::GaussianNoise:
                        spec.degradations.push_back(
                            Degradation::gaussian_noise(sigma_dist(rng)));
                        break;
                    case Degradation::Kind::ShadowBand: {
                        auto type = static_cast<Degradation::ShadowType>(rng() % 3);
                        int pos = static_cast<int>(rng() % 6);
                        spec.degradations.push_back(Degradation::shadow_band(type, pos));
                        break;
                    }
                    case Degradation::Kind::Blur:
                        spec.degradations.push_back(Degradation::blur(1));
                        break;
                    case Degradation::Kind::Skew:
                        spec.degradations.push_back(Degradation::skew(skew_dist(rng)));
                        break;
                    case Degradation::Kind::BridgeNoise:
                        spec.degradations.push_back(
                            Degradation::bridge_noise(bridge_dist(rng)));
                        break;
                }
            }
        }
        out.push_back(render_plate(spec, plate_seed));
    }
    return out;
}

void write_corpus(const std::vector<GeneratedPlate>& plates, const std::string& dir) {
    std::filesystem::create_directories(dir);
    char name[32];
    for (std::size_t i = 0; i < plates.size(); ++i) {
        std::snprintf(name, sizeof name, "plate_%05zu", i);
        std::string base = dir + "/" + name;
        save_gray(plates[i].image, base + ".png");
        PlateAnnotation a = plates[i].annotation;
        a.image_ref = base + ".png";
        save_annotation(a, base + ".txt");
    }
}

GrayImage glyph_chip(char c, int height, int margin) {
    if (height < 7) throw std::invalid_argument("glyph_chip: height must be >= 7");
    Layout l{};
    l.char_h = height;
    l.char_w = std::max(3, static_cast<int>(std::lround(height * 5.0 / 7.0)));
    GrayImage canvas(l.char_w, l.char_h, kBgGray);
    Box ink = paint_glyph(canvas, glyph_for(c), 0, 0, l, kInkGray);
    GrayImage tight = crop(canvas, ink);
    if (margin <= 0) return tight;
    GrayImage out(tight.width() + 2 * margin, tight.height() + 2 * margin, kBgGray);
    for (int y = 0; y < tight.height(); ++y)
        for (int x = 0; x < tight.width(); ++x)
            out.at(x + margin, y + margin) = tight.at(x, y);
    return out;
}

} // namespace lpcs
