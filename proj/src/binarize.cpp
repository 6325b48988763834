// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#include "lpcs/binarize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace lpcs {

BinaryImage threshold_at(const GrayImage& img, int level) {
    level = std::clamp(level, 0, 256);
    BinaryImage out(img.width(), img.height());
    const auto& src = img.data();
    auto& dst = out.raw();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] < level ? 1 : 0;
    return out;
}

namespace {

std::array<long long, 256> histogram(const GrayImage& img) {
    std::array<long long, 256> h{};
    for (std::uint8_t v : img.data()) ++h[v];
    return h;
}

// Between-class-variance argmax over cut levels 1..255; classes are
// {v < level} and {v >= level}. Counts (not probabilities) keep the score
// exactly scale-covariant, so duplicating the image cannot move the argmax.
int otsu_from_histogram(const std::array<long long, 256>& h) {
    long long total = std::accumulate(h.begin(), h.end(), 0LL);
    long long weighted = 0;
    for (int v = 0; v < 256; ++v) weighted += static_cast<long long>(v) * h[v];

    int distinct = 0;
    for (long long c : h)
        if (c > 0) ++distinct;
    if (distinct < 2) throw DegenerateInput("otsu: constant input");

    int best_level = 1;
    double best_score = -1.0;
    long long n0 = 0, sum0 = 0;
    for (int level = 1; level <= 255; ++level) {
        n0 += h[level - 1];
        sum0 += static_cast<long long>(level - 1) * h[level - 1];
        long long n1 = total - n0;
        if (n0 == 0 || n1 == 0) continue;
        double mu0 = static_cast<double>(sum0) / n0;
        double mu1 = static_cast<double>(weighted - sum0) / n1;
        double d = mu0 - mu1;
        double score = static_cast<double>(n0) * static_cast<double>(n1) * d * d;
        if (score > best_score) {
            best_score = score;
            best_level = level;
        }
    }
    return best_level;
}

constexpr double kRangeFloor = 1e-6;

struct IgtBuffer {
    std::vector<double> v;

    double mean() const {
        return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    }
    double min() const { return *std::min_element(v.begin(), v.end()); }
};

// One mean-shift + stretch round on normalized intensities. Values pushed
// past white are held at 1 so the stretch lands back in [0,1]. Returns false
// when the remaining range is too small to stretch (blank region).
bool igt_round(IgtBuffer& buf, double mean) {
    for (double& x : buf.v) x = std::min(1.0, 1.0 - mean + x);
    double lo = buf.min();
    double range = 1.0 - lo;
    if (range < kRangeFloor) return false;
    for (double& x : buf.v) x = 1.0 - (1.0 - x) / range;
    return true;
}

// Runs the full iteration on a buffer in place. Returns false on the blank
// degenerate path (caller should emit an empty mask for the region).
bool igt_iterate(IgtBuffer& buf, const IgtParams& p) {
    double prev_mean = 0.0;
    bool have_prev = false;
    for (int it = 0; it < p.max_iters; ++it) {
        double m = buf.mean();
        if (have_prev && std::abs(m - prev_mean) < p.epsilon) break;
        prev_mean = m;
        have_prev = true;
        if (!igt_round(buf, m)) return false;
    }
    return true;
}

std::vector<int> window_starts(int extent, int window, int stride) {
    std::vector<int> starts;
    for (int s = 0;; s += stride) {
        int clamped = std::min(s, extent - window);
        if (starts.empty() || starts.back() != clamped) starts.push_back(clamped);
        if (clamped == extent - window) break;
    }
    return starts;
}

} // namespace

int otsu_level(const GrayImage& img) {
    return otsu_from_histogram(histogram(img));
}

BinaryImage igt_global(const GrayImage& img, const IgtParams& p) {
    p.validate();
    IgtBuffer buf;
    buf.v.resize(img.data().size());
    for (std::size_t i = 0; i < buf.v.size(); ++i) buf.v[i] = img.data()[i] / 255.0;

    BinaryImage out(img.width(), img.height());
    if (!igt_iterate(buf, p)) return out; // blank input, empty mask
    auto& mask = out.raw();
    for (std::size_t i = 0; i < buf.v.size(); ++i) mask[i] = buf.v[i] < 0.5 ? 1 : 0;
    return out;
}

std::vector<Box> igt_noisy_windows(const BinaryImage& mask, int window, double k) {
    if (window > std::min(mask.width(), mask.height()))
        throw std::invalid_argument("igt_noisy_windows: window exceeds image");
    int stride = std::max(1, window / 2);
    auto xs = window_starts(mask.width(), window, stride);
    auto ys = window_starts(mask.height(), window, stride);

    std::vector<Box> boxes;
    std::vector<long long> counts;
    for (int wy : ys)
        for (int wx : xs) {
            long long f = 0;
            for (int y = wy; y < wy + window; ++y)
                for (int x = wx; x < wx + window; ++x) f += mask.get(x, y) ? 1 : 0;
            boxes.push_back(Box{wx, wy, window, window});
            counts.push_back(f);
        }

    double n = static_cast<double>(counts.size());
    double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / n;
    double var = 0.0;
    for (long long c : counts) var += (c - mean) * (c - mean);
    double sd = std::sqrt(var / n);

    std::vector<Box> selected;
    for (std::size_t i = 0; i < boxes.size(); ++i)
        if (static_cast<double>(counts[i]) > mean + k * sd) selected.push_back(boxes[i]);
    return selected;
}

BinaryImage igt_hybrid(const GrayImage& img, const IgtParams& p) {
    p.validate();
    if (p.window > std::min(img.width(), img.height()))
        throw std::invalid_argument("igt_hybrid: window exceeds image");

    IgtBuffer buf;
    buf.v.resize(img.data().size());
    for (std::size_t i = 0; i < buf.v.size(); ++i) buf.v[i] = img.data()[i] / 255.0;

    BinaryImage out(img.width(), img.height());
    if (!igt_iterate(buf, p)) return out;
    auto& mask = out.raw();
    for (std::size_t i = 0; i < buf.v.size(); ++i) mask[i] = buf.v[i] < 0.5 ? 1 : 0;

    // Local pass. Window statistics are taken once, on the global result;
    // rewrites land in row-major window order so overlaps are deterministic.
    const int w = img.width();
    for (const Box& win : igt_noisy_windows(out, p.window, p.k)) {
        IgtBuffer local;
        local.v.resize(static_cast<std::size_t>(win.w) * win.h);
        for (int y = 0; y < win.h; ++y)
            for (int x = 0; x < win.w; ++x)
                local.v[static_cast<std::size_t>(y) * win.w + x] =
                    buf.v[static_cast<std::size_t>(win.y + y) * w + (win.x + x)];
        bool usable = igt_iterate(local, p);
        for (int y = 0; y < win.h; ++y)
            for (int x = 0; x < win.w; ++x) {
                std::size_t gi = static_cast<std::size_t>(win.y + y) * w + (win.x + x);
                double v = usable ? local.v[static_cast<std::size_t>(y) * win.w + x] : 1.0;
                buf.v[gi] = v;
                mask[gi] = v < 0.5 ? 1 : 0;
            }
    }
    return out;
}

} // namespace lpcs
