// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#include "lpcs/segment.hpp"

#include "lpcs/morph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lpcs {

const std::vector<SegmenterId>& all_segmenters() {
    static const std::vector<SegmenterId> ids{
        SegmenterId::SllProjection, SegmenterId::Ccl, SegmenterId::IgtProjection,
        SegmenterId::PriorKnowledge, SegmenterId::IterativeProposed};
    return ids;
}

std::string segmenter_key(SegmenterId id) {
    switch (id) {
        case SegmenterId::SllProjection: return "sll";
        case SegmenterId::Ccl: return "ccl";
        case SegmenterId::IgtProjection: return "igt";
        case SegmenterId::PriorKnowledge: return "prior";
        case SegmenterId::IterativeProposed: return "iterative";
    }
    throw std::invalid_argument("segmenter_key: bad id");
}

std::string segmenter_label(SegmenterId id) {
    switch (id) {
        case SegmenterId::SllProjection: return "Pixel Counting with SL*L";
        case SegmenterId::Ccl: return "Conn. Component";
        case SegmenterId::IgtProjection: return "Pixel Counting with IGT";
        case SegmenterId::PriorKnowledge: return "Prior-Knowledge Based";
        case SegmenterId::IterativeProposed: return "Proposed Iterative Approach";
    }
    throw std::invalid_argument("segmenter_label: bad id");
}

SegmenterId segmenter_from_key(const std::string& key) {
    for (SegmenterId id : all_segmenters())
        if (segmenter_key(id) == key) return id;
    throw std::invalid_argument("unknown segmenter: " + key);
}

std::vector<Component> connected_components(const BinaryImage& img) {
    const int w = img.width(), h = img.height();
    std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
    std::vector<Component> comps;
    std::vector<std::pair<int, int>> stack;

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (!img.get(x, y) || label[i] >= 0) continue;
            int cur = static_cast<int>(comps.size());
            label[i] = cur;
            stack.push_back({x, y});
            int minx = x, maxx = x, miny = y, maxy = y;
            long long area = 0;
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                ++area;
                minx = std::min(minx, cx);
                maxx = std::max(maxx, cx);
                miny = std::min(miny, cy);
                maxy = std::max(maxy, cy);
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        int nx = cx + dx, ny = cy + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
                        if (img.get(nx, ny) && label[ni] < 0) {
                            label[ni] = cur;
                            stack.push_back({nx, ny});
                        }
                    }
            }
            comps.push_back(Component{Box{minx, miny, maxx - minx + 1, maxy - miny + 1}, area, 0});
        }

    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.box.cx() != b.box.cx()) return a.box.cx() < b.box.cx();
        if (a.box.cy() != b.box.cy()) return a.box.cy() < b.box.cy();
        if (a.box.x != b.box.x) return a.box.x < b.box.x;
        return a.box.y < b.box.y;
    });
    for (std::size_t i = 0; i < comps.size(); ++i) comps[i].id = static_cast<int>(i);
    return comps;
}

std::vector<Box> projection_cut(const BinaryImage& img) {
    const int w = img.width(), h = img.height();
    std::vector<int> col_counts(w, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (img.get(x, y)) ++col_counts[x];

    std::vector<Box> boxes;
    int span_start = -1;
    for (int x = 0; x <= w; ++x) {
        bool inked = x < w && col_counts[x] > 0;
        if (inked && span_start < 0) span_start = x;
        if (!inked && span_start >= 0) {
            int x0 = span_start, x1 = x - 1;
            span_start = -1;
            int top = h, bottom = -1;
            for (int yy = 0; yy < h; ++yy)
                for (int xx = x0; xx <= x1; ++xx)
                    if (img.get(xx, yy)) {
                        top = std::min(top, yy);
                        bottom = std::max(bottom, yy);
                    }
            boxes.push_back(Box{x0, top, x1 - x0 + 1, bottom - top + 1});
        }
    }
    return boxes;
}

namespace {

void sort_left_to_right(std::vector<Box>& boxes) {
    std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) {
        if (a.cx() != b.cx()) return a.cx() < b.cx();
        return a.x < b.x;
    });
}

} // namespace

Segmentation segment_prior(const GrayImage& plate) {
    const int w = plate.width(), h = plate.height();
    int top = static_cast<int>(std::lround(0.15 * h));
    int bottom = static_cast<int>(std::lround(0.05 * h));
    int ch = h - top - bottom;
    if (w < 8 || ch < 2)
        throw DegenerateInput("segment_prior: plate too small after crop");

    int base = w / 8;
    Segmentation seg;
    seg.segmenter = SegmenterId::PriorKnowledge;
    for (int region = 0; region < 8; ++region) {
        if (region == 3) continue; // hyphen slot
        int x = region * base;
        int rw = region == 7 ? w - x : base; // last region absorbs w % 8
        seg.boxes.push_back(Box{x, top, rw, ch});
    }
    return seg;
}

Segmentation segment_ccl(const GrayImage& plate) {
    Segmentation seg;
    seg.segmenter = SegmenterId::Ccl;
    int level;
    try {
        level = otsu_level(plate);
    } catch (const DegenerateInput&) {
        return seg;
    }
    auto comps = connected_components(threshold_at(plate, level));

    const double lo = 0.40 * plate.height();
    const double hi = 0.50 * plate.height();
    std::vector<Component> kept;
    for (const auto& c : comps)
        if (c.box.h >= lo && c.box.h <= hi) kept.push_back(c);

    if (kept.size() > 7) {
        std::sort(kept.begin(), kept.end(), [](const Component& a, const Component& b) {
            if (a.area != b.area) return a.area > b.area;
            return a.id < b.id;
        });
        kept.resize(7);
    }
    for (const auto& c : kept) seg.boxes.push_back(c.box);
    sort_left_to_right(seg.boxes);
    return seg;
}

Segmentation segment_sll(const GrayImage& plate) {
    Segmentation seg;
    seg.segmenter = SegmenterId::SllProjection;
    seg.boxes = projection_cut(sll_preprocess(plate));
    sort_left_to_right(seg.boxes);
    return seg;
}

Segmentation segment_igt(const GrayImage& plate, const IgtParams& p) {
    Segmentation seg;
    seg.segmenter = SegmenterId::IgtProjection;
    seg.boxes = projection_cut(igt_hybrid(plate, p));
    sort_left_to_right(seg.boxes);
    return seg;
}

namespace {

constexpr int kSweepStart = 10;
constexpr int kSweepStep = 5;
constexpr double kWidthCapFrac = 0.25;
constexpr double kMinAreaFrac = 0.002;
constexpr double kMaxAreaFrac = 0.20;

// Merge boxes whose x-spans overlap, chaining until stable. Boxes arrive
// sorted by x-center.
std::vector<Box> merge_x_overlaps(std::vector<Box> boxes) {
    std::sort(boxes.begin(), boxes.end(),
              [](const Box& a, const Box& b) { return a.x < b.x; });
    std::vector<Box> merged;
    for (const Box& b : boxes) {
        if (!merged.empty()) {
            Box& last = merged.back();
            if (b.x <= last.x + last.w - 1) { // x-span overlap, closed pixels
                int x0 = std::min(last.x, b.x);
                int x1 = std::max(last.x + last.w, b.x + b.w);
                int y0 = std::min(last.y, b.y);
                int y1 = std::max(last.y + last.h, b.y + b.h);
                last = Box{x0, y0, x1 - x0, y1 - y0};
                continue;
            }
        }
        merged.push_back(b);
    }
    return merged;
}

} // namespace

Segmentation segment_iterative(const GrayImage& plate, int expected) {
    if (expected < 1) throw std::invalid_argument("segment_iterative: expected < 1");
    const double plate_area = static_cast<double>(plate.pixel_count());
    const double width_cap = kWidthCapFrac * plate.width();
    const double area_min = kMinAreaFrac * plate_area;
    const double area_max = kMaxAreaFrac * plate_area;

    Segmentation seg;
    seg.segmenter = SegmenterId::IterativeProposed;

    std::vector<Box> best;
    int best_gap = std::numeric_limits<int>::max();

    for (int t = kSweepStart; t <= 255; t += kSweepStep) {
        auto comps = connected_components(threshold_at(plate, t));
        std::vector<Box> candidates;
        for (const auto& c : comps) {
            if (c.box.w > width_cap) continue;
            if (static_cast<double>(c.area) < area_min) continue;
            if (static_cast<double>(c.area) > area_max) continue;
            candidates.push_back(c.box);
        }
        candidates = merge_x_overlaps(std::move(candidates));
        int gap = std::abs(static_cast<int>(candidates.size()) - expected);
        if (gap < best_gap) {
            best_gap = gap;
            best = candidates;
        }
        if (gap == 0) break;
    }

    seg.boxes = std::move(best);
    sort_left_to_right(seg.boxes);
    return seg;
}

Segmentation run_segmenter(SegmenterId id, const GrayImage& plate) {
    switch (id) {
        case SegmenterId::SllProjection: return segment_sll(plate);
        case SegmenterId::Ccl: return segment_ccl(plate);
        case SegmenterId::IgtProjection: return segment_igt(plate);
        case SegmenterId::PriorKnowledge: return segment_prior(plate);
        case SegmenterId::IterativeProposed: return segment_iterative(plate);
    }
    throw std::invalid_argument("run_segmenter: bad id");
}

} // namespace lpcs
