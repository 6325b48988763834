// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#include "lpcs/metric.hpp"

#include <algorithm>
#include <cmath>

namespace lpcs {

double jaccard(const Box& a, const Box& b) {
    long long ix = std::min<long long>(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
    long long iy = std::min<long long>(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
    if (ix <= 0 || iy <= 0) return 0.0;
    long long inter = ix * iy;
    long long uni = a.area() + b.area() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double centroid_distance(const Box& a, const Box& b) {
    return std::hypot(a.cx() - b.cx(), a.cy() - b.cy());
}

double jaccard_centroid(const Box& a, const Box& b, const JcParams& p) {
    p.validate();
    return jaccard(a, b) / std::max(1.0, p.c * centroid_distance(a, b));
}

std::array<CharScore, 7> match_boxes(const Segmentation& detected,
                                     const std::vector<Box>& truth, const JcParams& p) {
    p.validate();
    if (truth.size() != 7)
        throw std::invalid_argument("match_boxes: truth must have exactly 7 boxes");

    struct Pair {
        double jc;
        int ti;
        int di;
    };
    std::vector<Pair> pairs;
    pairs.reserve(7 * detected.boxes.size());
    for (int ti = 0; ti < 7; ++ti)
        for (int di = 0; di < static_cast<int>(detected.boxes.size()); ++di)
            pairs.push_back({jaccard_centroid(truth[ti], detected.boxes[di], p), ti, di});

    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.jc != b.jc) return a.jc > b.jc;
        if (a.ti != b.ti) return a.ti < b.ti;
        return a.di < b.di;
    });

    std::array<CharScore, 7> scores{};
    for (int i = 0; i < 7; ++i) scores[i].truth_index = i;
    std::vector<bool> det_used(detected.boxes.size(), false);
    std::array<bool, 7> truth_used{};
    for (const Pair& pr : pairs) {
        if (truth_used[pr.ti] || det_used[pr.di]) continue;
        truth_used[pr.ti] = true;
        det_used[pr.di] = true;
        const Box& t = truth[pr.ti];
        const Box& d = detected.boxes[pr.di];
        scores[pr.ti] = CharScore{jaccard(t, d), centroid_distance(t, d), pr.jc,
                                  pr.ti, true};
    }
    return scores;
}

PlateScore plate_score(const Segmentation& detected, const std::vector<Box>& truth,
                       const JcParams& p) {
    PlateScore out;
    out.char_scores = match_boxes(detected, truth, p);
    if (detected.boxes.size() != 7) {
        out.plate_jc = 0.0;
        return out;
    }
    double m = 1.0;
    for (const auto& cs : out.char_scores) m = std::min(m, cs.matched ? cs.jc : 0.0);
    out.plate_jc = m;
    return out;
}

} // namespace lpcs
