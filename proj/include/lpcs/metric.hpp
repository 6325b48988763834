// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lpcs/raster.hpp"
#include "lpcs/segment.hpp"

#include <array>
#include <limits>

namespace lpcs {

/// Penalty constant of the centroid-weighted overlap score.
struct JcParams {
    double c = 3.0;

    void validate() const {
        if (c <= 0) throw std::invalid_argument("JcParams: C must be positive");
    }
};

/// Overlap ratio of two boxes, computed in closed form on rectangles.
double jaccard(const Box& a, const Box& b);

/// Euclidean distance between box centers, in pixels (real-valued).
double centroid_distance(const Box& a, const Box& b);

/// jaccard / max(1, C * centroid_distance): overlap discounted by
/// misalignment once the weighted distance exceeds one.
double jaccard_centroid(const Box& a, const Box& b, const JcParams& p = {});

/// Scores for one ground-truth character.
struct CharScore {
    double jaccard = 0.0;
    double delta_c = std::numeric_limits<double>::infinity();
    double jc = 0.0;
    int truth_index = 0;
    bool matched = false;
};

/// Per-plate outcome: the seven character scores plus the plate value
/// (minimum character jc, zeroed when the detection count is not seven).
struct PlateScore {
    std::array<CharScore, 7> char_scores{};
    double plate_jc = 0.0;
};

/// Greedy one-to-one assignment by descending pairwise jc. Every truth box
/// receives at most one detection; unmatched truths score zero. Output is
/// ordered by truth index.
std::array<CharScore, 7> match_boxes(const Segmentation& detected,
                                     const std::vector<Box>& truth,
                                     const JcParams& p = {});

PlateScore plate_score(const Segmentation& detected, const std::vector<Box>& truth,
                       const JcParams& p = {});

} // namespace lpcs
