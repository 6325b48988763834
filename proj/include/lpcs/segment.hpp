// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lpcs/binarize.hpp"
#include "lpcs/raster.hpp"

#include <string>
#include <vector>

namespace lpcs {

/// One 8-connected blob: bounding box, pixel count, deterministic label.
struct Component {
    Box box;
    long long area = 0;
    int id = 0;
};

/// The five evaluated approaches, in comparison-table row order.
enum class SegmenterId {
    SllProjection = 0,  ///< shadow lightening then pixel projection
    Ccl = 1,            ///< Otsu plus component height filter
    IgtProjection = 2,  ///< iterative global thresholding then projection
    PriorKnowledge = 3, ///< fixed eight-region layout split
    IterativeProposed = 4,
};

constexpr int kSegmenterCount = 5;
const std::vector<SegmenterId>& all_segmenters();

/// Short machine name used in file names and the CLI ("sll", "ccl", ...).
std::string segmenter_key(SegmenterId id);
/// Human-readable row label for the comparison table.
std::string segmenter_label(SegmenterId id);
SegmenterId segmenter_from_key(const std::string& key);

/// Character boxes for one plate crop, left to right by x-center.
struct Segmentation {
    std::vector<Box> boxes;
    SegmenterId segmenter = SegmenterId::IterativeProposed;
};

/// 8-connected labeling. Components are ordered by ascending x-center (ties
/// by y-center, then position), and ids follow that order.
std::vector<Component> connected_components(const BinaryImage& img);

/// Splits a binarized plate on empty columns of the vertical projection
/// profile; each resulting x-span is trimmed vertically to its ink extent.
std::vector<Box> projection_cut(const BinaryImage& img);

/// Layout-only split: drop 15% of the height from the top and 5% from the
/// bottom, divide the width into eight equal regions (the last absorbs any
/// remainder), and return regions 1-3 and 5-8; region 4 holds the hyphen.
Segmentation segment_prior(const GrayImage& plate);

/// Otsu, label, keep components whose height is 40-50% of the plate height;
/// if more than seven qualify, the largest by area win.
Segmentation segment_ccl(const GrayImage& plate);

/// Shadow lightening preprocessor followed by projection cutting.
Segmentation segment_sll(const GrayImage& plate);

/// Hybrid iterative-threshold binarization followed by projection cutting.
Segmentation segment_igt(const GrayImage& plate, const IgtParams& p = {});

/// Sweeps the threshold upward from 10 in steps of 5, discarding components
/// too large or too small to be characters and merging x-overlapping ones,
/// until exactly `expected` components survive. If no threshold succeeds the
/// sweep's closest count (lowest such threshold) is returned.
Segmentation segment_iterative(const GrayImage& plate, int expected = 7);

/// Dispatch by id with default parameters.
Segmentation run_segmenter(SegmenterId id, const GrayImage& plate);

} // namespace lpcs
