// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lpcs/raster.hpp"

#include <string>
#include <vector>

namespace lpcs {

/// Gradient-histogram descriptor geometry. Cells are laid out at `stride`
/// spacing over the normalized chip; blocks group 2x2 neighboring cells.
struct HogParams {
    int bins = 9;
    int cell = 16;
    int stride = 8;
    int norm_w = 32;
    int norm_h = 32;

    void validate() const;
    int cells_x() const { return (norm_w - cell) / stride + 1; }
    int cells_y() const { return (norm_h - cell) / stride + 1; }
    int blocks_x() const { return cells_x() - 1; }
    int blocks_y() const { return cells_y() - 1; }
    int descriptor_size() const { return blocks_x() * blocks_y() * 4 * bins; }
};

/// Restricts recognition to the classes legal at a plate position.
enum class ClassFilter { All, Letters, Digits };

/// Mean descriptor per class over the 36 plate symbols.
struct OcrModel {
    HogParams params;
    std::string labels;                        ///< class order, one char each
    std::vector<std::vector<double>> centroids; ///< one vector per class

    bool trained() const { return !centroids.empty(); }
};

/// Resize to the normalized size, take central-difference gradients, bin
/// unsigned orientations per cell weighted by magnitude, then L2-normalize
/// each 2x2-cell block. A constant chip maps to the zero vector.
std::vector<double> hog_descriptor(const GrayImage& chip, const HogParams& p = {});

/// Per-class mean descriptors. Every class in the alphabet must be present
/// in the samples; a missing one raises an error naming it.
OcrModel train(const std::vector<std::pair<GrayImage, char>>& samples,
               const HogParams& p = {});

/// Nearest centroid by Euclidean distance within the filtered class set.
/// Confidence is the margin between the runner-up and best distances; ties
/// resolve to the earlier class.
std::pair<char, double> recognize(const OcrModel& model, const GrayImage& chip,
                                  ClassFilter filter = ClassFilter::All);

/// Flat binary model format with a versioned header (see README).
void save_model(const OcrModel& model, const std::string& path);
OcrModel load_model(const std::string& path);

} // namespace lpcs
