// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lpcs/raster.hpp"

namespace lpcs {

/// Controls for the iterative global thresholding loop and its windowed
/// (hybrid) refinement pass.
struct IgtParams {
    double epsilon = 1e-3; ///< stop when the image mean moves less than this
    int max_iters = 50;
    int window = 16;       ///< side of the square refinement window, pixels
    double k = 1.0;        ///< noise gate multiplier on the window-count spread

    void validate() const {
        if (epsilon <= 0 || max_iters < 1 || window < 4 || k <= 0)
            throw std::invalid_argument("IgtParams: out of range");
    }
};

/// Fixed-level cut: foreground where sample < level (dark ink on a light
/// plate). level is clamped to [0, 256]; 0 selects nothing, 256 everything.
BinaryImage threshold_at(const GrayImage& img, int level);

/// Level in 1..255 maximizing between-class variance of the 256-bin
/// histogram, classes {sample < level} vs {sample >= level}. Ties resolve to
/// the lowest level. Throws DegenerateInput for a constant image.
int otsu_level(const GrayImage& img);

/// Iterative global thresholding: alternately shifts the image mean to white
/// and stretches the remaining range until the mean settles, then cuts at
/// normalized 0.5. A blank or near-white image (range collapses below 1e-6)
/// yields an empty mask rather than an error.
BinaryImage igt_global(const GrayImage& img, const IgtParams& p = {});

/// Global pass plus local reprocessing: windows whose foreground count
/// exceeds mean + k * stddev over all windows are re-run through the
/// iteration on their own statistics. Window stride is window/2; overlapping
/// rewrites are applied in row-major window order.
BinaryImage igt_hybrid(const GrayImage& img, const IgtParams& p = {});

/// The window boxes igt_hybrid would select for reprocessing on the given
/// mask. Exposed for inspection and tests.
std::vector<Box> igt_noisy_windows(const BinaryImage& mask, int window, double k);

} // namespace lpcs
