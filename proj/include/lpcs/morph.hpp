// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lpcs/raster.hpp"

#include <array>

namespace lpcs {

/// Ternary structuring element with odd dimensions; the origin is the
/// center cell. Foreground-required cells must hit ink, background-required
/// cells must hit background, don't-care cells are ignored.
class StructElement {
public:
    enum class Cell : std::uint8_t { Ignore, Fg, Bg };

    StructElement(int width, int height, Cell fill = Cell::Ignore);

    /// Rows separated by '/'; '1' = foreground-required, '0' = background-
    /// required, '.' = don't care. E.g. "111/1.1/111".
    static StructElement from_string(const std::string& spec);
    static StructElement square3(); ///< 3x3 all foreground-required
    static StructElement cross3();  ///< 3x3 4-neighborhood plus center

    int width() const { return width_; }
    int height() const { return height_; }
    Cell cell(int dx, int dy) const; ///< offsets relative to the origin
    void set_cell(int dx, int dy, Cell c);

    StructElement reflected() const;        ///< 180-degree rotation about the origin
    StructElement rotated90() const;        ///< quarter turn, clockwise
    bool fg_only() const;                   ///< no background-required cells

private:
    int width_;
    int height_;
    std::vector<Cell> cells_;
};

/// Minkowski dilation: the reflected element is slid over the image and a
/// pixel is set wherever it overlaps foreground. Requires a foreground-only
/// element.
BinaryImage dilate(const BinaryImage& img, const StructElement& se);

/// Erosion: a pixel survives where the element, anchored at it, fits
/// entirely in foreground. Requires a foreground-only element.
BinaryImage erode(const BinaryImage& img, const StructElement& se);

/// Hit-or-miss transform. Pixels outside the image read as background, so
/// foreground-required probes fail there and background-required probes
/// succeed.
BinaryImage hit_or_miss(const BinaryImage& img, const StructElement& se);

/// Iterative thinning to an 8-connected unit-width skeleton. Connectivity of
/// each component is preserved; the result is a fixed point of the operation.
BinaryImage skeletonize(const BinaryImage& img);

/// Removes spur branches of length <= iterations from a thin mask: thins with
/// the end-point element family, then regrows the surviving strokes from
/// their end points by conditional dilation inside the input.
BinaryImage prune(const BinaryImage& img, int iterations);

/// One growth pass that never merges distinct 8-connected components.
/// Candidate pixels are adopted in raster order; a pixel bordering two
/// different components stays background.
BinaryImage thicken(const BinaryImage& img);

/// Shadow location and lightening preprocessor: binarize (Otsu), expose
/// shadow residue through thicken / skeletonize / prune, split the dark mass
/// into ink and lighter shadow, pull detected shadow pixels toward the plate
/// background median, and re-binarize. A shadow-free input comes back as the
/// plain Otsu mask; a constant input yields an empty mask.
BinaryImage sll_preprocess(const GrayImage& img);

/// The eight end-point detectors used by prune, in application order.
const std::array<StructElement, 8>& endpoint_elements();

} // namespace lpcs
