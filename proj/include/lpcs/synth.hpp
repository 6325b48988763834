// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lpcs/annotation.hpp"
#include "lpcs/raster.hpp"

#include <cstdint>
#include <vector>

namespace lpcs {

/// Plate coloring. Passenger plates are light gray with dark characters;
/// bus/cab plates invert the polarity.
enum class PlateStyle { GrayBlack, RedWhite };

/// One controlled defect. Kinds are applied in the fixed order below no
/// matter how the list is arranged, so a spec describes a reproducible image.
struct Degradation {
    enum class Kind { GaussianNoise, ShadowBand, Blur, Skew, BridgeNoise };
    enum class ShadowType {
        BetweenChars, ///< spans a gap, bridging both neighbors
        FreeStanding, ///< sits in a gap touching nothing
        TouchingChar, ///< hangs off one character
    };

    Kind kind = Kind::GaussianNoise;
    double amount = 0.0; ///< sigma, depth, radius, degrees, or line level
    ShadowType shadow = ShadowType::BetweenChars;
    int position = 0; ///< gap index (0..5) or character index (0..6)

    static Degradation gaussian_noise(double sigma);
    static Degradation shadow_band(ShadowType type, int position, double depth = 0.45);
    static Degradation blur(int radius);
    static Degradation skew(double degrees);
    static Degradation bridge_noise(double level);
};

/// Recipe for one synthetic plate crop.
struct PlateSpec {
    std::string text; ///< 3 letters + 4 digits, e.g. "ABC1234"
    int width = 120;
    int height = 42;
    PlateStyle style = PlateStyle::GrayBlack;
    std::vector<Degradation> degradations;

    void validate() const;
};

/// Rendered plate plus its exact pre-degradation ground truth.
struct GeneratedPlate {
    GrayImage image;
    PlateAnnotation annotation;
    PlateSpec spec;
};

enum class CorpusProfile { Clean, Degraded, Mixed };

/// Renders seven glyphs from the built-in 5x7 stroke font at 45% of the
/// plate height, slot four left blank for the hyphen, then applies the
/// degradations. Identical (spec, seed) pairs give bit-identical plates.
/// Annotation boxes bound the rendered ink of each glyph exactly, before
/// any degradation.
GeneratedPlate render_plate(const PlateSpec& spec, std::uint64_t seed);

/// n plates with sizes spread over the benchmark's observed range and
/// uniformly random texts; deterministic per seed. The mixed profile
/// degrades roughly half of the plates.
std::vector<GeneratedPlate> gen_corpus(int n, CorpusProfile profile, std::uint64_t seed);

/// Writes <name>.png / <name>.txt pairs in the layout the dataset loader
/// reads, so synthetic and real corpora are interchangeable.
void write_corpus(const std::vector<GeneratedPlate>& plates, const std::string& dir);

/// A single glyph rendered tight to its ink at the given height, with an
/// optional background margin. Source of training chips for the recognizer.
GrayImage glyph_chip(char c, int height, int margin = 0);

/// Characters the built-in font covers, in class order (digits then letters).
const std::string& font_alphabet();

} // namespace lpcs
