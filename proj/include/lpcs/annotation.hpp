// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lpcs/raster.hpp"

#include <array>
#include <string>

namespace lpcs {

/// Ground truth for one plate image: the plate text, the plate box in frame
/// coordinates, and the seven character boxes (frame coordinates, left to
/// right). The sidecar file shares the image's basename with a .txt
/// extension:
///
///   text ABC1234
///   position_plate <x> <y> <w> <h>
///   char 1 <x> <y> <w> <h>
///   ...
///   char 7 <x> <y> <w> <h>
struct PlateAnnotation {
    std::string image_ref;
    std::string plate_text;
    Box plate_box;
    std::array<Box, 7> char_boxes;
    std::string vehicle_id;

    /// Character boxes re-expressed relative to the plate box origin.
    std::array<Box, 7> char_boxes_in_plate() const {
        std::array<Box, 7> out = char_boxes;
        for (auto& b : out) {
            b.x -= plate_box.x;
            b.y -= plate_box.y;
        }
        return out;
    }
};

/// True for three uppercase letters followed by four digits.
bool valid_plate_text(const std::string& text);

/// Parses and validates a sidecar annotation file. Malformed lines, a wrong
/// character count, or a character box outside the plate box raise an error
/// naming the offending line.
PlateAnnotation load_annotation(const std::string& path);

void save_annotation(const PlateAnnotation& a, const std::string& path);

} // namespace lpcs
