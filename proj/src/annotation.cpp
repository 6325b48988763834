// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#include "lpcs/annotation.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace lpcs {

bool valid_plate_text(const std::string& text) {
    if (text.size() != 7) return false;
    for (int i = 0; i < 3; ++i)
        if (!std::isupper(static_cast<unsigned char>(text[i]))) return false;
    for (int i = 3; i < 7; ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    return true;
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
    std::ostringstream os;
    os << path << ":" << line << ": " << what;
    throw std::runtime_error(os.str());
}

Box parse_box(std::istringstream& is, const std::string& path, int line) {
    Box b;
    if (!(is >> b.x >> b.y >> b.w >> b.h))
        parse_fail(path, line, "expected four box integers");
    if (b.x < 0 || b.y < 0 || b.w <= 0 || b.h <= 0)
        parse_fail(path, line, "box has non-positive extent or negative origin");
    return b;
}

bool box_inside(const Box& inner, const Box& outer) {
    return inner.x >= outer.x && inner.y >= outer.y &&
           inner.x + inner.w <= outer.x + outer.w &&
           inner.y + inner.h <= outer.y + outer.h;
}

} // namespace

PlateAnnotation load_annotation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_annotation: cannot open " + path);

    PlateAnnotation a;
    std::string line;
    int lineno = 0;

    auto next_line = [&]() -> std::istringstream {
        if (!std::getline(in, line)) parse_fail(path, lineno + 1, "unexpected end of file");
        ++lineno;
        return std::istringstream(line);
    };

    {
        auto is = next_line();
        std::string tag;
        is >> tag;
        if (tag != "text") parse_fail(path, lineno, "expected 'text'");
        if (!(is >> a.plate_text)) parse_fail(path, lineno, "missing plate text");
        if (!valid_plate_text(a.plate_text))
            parse_fail(path, lineno, "plate text must be 3 letters + 4 digits");
    }
    {
        auto is = next_line();
        std::string tag;
        is >> tag;
        if (tag != "position_plate") parse_fail(path, lineno, "expected 'position_plate'");
        a.plate_box = parse_box(is, path, lineno);
    }
    for (int i = 0; i < 7; ++i) {
        auto is = next_line();
        std::string tag;
        int idx = 0;
        is >> tag >> idx;
        if (tag != "char" || idx != i + 1)
            parse_fail(path, lineno, "expected 'char " + std::to_string(i + 1) + "'");
        a.char_boxes[i] = parse_box(is, path, lineno);
        if (!box_inside(a.char_boxes[i], a.plate_box))
            parse_fail(path, lineno, "character box outside plate box");
    }
    {
        // A trailing char line means the file disagrees with the 7-character
        // plate standard; flag it rather than silently dropping it.
        std::string extra;
        while (std::getline(in, extra)) {
            ++lineno;
            std::istringstream is(extra);
            std::string tag;
            if (is >> tag && tag == "char")
                parse_fail(path, lineno, "more than 7 character boxes");
        }
    }

    a.image_ref = path;
    auto dot = a.image_ref.rfind('.');
    if (dot != std::string::npos) a.image_ref = a.image_ref.substr(0, dot);
    a.image_ref += ".png";
    return a;
}

void save_annotation(const PlateAnnotation& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_annotation: cannot open " + path);
    out << "text " << a.plate_text << "\n";
    out << "position_plate " << a.plate_box.x << " " << a.plate_box.y << " "
        << a.plate_box.w << " " << a.plate_box.h << "\n";
    for (int i = 0; i < 7; ++i) {
        const Box& b = a.char_boxes[i];
        out << "char " << i + 1 << " " << b.x << " " << b.y << " " << b.w << " "
            << b.h << "\n";
    }
}

} // namespace lpcs
